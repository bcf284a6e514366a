"""
finq: order witnesses in finite quotients of SL2 over S-integers.

Given an element of SL2(O_{K,S}) and an integer m > 2, the package finds a
prime place where the element reduces to an element of PSL2 of the residue
field of exact order m, and emits a certificate that can be checked
independently. Supporting tools cover cyclotomic and real cyclotomic
polynomials, finite and number field arithmetic, and bounded S-unit search.
"""
from .certio import dumps_certificate, load_preset, loads_certificate, verify_text
from .errors import FinqError
from .galoisfield import FiniteField, ff_element_of_order, ff_make, ff_mult_order, ff_poly_factor
from .numberfield import NumberField, nf_charpoly, nf_make, nf_places_above, nf_reduce, rationals
from .polyarith import (
    IntPolynomial,
    RatPolynomial,
    bezout_reduction,
    cyclotomic,
    modulus_bound,
    real_cyclotomic,
    resultant,
)
from .psl2 import GroupPreset, Mat2, companion, parse_word, psl2_order, word_eval
from .sunit import exceptional_trace_candidates, sunit_solutions_quadratic, sunit_solutions_rational
from .witness import (
    OrderCertificate,
    WitnessFailure,
    certify_order_witness,
    empirical_witness_scan,
    finitistic_profile,
    from_matrix,
    from_trace,
    from_word,
    verify_certificate,
)

__version__ = "0.1.0"
