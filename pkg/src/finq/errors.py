"""Exception types shared across the package."""


class FinqError(Exception):
    """Base class for all errors raised by finq."""


class CompositeModulus(FinqError, ValueError):
    pass


class ReducibleFactor(FinqError, ValueError):
    pass


class ZeroElement(FinqError, ValueError):
    pass


class FactorBoundExceeded(FinqError):
    """Trial division up to the configured bound left a composite cofactor."""

    def __init__(self, n, bound, cofactor):
        super().__init__(
            f"cannot fully factor {n}: composite cofactor {cofactor} survives trial division to {bound}"
        )
        self.n = n
        self.bound = bound
        self.cofactor = cofactor


class NotMonic(FinqError, ValueError):
    pass


class Reducible(FinqError, ValueError):
    def __init__(self, poly, factors):
        super().__init__(f"{poly} is reducible over Q: {' * '.join(f'({f})' for f in factors)}")
        self.poly = poly
        self.factors = factors


class DenominatorAtPlace(FinqError, ValueError):
    def __init__(self, message, entry=None):
        super().__init__(message if entry is None else f"entry {entry}: {message}")
        self.entry = entry


class NotUnimodular(FinqError, ValueError):
    pass


class LemmaInapplicable(FinqError, ValueError):
    """The root-of-unity order argument needs an element of even order 2m with m > 1."""


class OddOrder(LemmaInapplicable):
    pass


class UnknownGenerator(FinqError, KeyError):
    pass


class NotSIntegral(FinqError, ValueError):
    pass


class UnsupportedTauField(FinqError, ValueError):
    pass


class MissingFundamentalUnit(FinqError, ValueError):
    pass


class CertificateFormatError(FinqError, ValueError):
    pass
