"""Exception types raised across the package."""


class SymdualError(Exception):
    """Base class for all package errors."""


class ZeroInverse(SymdualError, ZeroDivisionError):
    pass


class DimensionMismatch(SymdualError, ValueError):
    pass


class Singular(SymdualError, ValueError):
    pass


class NotCirculant(SymdualError, ValueError):
    pass


class BudgetExceeded(SymdualError):
    pass


class IneligibleParams(SymdualError, ValueError):
    pass


class BetaZero(IneligibleParams):
    pass


class NoSelfDualCompletion(SymdualError):
    pass


class NoEligibleFound(SymdualError):
    pass


class UnknownBase(SymdualError, KeyError):
    pass


class ParseError(SymdualError, ValueError):
    pass
