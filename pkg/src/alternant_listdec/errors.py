"""Exception types raised across the package."""


class ListDecError(Exception):
    """Base class for all package errors."""


# field arithmetic
class ReducibleModulus(ListDecError, ValueError):
    pass


class DegreeMismatch(ListDecError, ValueError):
    pass


class ContextMismatch(ListDecError, TypeError):
    pass


class ZeroInverse(ListDecError, ZeroDivisionError):
    pass


# polynomials
class ZeroPolynomial(ListDecError, ValueError):
    pass


class BothConstantInZ(ListDecError, ValueError):
    """Resultant requested w.r.t. a variable that occurs in neither input."""


class NotDivisible(ListDecError, ArithmeticError):
    pass


# codes
class DuplicateLocator(ListDecError, ValueError):
    pass


class ZeroMultiplier(ListDecError, ValueError):
    pass


class BadDimension(ListDecError, ValueError):
    pass


class DegreeTooHigh(ListDecError, ValueError):
    pass


class EmptyCode(ListDecError, ValueError):
    pass


class TooManyErrors(ListDecError, ValueError):
    pass


# decoder / bounds
class BadMultiplicities(ListDecError, ValueError):
    pass


class DomainError(ListDecError, ValueError):
    pass


class InvariantViolation(ListDecError, AssertionError):
    """A per-trial debug assertion failed (raised only in debug mode)."""
