"""Exception hierarchy.

Every failure mode that a caller can meaningfully react to gets its own
class; anything else is a plain bug and raises whatever Python raises.
"""


class CyclodiffError(Exception):
    """Base class for all library errors."""


class NotPrime(CyclodiffError):
    """Field characteristic is not prime."""


class BoundExceeded(CyclodiffError):
    """A configured resource bound (field size, ring order, ...) was hit."""


class DivisionByZero(CyclodiffError):
    """Inverse or division by the zero element."""


class ZeroArgument(CyclodiffError):
    """Discrete log of zero."""


class OrderMismatch(CyclodiffError):
    """Operands live in different ambient rings / orders."""


class NotAMultiple(CyclodiffError):
    """Lift target is not a multiple of the current root order."""


class NotCoprime(CyclodiffError):
    """Galois/reindex exponent shares a factor with the order."""


class OrderDoesNotDivide(CyclodiffError):
    """Character order m does not divide q-1."""


class TrivialPower(CyclodiffError):
    """Operation requires a nontrivial character power (m does not divide s)."""


class ZeroGamma(CyclodiffError):
    """Difference counts need a nonzero gamma."""


class ZeroMultiplier(CyclodiffError):
    """Multiplier must be nonzero in the field."""


class OddOrder(CyclodiffError):
    """Polynomial system order m must be even."""


class ArityMismatch(CyclodiffError):
    """Solution length does not match the system's variables."""


class ModeUnsupported(CyclodiffError):
    """Verification mode not applicable to this solution."""


class LimitExceeded(CyclodiffError):
    """Groebner limits hit; carries the run stats and the partial basis."""

    def __init__(self, message, stats=None, partial=None):
        super().__init__(message)
        self.stats = stats or {}
        self.partial = partial


class UncertifiedBasis(CyclodiffError):
    """Operation requires a certified Groebner basis."""


class NotZeroDimensional(CyclodiffError):
    """No univariate relation exists in the elimination ideal."""


class NotTabulated(CyclodiffError):
    """No stored fixture for this m."""


class ZeroPolynomial(CyclodiffError):
    """Squarefree part of the zero polynomial."""


class ParseError(CyclodiffError):
    """Malformed system/solution file."""
