class RefGroupError(Exception):
    """Base class for every error raised by the refgroup packages."""


class ParseError(RefGroupError, ValueError):
    """Thrown when a textual form (number, matrix, Pauli word) is malformed."""


class CyclotomicZeroDivisionError(RefGroupError, ZeroDivisionError):
    """Thrown when inverting the zero element of Q(zeta_8)."""


class UnknownGateError(RefGroupError, KeyError):
    """Thrown when a gate name is not one of the standard gates."""


class NonDyadicError(RefGroupError, ValueError):
    """Thrown when a matrix entry has a denominator that is not a power of two."""


class DimensionMismatchError(RefGroupError, ValueError):
    """Thrown when matrices of different dimensions are combined."""


class DimensionTooLargeError(RefGroupError, ValueError):
    """Thrown when a Pauli operator is too wide to expand into a matrix."""


class CapExceededError(RefGroupError):
    """Thrown when a breadth-first closure grows past its element cap."""

    def __init__(self, cap: int) -> None:
        super().__init__(f"group closure exceeded the cap of {cap} elements")
        self.cap = cap


class ClosureViolationError(RefGroupError):
    """Thrown when a product of table elements is missing from the table."""


class NotSubgroupError(RefGroupError):
    """Thrown when a claimed subgroup is not contained in, or closed in, its group."""


class NotNormalError(RefGroupError):
    """Thrown when a subgroup is not invariant under conjugation."""


class DegreeMismatchError(RefGroupError, ValueError):
    """Thrown when permutations of different degrees meet."""


class NotPauliError(RefGroupError, ValueError):
    """Thrown when a matrix is not of the form i^d X^x Z^z."""


class NotCliffordError(RefGroupError, ValueError):
    """Thrown when conjugation by a matrix does not preserve the Pauli group."""


class GroupTooLargeError(RefGroupError):
    """Thrown when an operation is asked for on a group beyond its size limit."""
