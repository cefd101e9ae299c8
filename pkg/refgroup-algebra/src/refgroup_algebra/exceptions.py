from refgroup_core.exceptions import RefGroupError


class UnsupportedTypeError(RefGroupError, ValueError):
    """Thrown for a Cartan type outside the supported classification."""


class NonTerminatingError(RefGroupError):
    """Thrown when a root closure grows past its cap."""

    def __init__(self, cap: int) -> None:
        super().__init__(f"root closure exceeded {cap} vectors; not crystallographic?")
        self.cap = cap


class NotCrystallographicError(RefGroupError):
    """Thrown when a Cartan integer is not an integer."""


class NonIntegralResultError(RefGroupError):
    """Thrown when an integer matrix result has a fractional entry."""


class InvalidSpecError(RefGroupError, ValueError):
    """Thrown for group parameters or names that cannot be built."""


class UnsupportedRootOfUnityError(RefGroupError, ValueError):
    """Thrown when an m-th root of unity does not live in Q(zeta_8)."""


class TooManyPointsError(RefGroupError):
    """Thrown when an exhaustive subset scan would be too large."""


class NotAGridError(RefGroupError, ValueError):
    """Thrown when a hyperplane handed to the sign check is not a grid."""


class NotIndependentError(RefGroupError, ValueError):
    """Thrown when points of an independent set commute."""


class NonIntegralOutError(RefGroupError):
    """Thrown when |Aut| is not a multiple of |Inn|."""
