"""Exception hierarchy shared by all henonlab modules."""


class HenonLabError(Exception):
    """Base class for all errors raised by this package."""


# --- one-dimensional renormalization ---------------------------------------

class NotRenormalizable(HenonLabError):
    """The map does not satisfy the period-doubling renormalization precondition."""


class ProjectionLoss(HenonLabError):
    """Re-projection onto the spectral basis lost more accuracy than allowed."""


class NoConvergence(HenonLabError):
    """Newton iteration did not reach the requested tolerance."""


class SingularJacobian(HenonLabError):
    """Newton step failed because the Jacobian is (numerically) singular."""


class DepthOverflow(HenonLabError):
    """Renormalization cycle intervals shrank below the floating-point floor."""


class IndexMismatch(HenonLabError):
    """Child interval is not nested inside the claimed parent interval."""


class CriticalPointInside(HenonLabError):
    """An iterate has a critical point inside the interval, so distortion is undefined."""


# --- two-dimensional renormalization ----------------------------------------

class EpsTooLarge(HenonLabError):
    """sup|eps| exceeds the configured bound for the Henon-like class."""


class InversionFailure(HenonLabError):
    """Root-finding bracket for the horizontal inverse was lost."""


class WordTooLong(HenonLabError):
    """Requested coordinate-change word exceeds the tower depth."""


class DegenerateDerivative(HenonLabError):
    """Diagonal factor of a coordinate-change derivative vanished."""


# --- geometry ----------------------------------------------------------------

class EmptyCloud(HenonLabError):
    """A point cloud required to be nonempty was empty."""


class DegenerateRectangle(HenonLabError):
    """Bounding rectangle has zero extent where a positive one is required."""


class ChildOutsideFrame(HenonLabError):
    """A child cloud projects outside the parent's unit frame."""


# --- combinatorics -----------------------------------------------------------

class DivergentSum(HenonLabError):
    """The control-function summability test failed."""


class InfeasibleRegime(HenonLabError):
    """No level in the requested range satisfies the regime orderings."""
