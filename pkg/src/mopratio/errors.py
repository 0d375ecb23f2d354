"""Exception hierarchy.

Caller mistakes (bad argument shapes, out-of-contract parameters) raise
ValueError/TypeError directly.  Everything that can go wrong as a *domain
outcome* of a well-formed request derives from MopratioError so the CLI can
map it to a single exit code.
"""


class MopratioError(Exception):
    """Base class for domain errors raised by this package."""


class UnsupportedCoefficientError(MopratioError):
    """A coefficient family does not supply the requested coefficient.

    Jacobi-Pineiro providers carry only the a-coefficients; b-values must
    come from a user table.
    """


class MissingEntryError(MopratioError):
    """A custom coefficient table has no entry for the requested index."""


class TableFormatError(MopratioError):
    """A custom coefficient table file failed to parse or validate."""


class NoLimitError(MopratioError):
    """The requested recurrence-coefficient limits do not exist."""


class NonConvergenceError(NoLimitError):
    """Extrapolation of a coefficient sequence failed to converge.

    A divergent sequence means the limits do not exist for the requested
    scaling, hence this is a kind of NoLimitError.
    """


class OffAxisError(MopratioError):
    """Evaluation was requested at a point where only the real axis rules
    it out: ratio propagation below delta_min, or a real point inside the
    hull of the real branch points."""


class DegeneratePointError(MopratioError):
    """A recurrence denominator vanished; the point sits at or numerically
    on top of a polynomial zero."""


class ResourceLimitError(MopratioError):
    """A dynamic-programming evaluation would exceed the configured size cap."""


class ZeroIsolationError(MopratioError):
    """Sign-change scanning found fewer simple real zeros than the degree.

    Signals zeros that are complex or multiple, where bisection extraction
    does not apply.
    """


class RootSolverError(MopratioError):
    """The simultaneous polynomial root iteration failed to converge."""


class BranchTrackingError(MopratioError):
    """Branch continuation collided with a branch point.

    Attributes
    ----------
    nearest_branch_point : complex or None
        The x-plane branch point closest to the failing path location.
    """

    def __init__(self, message, nearest_branch_point=None):
        super().__init__(message)
        self.nearest_branch_point = nearest_branch_point


class DegenerateLimitError(MopratioError):
    """The limit data does not admit a branch equation (coincident groups
    after merging, or a family configuration where the decomposition into
    simple poles is unavailable)."""
