"""Multiple orthogonal polynomials from nearest-neighbor recurrences.

Construct the polynomials from recurrence coefficients, evaluate them and
their neighbor ratios stably at complex points, build the limiting algebraic
function that governs ratio asymptotics along a ray, and verify the two
against each other numerically.
"""

from .algebraic import (
    BranchPoint,
    BranchResult,
    LimitEquation,
    all_roots,
    branch_points,
    build_equation,
    partial_fraction_numerator,
    principal_branch,
    ratio_limit,
)
from .errors import (
    BranchTrackingError,
    DegenerateLimitError,
    DegeneratePointError,
    MissingEntryError,
    MopratioError,
    NoLimitError,
    NonConvergenceError,
    OffAxisError,
    ResourceLimitError,
    RootSolverError,
    TableFormatError,
    UnsupportedCoefficientError,
    ZeroIsolationError,
)
from .evaluator import (
    EvalGrid,
    RatioState,
    ScaledValue,
    advance,
    eval_dp,
    eval_grid,
    init_state,
    neighbor_ratio,
    propagate,
    real_zeros,
    stieltjes_estimate,
    telescoped_logderiv,
)
from .families import (
    ConstantCustom,
    CoefficientProvider,
    JacobiPineiro,
    LimitData,
    MergedGroup,
    MultipleCharlier,
    MultipleHermite,
    MultipleLaguerreI,
    MultipleLaguerreII,
    TableCustom,
    limit_coefficients,
    load_custom,
    merge_coincident,
    richardson_limit,
)
from .lattice import (
    LatticePath,
    MultiIndex,
    RaySpec,
    blockwise_path,
    build_path,
    indices_up_to_weight,
    lower_set,
    ray_index,
)
from .verify import (
    ConvergenceReport,
    DensityReport,
    GapReport,
    InterlaceReport,
    density_compare,
    interlace_check,
    merge_consistency_check,
    ratio_convergence,
    ratio_gap,
    scaled_ratio_convergence,
)

__version__ = "0.1.0"
