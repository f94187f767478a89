"""Matrix permanents, operator-norm bound certificates, and their empirical checks."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    LogBound,
    bound_report,
    l1_tail_bound,
    log_bound_mean_gap,
    log_bound_norm,
    log_bound_real_composite,
    log_bound_real_sqrt,
    log_bound_rowmax_gap,
    log_moment_bound,
    mean_l1_upper,
    split_tail_bounds,
)
from .ensembles import EnsembleKind, generate
from .exact import perm_glynn_exact, perm_naive, perm_ryser, polar_log
from .linalg import (
    RowStats,
    SpectralInfo,
    is_phase_permutation,
    operator_norm,
    row_stats,
)
from .matrix import Field, Matrix, complex_matrix, identity, real_matrix
from .partition import (
    PartitionResult,
    default_lambda,
    mu_tilde_split,
    partition_rows,
    partition_tail_stats,
    quadratic_form_diag,
)
from .sampling import (
    ConcentrationReport,
    EstimateReport,
    estimate_perm,
    exact_glynn_mean,
    exact_l1_moment,
    glynn_value,
    sample_l1,
)

__all__ = [
    "__version__",
    "BoundReport",
    "ConcentrationReport",
    "EnsembleKind",
    "EstimateReport",
    "Field",
    "LogBound",
    "Matrix",
    "PartitionResult",
    "RowStats",
    "SpectralInfo",
    "bound_report",
    "complex_matrix",
    "default_lambda",
    "estimate_perm",
    "exact_glynn_mean",
    "exact_l1_moment",
    "generate",
    "glynn_value",
    "identity",
    "is_phase_permutation",
    "l1_tail_bound",
    "log_bound_mean_gap",
    "log_bound_norm",
    "log_bound_real_composite",
    "log_bound_real_sqrt",
    "log_bound_rowmax_gap",
    "log_moment_bound",
    "mean_l1_upper",
    "mu_tilde_split",
    "operator_norm",
    "partition_rows",
    "partition_tail_stats",
    "perm_glynn_exact",
    "perm_naive",
    "perm_ryser",
    "polar_log",
    "quadratic_form_diag",
    "real_matrix",
    "row_stats",
    "sample_l1",
    "split_tail_bounds",
]
