"""Word-length, balance and generalized-resolution diagnostics for
orthogonal arrays with qualitative factors."""

from .array import (
    BalanceReport,
    FrequencyTable,
    OrthogonalArray,
    coincidence_distribution,
    max_t_balance,
    parse_oa,
    projection_counts,
    strength,
    v_uniformity,
    weak_strength,
)
from .backend import BACKEND
from .cancor import CancorResult, R2SumResult, canonical_correlations, r2_sum
from .coding import (
    ContrastSet,
    ModelMatrix,
    contrasts,
    full_model_matrix,
    interaction_matrix,
    main_effect_matrix,
)
from .errors import (
    CodingError,
    OAMetricsError,
    OracleDeclinedError,
    ParseError,
    ResolutionUndefinedError,
    StrengthZeroError,
    ValidationError,
)
from .gwlp import Gwlp, ProjectionFrequency, gwlp, j_characteristics, projection_a
from .oracle import OracleReport, oracle_a_k, oracle_cancor, oracle_r2, verify_array
from .resolution import (
    FactorResolution,
    GRBound,
    ResolutionSummary,
    a_r_lower_bound,
    gr,
    gr_factorwise,
    gr_ind,
    gr_tot,
    gr_upper_bound,
    resolution_of,
    summarize,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BalanceReport",
    "CancorResult",
    "CodingError",
    "ContrastSet",
    "FactorResolution",
    "FrequencyTable",
    "GRBound",
    "Gwlp",
    "ModelMatrix",
    "OAMetricsError",
    "OracleDeclinedError",
    "OracleReport",
    "OrthogonalArray",
    "ParseError",
    "ProjectionFrequency",
    "R2SumResult",
    "ResolutionSummary",
    "ResolutionUndefinedError",
    "StrengthZeroError",
    "ValidationError",
    "a_r_lower_bound",
    "canonical_correlations",
    "coincidence_distribution",
    "contrasts",
    "full_model_matrix",
    "gr",
    "gr_factorwise",
    "gr_ind",
    "gr_tot",
    "gr_upper_bound",
    "gwlp",
    "interaction_matrix",
    "j_characteristics",
    "main_effect_matrix",
    "max_t_balance",
    "oracle_a_k",
    "oracle_cancor",
    "oracle_r2",
    "parse_oa",
    "projection_a",
    "projection_counts",
    "r2_sum",
    "resolution_of",
    "strength",
    "summarize",
    "v_uniformity",
    "verify_array",
    "weak_strength",
]
