"""Permutation-entropy and statistical-complexity surveillance for rate series.

The pipeline: ingest a daily series, symbolize sliding windows into
ordinal-pattern distributions, quantify each window by normalized
permutation entropy and Jensen-Shannon statistical complexity, and
trace the windows through the complexity-entropy causality plane.
Series that behave like random walks sit near the (1, 0) corner;
administered or manipulated quote series drift away from it.
"""

from .analysis import (
    CecpTrajectory,
    DriftReport,
    WindowResult,
    WindowSpec,
    analyze,
    drift_report,
    min_window_length,
    sliding_windows,
    window_bounds,
    window_count,
)
from .errors import (
    ConfigurationError,
    InputError,
    InsufficientDataError,
    InvalidDistributionError,
    PermplaneError,
)
from .infotheory import (
    CecpPoint,
    Quantifiers,
    cecp_bounds,
    cecp_point,
    disequilibrium,
    jensen_shannon,
    max_entropy,
    normalized_entropy,
    quantifiers_of,
    shannon_entropy,
    statistical_complexity,
    within_bounds,
)
from .ingest import (
    CleaningPolicy,
    RawRecord,
    TimeSeries,
    clean,
    load_series,
    parse_csv,
    serialize_csv,
    write_csv,
)
from .ordinal import (
    OrdinalConfig,
    PatternDistribution,
    extract_patterns,
    ordinal_pattern,
    pattern_distribution,
    permutation_to_rank,
    rank_to_permutation,
)
from .synth import GeneratorSpec, business_days, generate, shuffle_surrogate, splice

__version__ = "0.1.0"

__all__ = [
    "CecpPoint",
    "CecpTrajectory",
    "CleaningPolicy",
    "ConfigurationError",
    "DriftReport",
    "GeneratorSpec",
    "InputError",
    "InsufficientDataError",
    "InvalidDistributionError",
    "OrdinalConfig",
    "PatternDistribution",
    "PermplaneError",
    "Quantifiers",
    "RawRecord",
    "TimeSeries",
    "WindowResult",
    "WindowSpec",
    "analyze",
    "business_days",
    "cecp_bounds",
    "cecp_point",
    "clean",
    "disequilibrium",
    "drift_report",
    "extract_patterns",
    "generate",
    "jensen_shannon",
    "load_series",
    "max_entropy",
    "min_window_length",
    "normalized_entropy",
    "ordinal_pattern",
    "parse_csv",
    "pattern_distribution",
    "permutation_to_rank",
    "quantifiers_of",
    "rank_to_permutation",
    "serialize_csv",
    "shannon_entropy",
    "shuffle_surrogate",
    "sliding_windows",
    "splice",
    "statistical_complexity",
    "window_bounds",
    "window_count",
    "within_bounds",
    "write_csv",
]
