from .lab import (
    DEFAULT_LEVELS,
    MAX_LEVEL,
    MIN_LEVEL,
    BoundReport,
    BoundRow,
    ChartRow,
    TruncationLab,
    alpha_min,
    bound_report,
    build,
    check_level,
    degeneration_chart,
    displayed_bound,
    kadison_bound,
    lab_config,
    lambda_bound,
    lambda_max,
    report_levels,
    singularity_defect,
    witness_operator,
)
