from .decompose import (
    Decomposition,
    classical_split,
    decompose,
    is_unique,
    measure_functional,
    random_contraction,
    sample_below,
    uniqueness_witness,
)
from .verify import CheckResult, VerificationReport, verify_decomposition
