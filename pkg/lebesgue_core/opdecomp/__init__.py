from .decomposition import (
    DecompositionMode,
    OperatorDecomposition,
    form_closable,
    form_decompose,
    iterated_parallel_sums,
    operator_is_unique,
    operator_lebesgue,
    operators_singular,
)
from .parallel import parallel_sum, shorted_operator
