from .matrices import (
    HermitianMatrix,
    PsdOperator,
    Projection,
    as_array,
    check_same_dim,
    eigendecompose,
)
from .psd import (
    max_generalized_eig,
    operator_norm,
    pseudo_inverse,
    psd_leq,
    range_contained,
    sqrt_psd,
    support_projection,
)
