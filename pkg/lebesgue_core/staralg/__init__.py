from .algebra import (
    AlgebraElement,
    BlockAlgebra,
    basis,
    element_add,
    element_adjoint,
    element_mul,
    from_vector,
    identity,
    left_multiplication,
    random_element,
    scale,
    zero,
)
from .groups import cyclic_group_table, group_algebra, symmetric_group_table, validate_cayley_table
from .presentation import GeneratorPresentation, block_presentation, conjugate
from .seminorms import check_block_indices, gamma_norm, seminorm_sigma_F
from .wedderburn import (
    WedderburnResult,
    block_algebra_of,
    block_residual,
    commutant_basis,
    intertwiner,
    irreducible_dimensions,
    max_irreducible_dimension,
    wedderburn_decompose,
)
