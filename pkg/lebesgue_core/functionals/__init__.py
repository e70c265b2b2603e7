from .corner import Corner, compress, corner, corner_extension, embed, restrict
from .functional import (
    PositiveFunctional,
    abs_continuous,
    ac_witness,
    domination_constant,
    evaluate,
    left_kernel_basis,
    order_leq,
    representability_constant,
    representable,
    singular,
    support,
    zero_functional,
)
from .gns import GnsData, gns, gns_defects
