"""C*-seminorms on block algebras.

Every C*-seminorm on a finite block sum is sigma_F(x) = max_{i in F} |x_i|
for a set F of block indices; gamma, the greatest one, takes F = all blocks.
Block indices are 0-based.
"""

from typing import Iterable

from ..errors import IndexOutOfRange
from .algebra import AlgebraElement, BlockAlgebra


def check_block_indices(algebra: BlockAlgebra, F: Iterable[int]) -> frozenset:
    F = frozenset(int(i) for i in F)
    bad = sorted(i for i in F if not 0 <= i < algebra.num_blocks)
    if bad:
        raise IndexOutOfRange(f"block indices {bad} outside 0..{algebra.num_blocks - 1}")
    return F


def seminorm_sigma_F(x: AlgebraElement, F: Iterable[int]) -> float:
    F = check_block_indices(x.algebra, F)
    norms = x.block_norms()
    return max((norms[i] for i in F), default=0.0)


def gamma_norm(x: AlgebraElement) -> float:
    return max(x.block_norms())
