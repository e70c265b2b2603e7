"""Matrix *-algebras given by generators acting on C^d."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidAlgebra
from .algebra import BlockAlgebra


def _read_only(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GeneratorPresentation:
    ambient_dim: int
    generators: Tuple[np.ndarray, ...]

    @classmethod
    def from_generators(cls, generators: Sequence[np.ndarray], atol: float = 1e-12) -> "GeneratorPresentation":
        """Validate shapes and append missing adjoints"""
        mats = [np.asarray(g, dtype=complex) for g in generators]
        if not mats:
            raise InvalidAlgebra("at least one generator is required")
        d = mats[0].shape[0]
        for g in mats:
            if g.shape != (d, d):
                raise InvalidAlgebra(f"generator of shape {g.shape} in a presentation on C^{d}")
        closed = list(mats)
        for g in mats:
            adjoint = g.conj().T
            if not any(np.allclose(adjoint, h, atol=atol) for h in closed):
                closed.append(adjoint)
        return cls(d, tuple(_read_only(g) for g in closed))


def block_presentation(
    algebra: BlockAlgebra, multiplicities: Optional[Sequence[int]] = None
) -> GeneratorPresentation:
    """Matrix units of the block algebra, block i repeated multiplicities[i] times on the diagonal"""
    mult = list(multiplicities) if multiplicities is not None else [1] * algebra.num_blocks
    if len(mult) != algebra.num_blocks or any(m < 1 for m in mult):
        raise InvalidAlgebra(f"multiplicities {mult} do not fit blocks {algebra.block_dims}")
    d = sum(n * m for n, m in zip(algebra.block_dims, mult))
    generators = []
    offset = 0
    for n, m in zip(algebra.block_dims, mult):
        for r in range(n):
            for c in range(n):
                g = np.zeros((d, d), dtype=complex)
                for copy in range(m):
                    start = offset + copy * n
                    g[start + r, start + c] = 1.0
                generators.append(g)
        offset += n * m
    return GeneratorPresentation.from_generators(generators)


def conjugate(presentation: GeneratorPresentation, unitary: np.ndarray) -> GeneratorPresentation:
    """Generators U G U*"""
    u = np.asarray(unitary, dtype=complex)
    return GeneratorPresentation(
        presentation.ambient_dim,
        tuple(_read_only(u @ g @ u.conj().T) for g in presentation.generators),
    )
