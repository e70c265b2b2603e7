"""Finite-dimensional C*-algebras presented as block sums M_{n1} + ... + M_{nk}."""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from ..errors import AlgebraMismatch, InvalidAlgebra


@dataclass(frozen=True)
class BlockAlgebra:
    block_dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims or any(n < 1 for n in dims):
            raise InvalidAlgebra(f"block dimensions must be positive and non-empty, got {self.block_dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def num_blocks(self) -> int:
        return len(self.block_dims)

    @property
    def dimension(self) -> int:
        """Linear dimension sum n_i^2"""
        return sum(n * n for n in self.block_dims)

    @property
    def hilbert_dim(self) -> int:
        return sum(self.block_dims)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: BlockAlgebra
    blocks: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != self.algebra.num_blocks:
            raise InvalidAlgebra(f"expected {self.algebra.num_blocks} blocks, got {len(self.blocks)}")
        frozen = []
        for n, block in zip(self.algebra.block_dims, self.blocks):
            block = np.array(block, dtype=complex, copy=True)
            if block.shape != (n, n):
                raise InvalidAlgebra(f"block of shape {block.shape} where ({n}, {n}) was expected")
            block.setflags(write=False)
            frozen.append(block)
        object.__setattr__(self, "blocks", tuple(frozen))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return element_add(self, other)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return element_add(self, scale(other, -1.0))

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return element_mul(self, other)

    def __mul__(self, factor: complex) -> "AlgebraElement":
        return scale(self, factor)

    __rmul__ = __mul__

    def adjoint(self) -> "AlgebraElement":
        return element_adjoint(self)

    def block_norms(self) -> List[float]:
        return [float(np.linalg.norm(b, 2)) for b in self.blocks]

    def to_vector(self) -> np.ndarray:
        """Coordinates in the matrix-unit basis returned by ``basis``"""
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def allclose(self, other: "AlgebraElement", atol: float = 1e-9) -> bool:
        _require_same(self, other)
        return all(np.allclose(a, b, atol=atol) for a, b in zip(self.blocks, other.blocks))


def _require_same(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"{x.algebra.block_dims} vs {y.algebra.block_dims}")


def element_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _require_same(x, y)
    return AlgebraElement(x.algebra, tuple(a @ b for a, b in zip(x.blocks, y.blocks)))


def element_add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _require_same(x, y)
    return AlgebraElement(x.algebra, tuple(a + b for a, b in zip(x.blocks, y.blocks)))


def element_adjoint(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.algebra, tuple(b.conj().T for b in x.blocks))


def scale(x: AlgebraElement, factor: complex) -> AlgebraElement:
    return AlgebraElement(x.algebra, tuple(factor * b for b in x.blocks))


def identity(algebra: BlockAlgebra) -> AlgebraElement:
    return AlgebraElement(algebra, tuple(np.eye(n) for n in algebra.block_dims))


def zero(algebra: BlockAlgebra) -> AlgebraElement:
    return AlgebraElement(algebra, tuple(np.zeros((n, n)) for n in algebra.block_dims))


def from_vector(algebra: BlockAlgebra, coords: Sequence[complex]) -> AlgebraElement:
    coords = np.asarray(coords, dtype=complex)
    if coords.shape != (algebra.dimension,):
        raise InvalidAlgebra(f"expected {algebra.dimension} coordinates, got {coords.shape}")
    blocks, start = [], 0
    for n in algebra.block_dims:
        blocks.append(coords[start:start + n * n].reshape(n, n))
        start += n * n
    return AlgebraElement(algebra, tuple(blocks))


def basis(algebra: BlockAlgebra) -> List[AlgebraElement]:
    """Matrix units E^(i)_{rc}, block by block, row-major inside each block"""
    return [from_vector(algebra, row) for row in np.eye(algebra.dimension)]


def random_element(algebra: BlockAlgebra, rng: np.random.Generator) -> AlgebraElement:
    return AlgebraElement(
        algebra,
        tuple(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for n in algebra.block_dims),
    )


def left_multiplication(x: AlgebraElement) -> np.ndarray:
    """Matrix of y -> x y in the coordinates of ``to_vector``"""
    mats = [np.kron(b, np.eye(b.shape[0])) for b in x.blocks]
    return sla.block_diag(*mats)
