"""Corners eAe of a block algebra and the extension of functionals from them.

eAe is a hereditary subalgebra. With e_i = V_i V_i* (V_i an isometry onto
range(e_i)) it is isomorphic to the block algebra of the non-zero ranks
r_i, through y -> V y V*. A positive functional h on eAe has the unique
norm preserving positive extension x -> h(V* x V).
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import AlgebraMismatch, NotAProjection
from ..numkernel import Projection, eigendecompose
from ..staralg import AlgebraElement, BlockAlgebra
from .functional import PositiveFunctional


@dataclass(frozen=True, eq=False)
class Corner:
    algebra: BlockAlgebra
    projection: AlgebraElement
    corner_algebra: BlockAlgebra
    block_map: Tuple[int, ...]
    isometries: Tuple[np.ndarray, ...]


def corner(e: AlgebraElement, config: NumericConfig = DEFAULT_CONFIG) -> Corner:
    """Corner eAe of a projection element e"""
    block_map, isometries = [], []
    for i, block in enumerate(e.blocks):
        P = Projection.from_array(block, config)
        if P.rank == 0:
            continue
        _, vecs = eigendecompose(P.matrix, config)
        block_map.append(i)
        isometries.append(vecs[:, : P.rank])
    if not block_map:
        raise NotAProjection("the zero projection has no corner algebra")
    corner_algebra = BlockAlgebra(tuple(v.shape[1] for v in isometries))
    return Corner(e.algebra, e, corner_algebra, tuple(block_map), tuple(isometries))


def compress(c: Corner, x: AlgebraElement) -> AlgebraElement:
    """e x e written in the corner algebra's coordinates"""
    if x.algebra != c.algebra:
        raise AlgebraMismatch(f"{x.algebra.block_dims} vs {c.algebra.block_dims}")
    return AlgebraElement(
        c.corner_algebra,
        tuple(v.conj().T @ x.blocks[i] @ v for i, v in zip(c.block_map, c.isometries)),
    )


def embed(c: Corner, y: AlgebraElement) -> AlgebraElement:
    """The element of eAe inside A represented by y"""
    if y.algebra != c.corner_algebra:
        raise AlgebraMismatch(f"{y.algebra.block_dims} vs {c.corner_algebra.block_dims}")
    blocks = [np.zeros((n, n), dtype=complex) for n in c.algebra.block_dims]
    for i, v, b in zip(c.block_map, c.isometries, y.blocks):
        blocks[i] = v @ b @ v.conj().T
    return AlgebraElement(c.algebra, tuple(blocks))


def restrict(f: PositiveFunctional, c: Corner, config: NumericConfig = DEFAULT_CONFIG) -> PositiveFunctional:
    """f restricted to eAe"""
    if f.algebra != c.algebra:
        raise AlgebraMismatch(f"{f.algebra.block_dims} vs {c.algebra.block_dims}")
    return PositiveFunctional.from_blocks(
        c.corner_algebra,
        [v.conj().T @ f.operators[i].array @ v for i, v in zip(c.block_map, c.isometries)],
        config,
        certify=False,
    )


def corner_extension(
    e: Union[Corner, AlgebraElement], f_on_corner: PositiveFunctional, config: NumericConfig = DEFAULT_CONFIG
) -> PositiveFunctional:
    """Unique norm preserving positive extension x -> f_on_corner(e x e)"""
    c = e if isinstance(e, Corner) else corner(e, config)
    if f_on_corner.algebra != c.corner_algebra:
        raise AlgebraMismatch(
            f"functional lives on {f_on_corner.algebra.block_dims}, corner is {c.corner_algebra.block_dims}"
        )
    blocks = [np.zeros((n, n), dtype=complex) for n in c.algebra.block_dims]
    for i, v, op in zip(c.block_map, c.isometries, f_on_corner.operators):
        blocks[i] = v @ op.array @ v.conj().T
    return PositiveFunctional.from_blocks(c.algebra, blocks, config, certify=False)
