"""Positive functionals on block algebras, stored as densities.

On M_{n1} + ... + M_{nk} every positive functional is f(a) = sum_i tr(D_i a_i)
for a unique blockwise PSD density D. Order, absolute continuity and
singularity of functionals become statements about the densities.
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import AlgebraMismatch, NotAbsolutelyContinuous
from ..numkernel import (
    PsdOperator,
    max_generalized_eig,
    psd_leq,
    range_contained,
    support_projection,
)
from ..opdecomp import operators_singular
from ..staralg import AlgebraElement, BlockAlgebra, check_block_indices


@dataclass(frozen=True, eq=False)
class PositiveFunctional:
    algebra: BlockAlgebra
    operators: Tuple[PsdOperator, ...]

    @classmethod
    def from_blocks(
        cls,
        algebra: BlockAlgebra,
        blocks: Sequence[np.ndarray],
        config: NumericConfig = DEFAULT_CONFIG,
        certify: bool = True,
    ) -> "PositiveFunctional":
        element = AlgebraElement(algebra, tuple(blocks))
        return cls(algebra, tuple(PsdOperator.from_array(b, config, certify) for b in element.blocks))

    @classmethod
    def from_operators(cls, algebra: BlockAlgebra, operators: Sequence[PsdOperator]) -> "PositiveFunctional":
        """Wrap densities whose spectra are already certified"""
        dims = tuple(op.dim for op in operators)
        if dims != algebra.block_dims:
            raise AlgebraMismatch(f"densities of sizes {dims} on blocks {algebra.block_dims}")
        return cls(algebra, tuple(operators))

    @classmethod
    def from_density(
        cls, density: AlgebraElement, config: NumericConfig = DEFAULT_CONFIG, certify: bool = True
    ) -> "PositiveFunctional":
        return cls.from_blocks(density.algebra, density.blocks, config, certify)

    @property
    def density(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, tuple(op.array for op in self.operators))

    @property
    def is_zero(self) -> bool:
        return all(op.is_zero for op in self.operators)

    @property
    def norm(self) -> float:
        """|f| = f(1) = trace of the density"""
        return float(sum(np.real(np.trace(op.array)) for op in self.operators))

    def __add__(self, other: "PositiveFunctional") -> "PositiveFunctional":
        _require_same(self, other)
        return PositiveFunctional.from_blocks(
            self.algebra, [a.array + b.array for a, b in zip(self.operators, other.operators)], certify=False
        )

    def scaled(self, factor: float) -> "PositiveFunctional":
        if factor < 0:
            raise ValueError("positive functionals only scale by non-negative factors")
        return PositiveFunctional.from_blocks(
            self.algebra, [factor * op.array for op in self.operators], certify=False
        )


def zero_functional(algebra: BlockAlgebra, config: NumericConfig = DEFAULT_CONFIG) -> PositiveFunctional:
    return PositiveFunctional.from_blocks(algebra, [np.zeros((n, n)) for n in algebra.block_dims], config)


def _require_same(f, g) -> None:
    if f.algebra != g.algebra:
        raise AlgebraMismatch(f"{f.algebra.block_dims} vs {g.algebra.block_dims}")


def evaluate(f: PositiveFunctional, a: AlgebraElement) -> complex:
    _require_same(f, a)
    return complex(sum(np.trace(op.array @ block) for op, block in zip(f.operators, a.blocks)))


def order_leq(f: PositiveFunctional, g: PositiveFunctional, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """f <= g, i.e. g - f is positive; positive elements of a block algebra are blockwise PSD"""
    _require_same(f, g)
    return all(psd_leq(a, b, config) for a, b in zip(f.operators, g.operators))


def support(f: PositiveFunctional) -> AlgebraElement:
    """Support projection s(f); f(x) = f(s x s)"""
    return AlgebraElement(f.algebra, tuple(support_projection(op).array for op in f.operators))


def left_kernel_basis(f: PositiveFunctional) -> List[AlgebraElement]:
    """Basis of L_f = {a : f(a* a) = 0} = {a : a s(f) = 0}.

    Block i contributes e_r v* for every row r and every kernel vector v of D_i.
    """
    result = []
    for i, (n, op) in enumerate(zip(f.algebra.block_dims, f.operators)):
        for v in op.kernel_basis().T:
            for r in range(n):
                blocks = [np.zeros((m, m), dtype=complex) for m in f.algebra.block_dims]
                blocks[i][r, :] = v.conj()
                result.append(AlgebraElement(f.algebra, tuple(blocks)))
    return result


def abs_continuous(f: PositiveFunctional, g: PositiveFunctional, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """f << g. In finite dimension this is s(f) <= s(g)"""
    _require_same(f, g)
    return all(range_contained(a, b, config) for a, b in zip(f.operators, g.operators))


def domination_constant(f: PositiveFunctional, g: PositiveFunctional, config: NumericConfig = DEFAULT_CONFIG) -> float:
    """Least alpha with f <= alpha g (inf when none exists)"""
    _require_same(f, g)
    return max(max_generalized_eig(a, b, config) for a, b in zip(f.operators, g.operators))


def ac_witness(
    f: PositiveFunctional, g: PositiveFunctional, terms: int = 3, config: NumericConfig = DEFAULT_CONFIG
) -> Tuple[List[PositiveFunctional], List[float]]:
    """Increasing f_n <= alpha_n g with sup f_n = f.

    In finite dimension the constant sequence f_n = f works with alpha_n the
    domination constant.
    """
    if not abs_continuous(f, g, config):
        raise NotAbsolutelyContinuous("support of f is not contained in the support of g")
    alpha = domination_constant(f, g, config)
    if not math.isfinite(alpha):
        raise NotAbsolutelyContinuous("no finite domination constant")
    alpha = alpha if alpha > 0 else 1.0
    if not order_leq(f, g.scaled(alpha * (1 + 1e-9)), config):
        raise NotAbsolutelyContinuous(f"f <= {alpha:.6g} g failed to certify")
    return [f] * terms, [alpha] * terms


def singular(f: PositiveFunctional, g: PositiveFunctional, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """f and g are singular: no non-zero positive functional lies below both"""
    _require_same(f, g)
    return all(operators_singular(a, b, config) for a, b in zip(f.operators, g.operators))


def representable(f: PositiveFunctional, seminorm_family: Iterable[Iterable[int]]) -> bool:
    """Whether |f| <= K sigma_F for some F in the family.

    This holds exactly when the density vanishes on every block outside F.
    """
    if f.is_zero:
        return True
    return any(math.isfinite(representability_constant(f, F)) for F in seminorm_family)


def representability_constant(f: PositiveFunctional, F: Iterable[int]) -> float:
    F = check_block_indices(f.algebra, F)
    if any(not op.is_zero for i, op in enumerate(f.operators) if i not in F):
        return math.inf
    return float(sum(np.real(np.trace(f.operators[i].array)) for i in F))
