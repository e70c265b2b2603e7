"""Lebesgue decomposition f = f_r + f_s of a positive functional with respect to g.

f_r << g is the greatest functional below f that is absolutely continuous
with respect to g, and f_s is singular to both g and f_r. On a block algebra
the decomposition is the operator decomposition of the densities, block by
block. It is unique exactly when g uniformly dominates f_r.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import AlgebraMismatch
from ..functionals import PositiveFunctional, singular
from ..log import logger
from ..numkernel import sqrt_psd
from ..opdecomp import DecompositionMode, operator_lebesgue
from ..staralg import BlockAlgebra

WITNESS_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Decomposition:
    regular: PositiveFunctional
    singular: PositiveFunctional
    alpha_min: float
    unique: bool
    iterations_used: int = 0


def decompose(
    f: PositiveFunctional,
    g: PositiveFunctional,
    mode: DecompositionMode = DecompositionMode.SCHUR,
    config: NumericConfig = DEFAULT_CONFIG,
) -> Decomposition:
    if f.algebra != g.algebra:
        raise AlgebraMismatch(f"{f.algebra.block_dims} vs {g.algebra.block_dims}")
    parts = [operator_lebesgue(a, b, mode, config) for a, b in zip(f.operators, g.operators)]
    regular = PositiveFunctional(f.algebra, tuple(p.regular for p in parts))
    singular_part = PositiveFunctional(f.algebra, tuple(p.singular for p in parts))
    alpha = max(p.alpha_min for p in parts)
    logger.debug(f"decomposed over blocks {f.algebra.block_dims} ({DecompositionMode(mode).value}): alpha {alpha:.6g}")
    return Decomposition(regular, singular_part, alpha, math.isfinite(alpha), max(p.iterations_used for p in parts))


def random_contraction(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random C with 0 <= C <= 1"""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, _ = np.linalg.qr(z)
    return (q * rng.uniform(0.0, 1.0, n)) @ q.conj().T


def sample_below(
    f: PositiveFunctional, rng: np.random.Generator, config: NumericConfig = DEFAULT_CONFIG
) -> PositiveFunctional:
    """Random t with 0 <= t <= f: D_t = D^(1/2) C D^(1/2) for a random contraction C"""
    blocks = []
    for op in f.operators:
        root = sqrt_psd(op, config).array
        blocks.append(root @ random_contraction(op.dim, rng) @ root)
    return PositiveFunctional.from_blocks(f.algebra, blocks, config, certify=False)


def uniqueness_witness(
    f: PositiveFunctional,
    g: PositiveFunctional,
    rng: np.random.Generator,
    samples: Optional[int] = None,
    config: NumericConfig = DEFAULT_CONFIG,
) -> float:
    """Largest norm of a sampled p with p <= f_r and p singular to g.

    f_r << g, so such p must vanish whenever the decomposition is unique;
    a non-negligible value would exhibit f_r + p having a second splitting.
    """
    regular = decompose(f, g, DecompositionMode.SCHUR, config).regular
    worst = 0.0
    for _ in range(samples or config.maximality_samples):
        p = sample_below(regular, rng, config)
        if singular(p, g, config):
            worst = max(worst, p.norm)
    return worst


def is_unique(
    f: PositiveFunctional,
    g: PositiveFunctional,
    config: NumericConfig = DEFAULT_CONFIG,
    seed: int = 0,
) -> Tuple[bool, float]:
    if f.algebra != g.algebra:
        raise AlgebraMismatch(f"{f.algebra.block_dims} vs {g.algebra.block_dims}")
    alpha = decompose(f, g, DecompositionMode.SCHUR, config).alpha_min
    witness = uniqueness_witness(f, g, np.random.default_rng(seed), config=config)
    if witness > WITNESS_TOL:
        logger.warning(f"found p <= f_r singular to g with |p| = {witness:.3e}")
    return math.isfinite(alpha) and witness <= WITNESS_TOL, alpha


def classical_split(mu, nu) -> Tuple[np.ndarray, np.ndarray]:
    """mu = mu_r + mu_s for finite measures on {0, ..., n-1}.

    mu_r keeps the mass of mu on the support of nu, mu_s the rest.
    """
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    on_support = nu > 0
    return np.where(on_support, mu, 0.0), np.where(on_support, 0.0, mu)


def measure_functional(weights, config: NumericConfig = DEFAULT_CONFIG) -> PositiveFunctional:
    """Integration against a finite measure on n points, as a functional on C^n"""
    weights = np.asarray(weights, dtype=float)
    return PositiveFunctional.from_blocks(
        BlockAlgebra((1,) * len(weights)), [np.array([[w]]) for w in weights], config
    )
