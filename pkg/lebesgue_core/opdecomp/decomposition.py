"""Lebesgue decomposition of a positive operator with respect to another.

A = A_r + A_s where A_r is the largest PSD operator below A whose range lies
in the closure of range(B) and A_s is singular to B (A_s : B = 0). Schur mode
shorts A to support(B); iterative mode follows Ando's definition
A_r = lim A:(nB) along n = 1, 2, 4, ...
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import NoConvergence
from ..log import logger
from ..numkernel import (
    PsdOperator,
    check_same_dim,
    max_generalized_eig,
    operator_norm,
    range_contained,
    support_projection,
)
from .parallel import parallel_sum, shorted_operator

RICHARDSON_ORDER = 6


class DecompositionMode(str, Enum):
    SCHUR = "schur"
    ITERATIVE = "iterative"


@dataclass(frozen=True, eq=False)
class OperatorDecomposition:
    regular: PsdOperator
    singular: PsdOperator
    alpha_min: float
    iterations_used: int = 0

    @property
    def unique(self) -> bool:
        return math.isfinite(self.alpha_min)


def _scaled(B: PsdOperator, factor: float, config: NumericConfig) -> PsdOperator:
    return PsdOperator.from_array(factor * B.array, config, certify=False)


def iterated_parallel_sums(
    A: PsdOperator, B: PsdOperator, config: NumericConfig = DEFAULT_CONFIG
) -> Tuple[PsdOperator, int]:
    """Limit of A:(2^k B) as k grows.

    The iterates are analytic in 1/n, so a Richardson table over the doubling
    sequence removes the O(1/n) tail; iteration stops once two successive
    extrapolated values differ by less than ``iter_tol`` in Frobenius norm.
    """
    previous_row: List[np.ndarray] = []
    previous_estimate = None
    for k in range(config.iter_max_exponent + 1):
        row = [parallel_sum(A, _scaled(B, 2.0 ** k, config), config).array]
        for j in range(min(len(previous_row), RICHARDSON_ORDER)):
            factor = 2.0 ** (j + 1)
            row.append(row[j] + (row[j] - previous_row[j]) / (factor - 1.0))
        estimate = row[-1]
        if previous_estimate is not None:
            change = float(np.linalg.norm(estimate - previous_estimate))
            logger.debug(f"doubling step {k}: change {change:.3e}")
            if change < config.iter_tol and k >= 2:
                return PsdOperator.from_array(estimate, config, certify=False), k + 1
        previous_row, previous_estimate = row, estimate
    raise NoConvergence(
        f"A:(nB) did not settle below {config.iter_tol:.1e} by n = 2^{config.iter_max_exponent}; rerun with --mode schur"
    )


def operator_lebesgue(
    A: PsdOperator,
    B: PsdOperator,
    mode: DecompositionMode = DecompositionMode.SCHUR,
    config: NumericConfig = DEFAULT_CONFIG,
) -> OperatorDecomposition:
    check_same_dim(A, B)
    mode = DecompositionMode(mode)
    iterations = 0
    if B.is_zero or A.is_zero:
        regular = PsdOperator.zeros(A.dim, config)
    elif B.rank == B.dim:
        regular = A
    elif mode is DecompositionMode.SCHUR:
        regular = shorted_operator(A, support_projection(B), config)
    else:
        regular, iterations = iterated_parallel_sums(A, B, config)
    singular = PsdOperator.from_array(A.array - regular.array, config, certify=False)
    alpha = max_generalized_eig(regular, B, config)
    return OperatorDecomposition(regular, singular, alpha, iterations)


def operators_singular(A: PsdOperator, B: PsdOperator, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """A and B are singular when their parallel sum vanishes"""
    joint = parallel_sum(A, B, config)
    scale = max(operator_norm(A), operator_norm(B), 1.0)
    return operator_norm(joint) <= config.singular_tol * scale


def operator_is_unique(
    A: PsdOperator, B: PsdOperator, config: NumericConfig = DEFAULT_CONFIG
) -> Tuple[bool, float]:
    """Unique iff B uniformly dominates the regular part: A_r <= alpha B for finite alpha"""
    result = operator_lebesgue(A, B, DecompositionMode.SCHUR, config)
    return result.unique, result.alpha_min


def form_closable(F: PsdOperator, G: PsdOperator, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """Closability of the form with Gram matrix F with respect to G.

    In finite dimension this is kernel(G) inside kernel(F), i.e. range(F)
    inside range(G).
    """
    return range_contained(F, G, config)


def form_decompose(
    F: PsdOperator,
    G: PsdOperator,
    mode: DecompositionMode = DecompositionMode.SCHUR,
    config: NumericConfig = DEFAULT_CONFIG,
) -> OperatorDecomposition:
    """f = f_r + f_s for forms given by Gram matrices on a common basis"""
    return operator_lebesgue(F, G, mode, config)
