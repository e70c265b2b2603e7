"""Parallel sum and shorted operator.

Both come from Ando's Lebesgue theory of positive operators:

    A : B = A (A + B)^+ B
    S(A; P) = P A P - (P A P')(P' A P')^+ (P' A P),   P' = 1 - P

S(A; P) is the largest PSD operator below A with range inside range(P),
the generalized Schur complement of A onto range(P).

Neither formula is evaluated as written. With A = X X*, the short is
P X Pi X* P where Pi projects onto ker(P' X); A - S(A; P) = X (1 - Pi) X*
is then PSD by construction. A : B is the short of [[A, A], [A, A + B]] to
the first coordinate, which gives Xa Pi_11 Xa* with Pi the projection onto
ker [Xa, Xb]. When range(A) lies in range(B) the whitened form
B^1/2 Y (1 + Y* Y)^-1 Y* B^1/2, Y = B^+1/2 Xa, is used instead; it stays
accurate when B has eigenvalues many decades apart.
"""

import numpy as np
import scipy.linalg as sla

from ..config import DEFAULT_CONFIG, NumericConfig
from ..numkernel import PsdOperator, Projection, check_same_dim, range_contained


def _null_basis(M: np.ndarray, config: NumericConfig) -> np.ndarray:
    """Orthonormal columns spanning the numerical kernel of M"""
    _, sv, vh = sla.svd(M, full_matrices=True)
    tol = config.relative_rank_tol(M.shape[0]) * max(float(sv[0]) if sv.size else 0.0, 1.0)
    rank = int(np.count_nonzero(sv > tol))
    return vh[rank:].conj().T


def _whitened_parallel_sum(A: PsdOperator, B: PsdOperator, config: NumericConfig) -> PsdOperator:
    ub = B.range_basis()
    xa = A.factor()
    y = (ub / np.sqrt(B.eigvals[: B.rank])).conj().T @ xa
    mu, v = sla.eigh(y.conj().T @ y)
    weights = 1.0 / np.sqrt(1.0 + np.clip(mu, 0.0, None))
    return PsdOperator.from_factor(ub @ (ub.conj().T @ xa) @ (v * weights), config)


def parallel_sum(A: PsdOperator, B: PsdOperator, config: NumericConfig = DEFAULT_CONFIG) -> PsdOperator:
    check_same_dim(A, B)
    if A.is_zero or B.is_zero:
        return PsdOperator.zeros(A.dim, config)
    if range_contained(A, B, config):
        return _whitened_parallel_sum(A, B, config)
    if range_contained(B, A, config):
        return _whitened_parallel_sum(B, A, config)
    xa, xb = A.factor(), B.factor()
    kernel = _null_basis(np.hstack([xa, xb]), config)
    return PsdOperator.from_factor(xa @ kernel[: xa.shape[1]], config)


def shorted_operator(A: PsdOperator, P: Projection, config: NumericConfig = DEFAULT_CONFIG) -> PsdOperator:
    check_same_dim(A, P)
    rank = P.rank
    if rank == 0 or A.is_zero:
        return PsdOperator.zeros(A.dim, config)
    if rank == A.dim:
        return A
    p = P.array
    x = A.factor()
    kernel = _null_basis((np.eye(A.dim) - p) @ x, config)
    return PsdOperator.from_factor(p @ x @ kernel, config)
