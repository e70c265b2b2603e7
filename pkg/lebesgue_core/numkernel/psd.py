"""Functions on the PSD cone built from the certified eigendecomposition."""

import math

import numpy as np
import scipy.linalg as sla

from ..config import DEFAULT_CONFIG, NumericConfig
from ..log import logger
from .matrices import ArrayLike, PsdOperator, Projection, as_array, check_same_dim


def _spectral(eigvals: np.ndarray, eigvecs: np.ndarray) -> np.ndarray:
    return (eigvecs * eigvals) @ eigvecs.conj().T


def pseudo_inverse(A: PsdOperator, config: NumericConfig = DEFAULT_CONFIG) -> PsdOperator:
    """Moore-Penrose inverse; eigenvalues at or below the rank cutoff map to 0"""
    r = A.rank
    if r == 0:
        return PsdOperator.zeros(A.dim, config)
    inverse = _spectral(1.0 / A.eigvals[:r], A.eigvecs[:, :r])
    return PsdOperator.from_array(inverse, config, certify=False)


def support_projection(A: PsdOperator) -> Projection:
    return Projection.onto(A.range_basis(), A.dim)


def sqrt_psd(A: PsdOperator, config: NumericConfig = DEFAULT_CONFIG) -> PsdOperator:
    root = _spectral(np.sqrt(A.eigvals), A.eigvecs)
    return PsdOperator.from_array(root, config, certify=False)


def operator_norm(A: ArrayLike) -> float:
    if isinstance(A, PsdOperator):
        return float(A.eigvals[0])
    arr = as_array(A)
    return float(np.linalg.norm(arr, 2)) if arr.size else 0.0


def psd_leq(A: ArrayLike, B: ArrayLike, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """A <= B in the PSD order, with slack order_tol * max(|A|, |B|, 1)"""
    check_same_dim(A, B)
    a, b = as_array(A), as_array(B)
    diff = b - a
    smallest = float(sla.eigvalsh((diff + diff.conj().T) / 2)[0])
    scale = max(operator_norm(a), operator_norm(b), 1.0)
    return smallest >= -config.order_tol * scale


def range_contained(A: PsdOperator, B: PsdOperator, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """range(A) inside range(B): the part of A outside support(B) is negligible"""
    check_same_dim(A, B)
    if A.is_zero:
        return True
    outside = np.eye(B.dim) - support_projection(B).array
    escaped = operator_norm(outside @ A.array @ outside)
    logger.debug(f"range escape {escaped:.3e} against |A| = {operator_norm(A):.3e}")
    return escaped <= config.order_tol * max(operator_norm(A), 1.0)


def max_generalized_eig(A: PsdOperator, B: PsdOperator, config: NumericConfig = DEFAULT_CONFIG) -> float:
    """Least alpha >= 0 with A <= alpha B; ``math.inf`` when range(A) escapes range(B)"""
    check_same_dim(A, B)
    if A.is_zero:
        return 0.0
    if not range_contained(A, B, config):
        return math.inf
    r = B.rank
    whitening = _spectral(B.eigvals[:r] ** -0.5, B.eigvecs[:, :r])
    pencil = whitening @ A.array @ whitening
    return float(max(sla.eigvalsh((pencil + pencil.conj().T) / 2)[-1], 0.0))
