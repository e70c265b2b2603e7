"""Hermitian, positive semidefinite and projection matrix values.

All three are frozen wrappers around read-only numpy arrays. Construction
goes through the ``from_array`` classmethods, which certify the defining
property under a ``NumericConfig``.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.linalg as sla

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import DimensionMismatch, NonHermitian, NotAProjection, NotPsd

ArrayLike = Union[np.ndarray, "HermitianMatrix", "PsdOperator", "Projection"]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


def as_array(value: ArrayLike) -> np.ndarray:
    """Plain complex ndarray behind any of the matrix wrappers"""
    if isinstance(value, HermitianMatrix):
        return value.entries
    if isinstance(value, (PsdOperator, Projection)):
        return value.matrix.entries
    return np.asarray(value, dtype=complex)


def check_same_dim(*values: ArrayLike) -> int:
    dims = {as_array(v).shape[0] for v in values}
    if len(dims) != 1:
        raise DimensionMismatch(f"operands have dimensions {sorted(dims)}")
    return dims.pop()


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_array(cls, arr, config: NumericConfig = DEFAULT_CONFIG) -> "HermitianMatrix":
        arr = np.asarray(arr, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise NonHermitian(f"expected a non-empty square matrix, got shape {arr.shape}")
        asym = float(np.max(np.abs(arr - arr.conj().T)))
        if asym > config.hermitian_tol:
            raise NonHermitian(f"matrix differs from its adjoint by {asym:.3e}")
        return cls(_frozen((arr + arr.conj().T) / 2))

    @classmethod
    def symmetrized(cls, arr) -> "HermitianMatrix":
        """Hermitian part of a computed result; no symmetry check"""
        arr = np.asarray(arr, dtype=complex)
        return cls(_frozen((arr + arr.conj().T) / 2))


def eigendecompose(H, config: NumericConfig = DEFAULT_CONFIG) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in non-increasing order and the matching unitary eigenvector matrix"""
    if not isinstance(H, HermitianMatrix):
        H = HermitianMatrix.from_array(H, config)
    eigvals, eigvecs = sla.eigh(H.entries)
    return eigvals[::-1].copy(), eigvecs[:, ::-1].copy()


@dataclass(frozen=True, eq=False)
class PsdOperator:
    """Positive semidefinite matrix together with its certified spectrum.

    ``eigvals`` are clipped at zero and sorted non-increasingly; ``rank``
    counts eigenvalues above ``cutoff`` = tau_rel * max(lambda_max, 1).
    """

    matrix: HermitianMatrix
    eigvals: np.ndarray
    eigvecs: np.ndarray
    rank: int
    cutoff: float

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def array(self) -> np.ndarray:
        return self.matrix.entries

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def range_basis(self) -> np.ndarray:
        return self.eigvecs[:, : self.rank]

    def kernel_basis(self) -> np.ndarray:
        return self.eigvecs[:, self.rank:]

    def factor(self) -> np.ndarray:
        """X with X X* = A, one column per eigenvalue above the cutoff"""
        return self.eigvecs[:, : self.rank] * np.sqrt(self.eigvals[: self.rank])

    @classmethod
    def from_array(cls, arr, config: NumericConfig = DEFAULT_CONFIG, certify: bool = True) -> "PsdOperator":
        """Build from a matrix.

        With ``certify`` the input must be Hermitian and may have no eigenvalue
        below the configured allowance; without it the Hermitian part is taken
        and negative roundoff is clipped (used for computed results).
        """
        if certify:
            H = HermitianMatrix.from_array(arr, config)
        else:
            H = HermitianMatrix.symmetrized(arr)
        eigvals, eigvecs = eigendecompose(H, config)
        if certify:
            allowance = config.psd_allowance(eigvals, H.dim)
            if eigvals[-1] < -allowance:
                raise NotPsd(f"smallest eigenvalue {eigvals[-1]:.3e} below -{allowance:.3e}")
        eigvals = np.clip(eigvals, 0.0, None)
        cutoff = config.rank_cutoff(eigvals, H.dim)
        rank = int(np.count_nonzero(eigvals > cutoff))
        eigvals.setflags(write=False)
        eigvecs.setflags(write=False)
        return cls(H, eigvals, eigvecs, rank, cutoff)

    @classmethod
    def from_factor(cls, X, config: NumericConfig = DEFAULT_CONFIG) -> "PsdOperator":
        """X X* with its spectrum read off the SVD of X.

        Directions outside the column space of X get eigenvalue exactly 0, so
        results assembled from factors carry no roundoff rank.
        """
        X = np.asarray(X, dtype=complex)
        if X.ndim == 1:
            X = X[:, None]
        dim = X.shape[0]
        eigvals = np.zeros(dim)
        if X.shape[1] == 0:
            eigvecs = np.eye(dim, dtype=complex)
        else:
            eigvecs, sv, _ = sla.svd(X, full_matrices=True)
            eigvals[: len(sv)] = sv**2
        cutoff = config.rank_cutoff(eigvals, dim)
        rank = int(np.count_nonzero(eigvals > cutoff))
        eigvals.setflags(write=False)
        eigvecs.setflags(write=False)
        return cls(HermitianMatrix.symmetrized(X @ X.conj().T), eigvals, eigvecs, rank, cutoff)

    @classmethod
    def zeros(cls, dim: int, config: NumericConfig = DEFAULT_CONFIG) -> "PsdOperator":
        return cls.from_array(np.zeros((dim, dim)), config)

    @classmethod
    def identity(cls, dim: int, config: NumericConfig = DEFAULT_CONFIG) -> "PsdOperator":
        return cls.from_array(np.eye(dim), config)

    def __add__(self, other: "PsdOperator") -> "PsdOperator":
        check_same_dim(self, other)
        return PsdOperator.from_array(self.array + other.array, certify=False)


@dataclass(frozen=True, eq=False)
class Projection:
    matrix: HermitianMatrix

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def array(self) -> np.ndarray:
        return self.matrix.entries

    @property
    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.array)))))

    @classmethod
    def from_array(cls, arr, config: NumericConfig = DEFAULT_CONFIG) -> "Projection":
        arr = np.asarray(arr, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise NotAProjection(f"expected a square matrix, got shape {arr.shape}")
        adjoint_defect = np.linalg.norm(arr - arr.conj().T)
        idempotent_defect = np.linalg.norm(arr @ arr - arr)
        if adjoint_defect > config.projection_tol or idempotent_defect > config.projection_tol:
            raise NotAProjection(
                f"P* - P = {adjoint_defect:.3e}, P^2 - P = {idempotent_defect:.3e}"
            )
        return cls(HermitianMatrix.symmetrized(arr))

    @classmethod
    def onto(cls, basis: np.ndarray, dim: int = None) -> "Projection":
        """Orthogonal projection onto the span of orthonormal columns"""
        basis = np.asarray(basis, dtype=complex)
        if basis.size == 0:
            size = dim if dim is not None else basis.shape[0]
            return cls(HermitianMatrix.symmetrized(np.zeros((size, size))))
        return cls(HermitianMatrix.symmetrized(basis @ basis.conj().T))

    def complement(self) -> "Projection":
        return Projection(HermitianMatrix.symmetrized(np.eye(self.dim) - self.array))
