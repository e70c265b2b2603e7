"""Numerical Wedderburn decomposition of a matrix *-algebra.

The ambient space is split by eigenspaces of random self-adjoint elements of
the commutant until every piece has a trivial commutant (Schur's lemma: the
piece is irreducible). Irreducible pieces are then grouped by unitary
equivalence: a cheap trace invariant proposes a match, and an intertwiner
solved from the generators confirms it and aligns the bases.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import InvalidAlgebra, NoConvergence
from ..log import logger
from .algebra import BlockAlgebra
from .presentation import GeneratorPresentation

NULL_TOL = 1e-10
CLUSTER_TOL = 1e-7
INVARIANT_TOL = 1e-6
WORD_LENGTH = 4


@dataclass(frozen=True, eq=False)
class WedderburnResult:
    """U* G U is block diagonal for every generator G.

    Columns of ``unitary`` are grouped by equivalence class: class j has
    ``multiplicities[j]`` consecutive copies of size ``block_dims[j]``, and all
    copies of one class carry identical generator blocks. The last
    ``null_dim`` columns span the common kernel of the generators, where the
    algebra acts as zero.
    """

    unitary: np.ndarray
    block_dims: Tuple[int, ...]
    multiplicities: Tuple[int, ...]
    residual: float
    null_dim: int = 0

    @property
    def copy_dims(self) -> List[int]:
        return [n for n, m in zip(self.block_dims, self.multiplicities) for _ in range(m)]


def _sylvester_gram(pairs: Sequence[Tuple[np.ndarray, np.ndarray]]) -> np.ndarray:
    """Gram matrix K with vec(X)* K vec(X) = sum |X A - B X|^2 (column-major vec)"""
    n_a = pairs[0][0].shape[0]
    n_b = pairs[0][1].shape[0]
    eye_a, eye_b = np.eye(n_a), np.eye(n_b)
    K = np.zeros((n_a * n_b, n_a * n_b), dtype=complex)
    for a, b in pairs:
        K += np.kron(a.conj() @ a.T, eye_b)
        K -= np.kron(a.conj(), b)
        K -= np.kron(a.T, b.conj().T)
        K += np.kron(eye_a, b.conj().T @ b)
    return (K + K.conj().T) / 2


def _null_solutions(pairs, shape: Tuple[int, int]) -> List[np.ndarray]:
    """Basis of {X : X A = B X for every pair}"""
    eigvals, eigvecs = sla.eigh(_sylvester_gram(pairs))
    threshold = NULL_TOL * max(float(eigvals[-1]), 1.0)
    return [eigvecs[:, i].reshape(shape, order="F") for i in np.flatnonzero(eigvals <= threshold)]


def commutant_basis(matrices: Sequence[np.ndarray]) -> List[np.ndarray]:
    n = matrices[0].shape[0]
    return _null_solutions([(m, m) for m in matrices], (n, n))


def intertwiner(rho_a: Sequence[np.ndarray], rho_b: Sequence[np.ndarray]) -> Optional[np.ndarray]:
    """Unitary U with U* rho_b U = rho_a, or None when the representations differ"""
    n = rho_a[0].shape[0]
    if rho_b[0].shape[0] != n:
        return None
    solutions = _null_solutions(list(zip(rho_a, rho_b)), (n, n))
    if len(solutions) != 1:
        return None
    T = solutions[0]
    c = float(np.real(np.trace(T.conj().T @ T))) / n
    U = T / np.sqrt(c)
    if not np.allclose(U.conj().T @ U, np.eye(n), atol=1e-8):
        return None
    if max(np.linalg.norm(U.conj().T @ b @ U - a) for a, b in zip(rho_a, rho_b)) > 1e-8:
        return None
    return U


def _clusters(eigvals: np.ndarray) -> List[np.ndarray]:
    spread = max(float(np.max(np.abs(eigvals))), 1.0)
    breaks = np.flatnonzero(np.diff(eigvals) > CLUSTER_TOL * spread) + 1
    return np.split(np.arange(len(eigvals)), breaks)


def _random_hermitian(basis: Sequence[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    coeffs = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    x = sum(c * b for c, b in zip(coeffs, basis))
    return x + x.conj().T


def _irreducible_pieces(
    generators: Sequence[np.ndarray], rng: np.random.Generator, config: NumericConfig
) -> List[np.ndarray]:
    d = generators[0].shape[0]
    pending = [np.eye(d, dtype=complex)]
    pieces = []
    while pending:
        Q = pending.pop()
        restricted = [Q.conj().T @ g @ Q for g in generators]
        comm = commutant_basis(restricted)
        if len(comm) <= 1:
            pieces.append(Q)
            continue
        for attempt in range(config.wedderburn_retries):
            eigvals, eigvecs = sla.eigh(_random_hermitian(comm, rng))
            groups = _clusters(eigvals)
            if len(groups) > 1:
                break
            logger.warning(f"commutant sample {attempt} did not split a piece of size {Q.shape[1]}")
        else:
            raise NoConvergence(
                f"no split of a {Q.shape[1]}-dimensional piece after {config.wedderburn_retries} samples; reseed"
            )
        logger.debug(f"split piece of size {Q.shape[1]} into {[len(g) for g in groups]}")
        pending.extend(Q @ eigvecs[:, idx] for idx in reversed(groups))
    return pieces


def _trace_invariant(rho: Sequence[np.ndarray], coeffs: np.ndarray) -> np.ndarray:
    z = sum(c * r for c, r in zip(coeffs, rho))
    powers, current = [], np.eye(z.shape[0])
    for _ in range(WORD_LENGTH):
        current = current @ z
        powers.append(np.trace(current))
    return np.array(powers)


def _acts_as_zero(generators: Sequence[np.ndarray], Q: np.ndarray) -> bool:
    scale = max(max(float(np.linalg.norm(g)) for g in generators), 1.0)
    return max(float(np.linalg.norm(g @ Q)) for g in generators) <= NULL_TOL * scale


def wedderburn_decompose(
    presentation: GeneratorPresentation, seed: int = 0, config: NumericConfig = DEFAULT_CONFIG
) -> WedderburnResult:
    rng = np.random.default_rng(seed)
    generators = presentation.generators
    pieces = _irreducible_pieces(generators, rng, config)
    null = [Q for Q in pieces if _acts_as_zero(generators, Q)]
    pieces = [Q for Q in pieces if not _acts_as_zero(generators, Q)]
    null_dim = sum(Q.shape[1] for Q in null)
    if not pieces:
        raise InvalidAlgebra("the generators span the zero algebra")
    coeffs = rng.standard_normal(len(generators)) + 1j * rng.standard_normal(len(generators))

    # each class: [representative rho, invariant, aligned bases]
    classes: List[list] = []
    for Q in sorted(pieces, key=lambda q: q.shape[1]):
        rho = [Q.conj().T @ g @ Q for g in generators]
        invariant = _trace_invariant(rho, coeffs)
        for cls in classes:
            rep_rho, rep_invariant, members = cls
            if rep_rho[0].shape != rho[0].shape:
                continue
            scale = max(float(np.max(np.abs(rep_invariant))), 1.0)
            if np.max(np.abs(rep_invariant - invariant)) > INVARIANT_TOL * scale:
                continue
            U = intertwiner(rep_rho, rho)
            if U is not None:
                members.append(Q @ U)
                break
        else:
            classes.append([rho, invariant, [Q]])

    unitary = np.hstack([q for _, _, members in classes for q in members] + null)
    block_dims = tuple(rho[0].shape[0] for rho, _, _ in classes)
    multiplicities = tuple(len(members) for _, _, members in classes)
    result = WedderburnResult(unitary, block_dims, multiplicities, 0.0, null_dim)
    residual = block_residual(presentation, result)
    logger.debug(
        f"wedderburn dims {block_dims} x {multiplicities}, null {null_dim}, residual {residual:.3e}"
    )
    if residual > config.wedderburn_residual:
        raise NoConvergence(f"off-block residual {residual:.3e} exceeds {config.wedderburn_residual:.1e}")
    return WedderburnResult(unitary, block_dims, multiplicities, residual, null_dim)


def block_residual(presentation: GeneratorPresentation, result: WedderburnResult) -> float:
    """Largest Frobenius mass of U* G U outside the diagonal copy blocks"""
    U = result.unitary
    blocks = [np.ones((n, n)) for n in result.copy_dims]
    if result.null_dim:
        blocks.append(np.zeros((result.null_dim, result.null_dim)))
    mask = sla.block_diag(*blocks).astype(bool)
    worst = 0.0
    for g in presentation.generators:
        conj = U.conj().T @ g @ U
        worst = max(worst, float(np.linalg.norm(np.where(mask, 0.0, conj))))
    return worst


def irreducible_dimensions(result: WedderburnResult) -> Tuple[int, ...]:
    return tuple(sorted(result.block_dims))


def max_irreducible_dimension(result: WedderburnResult) -> int:
    return max(result.block_dims)


def block_algebra_of(result: WedderburnResult) -> BlockAlgebra:
    """The abstract algebra M_{d1} + ... + M_{dk} the presentation generates"""
    return BlockAlgebra(irreducible_dimensions(result))
