"""GNS construction for positive functionals on block algebras.

The algebra is taken in its matrix-unit basis. <x, y> = f(y* x) is the
pre-inner product, L_f its null space, and H_f = A / L_f. With
D_i = sum_j lambda_j v_j v_j* the Gram matrix of block i is 1 (x) D_i^T, so
Gram-Schmidt over e_r (x) conj(v_j) for the eigenvalues above the rank cutoff
gives an orthonormal basis of the quotient and e_r (x) conj(v_j) over the rest
spans L_f. pi(a) is left multiplication read off in that basis and xi is the
class of 1.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Tuple

import numpy as np
import scipy.linalg as sla

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import VerificationFailed, ZeroFunctional
from ..log import logger
from ..staralg import AlgebraElement, basis, element_adjoint, element_mul, identity, left_multiplication
from .functional import PositiveFunctional, evaluate, left_kernel_basis

GNS_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class GnsData:
    representation: Tuple[np.ndarray, ...]
    cyclic_vector: np.ndarray
    kernel_basis: Tuple[AlgebraElement, ...]
    quotient_dim: int
    defects: Dict[str, float] = field(default_factory=dict)

    def represent(self, a: AlgebraElement) -> np.ndarray:
        """pi(a) for an arbitrary element, by linearity over the matrix units"""
        coords = a.to_vector()
        return np.tensordot(coords, np.asarray(self.representation), axes=1)


def _gram_matrix(f: PositiveFunctional) -> np.ndarray:
    # G[(r,c),(r',c')] = f(E_rc* E_r'c') = delta_rr' D[c', c]
    return sla.block_diag(*[np.kron(np.eye(op.dim), op.array.T) for op in f.operators])


def _orthonormal_quotient_basis(f: PositiveFunctional) -> np.ndarray:
    """Modified Gram-Schmidt, twice, in the f-metric over e_r (x) conj(v_j).

    Eigenvectors at or below the density's rank cutoff span L_f and are
    skipped; ``left_kernel_basis`` takes exactly those, so the quotient and
    the kernel come from one rank decision.
    """
    columns = []
    offset = 0
    for op in f.operators:
        n = op.dim
        metric = op.array.T
        accepted = []
        for j in range(op.rank):
            w = op.eigvecs[:, j].conj()
            for _ in range(2):
                for q in accepted:
                    w = w - (q.conj() @ metric @ w) * q
            norm2 = float(np.real(w.conj() @ metric @ w))
            accepted.append(w / np.sqrt(norm2))
        for r in range(n):
            for q in accepted:
                column = np.zeros(f.algebra.dimension, dtype=complex)
                column[offset + r * n: offset + (r + 1) * n] = q
                columns.append(column)
        offset += n * n
    return np.array(columns).T


def gns(f: PositiveFunctional, config: NumericConfig = DEFAULT_CONFIG) -> GnsData:
    if f.is_zero:
        raise ZeroFunctional("the GNS space of the zero functional is trivial")
    gram = _gram_matrix(f)
    Q = _orthonormal_quotient_basis(f)
    d = Q.shape[1]
    units = basis(f.algebra)
    representation = tuple(Q.conj().T @ gram @ left_multiplication(u) @ Q for u in units)
    xi = Q.conj().T @ gram @ identity(f.algebra).to_vector()
    data = GnsData(representation, xi, tuple(left_kernel_basis(f)), d)
    defects = gns_defects(f, data)
    logger.debug(f"GNS of dimension {d}: defects {defects}")
    failing = {k: v for k, v in defects.items() if v > GNS_TOL}
    if failing:
        raise VerificationFailed(f"GNS invariants violated: {failing}")
    return replace(data, defects=defects)


def gns_defects(f: PositiveFunctional, data: GnsData) -> Dict[str, float]:
    """Largest violation of each GNS invariant over the matrix-unit basis"""
    units = basis(f.algebra)
    pi = data.representation
    xi = data.cyclic_vector
    reconstruction = max(abs(evaluate(f, u) - xi.conj() @ p @ xi) for u, p in zip(units, pi))
    multiplicative = 0.0
    for j, u in enumerate(units):
        for k, w in enumerate(units):
            product = data.represent(element_mul(u, w))
            multiplicative = max(multiplicative, float(np.linalg.norm(product - pi[j] @ pi[k])))
    involutive = max(
        float(np.linalg.norm(data.represent(element_adjoint(u)) - p.conj().T)) for u, p in zip(units, pi)
    )
    orbit = np.array([p @ xi for p in pi]).T
    rank = int(np.linalg.matrix_rank(orbit, tol=1e-8)) if orbit.size else 0
    return {
        "reconstruction": float(reconstruction),
        "multiplicative": multiplicative,
        "involutive": involutive,
        "cyclic": float(data.quotient_dim - rank),
    }
