import numpy as np
import pytest
from scipy.stats import unitary_group

from lebesgue_core import BlockAlgebra, PositiveFunctional, PsdOperator


def random_unitary(n, rng):
    return unitary_group.rvs(n, random_state=rng) if n > 1 else np.array([[np.exp(2j * np.pi * rng.uniform())]])


def random_psd(n, rank, rng, basis=None):
    """PSD of the given rank with non-zero eigenvalues in [0.5, 2].

    ``basis`` fixes the columns spanning the range (orthonormalised first).
    """
    if rank == 0:
        return np.zeros((n, n), dtype=complex)
    if basis is None:
        basis = random_unitary(n, rng)[:, :rank]
    else:
        basis, _ = np.linalg.qr(basis)
        basis = basis[:, :rank]
    eigvals = rng.uniform(0.5, 2.0, rank)
    return (basis * eigvals) @ basis.conj().T


def random_block_algebra(rng, max_blocks=3, max_dim=4):
    k = int(rng.integers(1, max_blocks + 1))
    return BlockAlgebra(tuple(int(n) for n in rng.integers(1, max_dim + 1, k)))


def random_functional_pair(rng, algebra=None, overlap=None):
    """Random (f, g) with random ranks.

    With ``overlap`` the range of f is built from part of the range of g plus
    random directions, so that f_r and f_s are both typically non-zero.
    """
    algebra = algebra or random_block_algebra(rng)
    overlap = bool(rng.integers(2)) if overlap is None else overlap
    f_blocks, g_blocks = [], []
    for n in algebra.block_dims:
        rank_g = int(rng.integers(0, n + 1))
        g_basis = random_unitary(n, rng)[:, :rank_g]
        g_blocks.append(random_psd(n, rank_g, rng, g_basis if rank_g else None))
        rank_f = int(rng.integers(0, n + 1))
        if overlap and rank_g and rank_f:
            shared = int(rng.integers(1, min(rank_g, rank_f) + 1))
            extra = rng.standard_normal((n, rank_f - shared)) + 1j * rng.standard_normal((n, rank_f - shared))
            f_blocks.append(random_psd(n, rank_f, rng, np.hstack([g_basis[:, :shared], extra])))
        else:
            f_blocks.append(random_psd(n, rank_f, rng))
    return (
        PositiveFunctional.from_blocks(algebra, f_blocks),
        PositiveFunctional.from_blocks(algebra, g_blocks),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def psd():
    def make(arr):
        return PsdOperator.from_array(np.asarray(arr, dtype=complex))

    return make
