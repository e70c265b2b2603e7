import math

import numpy as np
import pytest
import scipy.linalg as sla
from numpy.testing import assert_allclose

from conftest import random_psd
from lebesgue_core import (
    DEFAULT_CONFIG,
    DimensionMismatch,
    HermitianMatrix,
    NonHermitian,
    NotAProjection,
    NotPsd,
    Projection,
    PsdOperator,
    eigendecompose,
    max_generalized_eig,
    operator_norm,
    pseudo_inverse,
    psd_leq,
    range_contained,
    sqrt_psd,
    support_projection,
)


def test_eigendecompose_diagonal():
    vals, vecs = eigendecompose(HermitianMatrix.from_array(np.diag([1.0, 3.0])))
    assert_allclose(vals, [3.0, 1.0])
    assert_allclose(np.abs(vecs), [[0, 1], [1, 0]], atol=1e-12)


def test_eigendecompose_swap():
    vals, vecs = eigendecompose(HermitianMatrix.from_array([[0.0, 1.0], [1.0, 0.0]]))
    assert_allclose(vals, [1.0, -1.0], atol=1e-12)
    assert_allclose(np.abs(vecs), np.full((2, 2), 1 / math.sqrt(2)), atol=1e-12)


def test_eigendecompose_zero():
    vals, vecs = eigendecompose(HermitianMatrix.from_array(np.zeros((4, 4))))
    assert_allclose(vals, np.zeros(4))
    assert_allclose(vecs.conj().T @ vecs, np.eye(4), atol=1e-12)


def test_reconstruction(rng):
    a = random_psd(7, 4, rng)
    op = PsdOperator.from_array(a)
    rebuilt = (op.eigvecs * op.eigvals) @ op.eigvecs.conj().T
    assert np.linalg.norm(rebuilt - a) <= 1e-10 * np.linalg.norm(a)
    assert op.rank == 4
    assert np.all(np.diff(op.eigvals) <= 0)


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitian):
        HermitianMatrix.from_array([[1.0, 2.0], [0.0, 1.0]])


def test_non_square_rejected():
    with pytest.raises(NonHermitian):
        HermitianMatrix.from_array(np.zeros((2, 3)))


def test_not_psd_rejected():
    with pytest.raises(NotPsd):
        PsdOperator.from_array(np.diag([1.0, -0.1]))


def test_roundoff_negative_is_clipped():
    op = PsdOperator.from_array(np.diag([1.0, -1e-17]))
    assert op.eigvals.min() >= 0
    assert op.rank == 1


def test_projection_checks():
    P = Projection.from_array(np.diag([1.0, 0.0]))
    assert P.rank == 1
    assert_allclose(P.complement().array, np.diag([0.0, 1.0]))
    with pytest.raises(NotAProjection):
        Projection.from_array(np.diag([0.5, 0.0]))


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.diag([2.0, 0.0]), np.diag([0.5, 0.0])),
        (np.eye(3), np.eye(3)),
    ],
)
def test_pseudo_inverse_examples(psd, a, expected):
    assert_allclose(pseudo_inverse(psd(a)).array, expected, atol=1e-12)


def test_pseudo_inverse_rank_one(psd):
    v = np.array([1.0, 1.0j, 0.0]) / math.sqrt(2)
    a = 4 * np.outer(v, v.conj())
    assert_allclose(pseudo_inverse(psd(a)).array, np.outer(v, v.conj()) / 4, atol=1e-12)


def test_pseudo_inverse_penrose_identities(rng):
    for n in range(2, 9):
        a = PsdOperator.from_array(random_psd(n, int(rng.integers(1, n + 1)), rng))
        p = pseudo_inverse(a)
        assert np.linalg.norm(a.array @ p.array @ a.array - a.array) <= 1e-9 * np.linalg.norm(a.array)
        assert np.linalg.norm(p.array @ a.array @ p.array - p.array) <= 1e-9 * np.linalg.norm(p.array)
        assert_allclose(pseudo_inverse(p).array, a.array, atol=1e-9)


def test_support_projection_cutoff():
    config = DEFAULT_CONFIG.with_overrides(rank_tol=1e-10)
    op = PsdOperator.from_array(np.diag([5.0, 0.0, 1e-18]), config)
    assert_allclose(support_projection(op).array, np.diag([1.0, 0.0, 0.0]), atol=1e-12)


def test_support_projection_trivial_cases(psd):
    assert_allclose(support_projection(psd(np.zeros((3, 3)))).array, np.zeros((3, 3)))
    assert_allclose(support_projection(psd(np.eye(2))).array, np.eye(2), atol=1e-12)


def test_support_projection_compresses(rng):
    for n in range(1, 13):
        a = PsdOperator.from_array(random_psd(n, int(rng.integers(0, n + 1)), rng))
        P = support_projection(a).array
        assert_allclose(P @ a.array @ P, a.array, atol=1e-9)


def test_sqrt_psd(psd, rng):
    assert_allclose(sqrt_psd(psd(np.diag([4.0, 9.0]))).array, np.diag([2.0, 3.0]), atol=1e-12)
    assert_allclose(sqrt_psd(psd(np.zeros((2, 2)))).array, np.zeros((2, 2)))
    a = random_psd(6, 3, rng)
    root = sqrt_psd(psd(a)).array
    assert_allclose(root @ root, a, atol=1e-9)


def test_operator_norm(psd):
    assert operator_norm(psd(np.diag([3.0, 1.0]))) == pytest.approx(3.0)
    assert operator_norm(np.array([[0.0, 2.0], [0.0, 0.0]])) == pytest.approx(2.0)


def test_psd_leq_and_range_contained(psd):
    assert psd_leq(np.diag([1.0, 0.0]), np.eye(2))
    assert not psd_leq(np.diag([2.0, 0.0]), np.eye(2))
    assert range_contained(psd(np.diag([1.0, 0.0])), psd(np.diag([3.0, 0.0])))
    assert not range_contained(psd(np.eye(2)), psd(np.diag([1.0, 0.0])))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (np.diag([2.0, 0.0]), np.diag([1.0, 0.0]), 2.0),
        (np.eye(2), np.diag([1.0, 0.0]), math.inf),
        (np.zeros((2, 2)), np.diag([1.0, 0.0]), 0.0),
    ],
)
def test_max_generalized_eig_examples(psd, a, b, expected):
    assert max_generalized_eig(psd(a), psd(b)) == pytest.approx(expected)


def test_max_generalized_eig_truncation_weights():
    N = 12
    k = np.arange(1, N + 1)
    config = DEFAULT_CONFIG.with_overrides(rank_tol=10.0 ** -(N + 1))
    a = PsdOperator.from_array(np.diag(2.0 ** -k), config)
    b = PsdOperator.from_array(np.diag(10.0 ** -k), config)
    assert max_generalized_eig(a, b, config) == pytest.approx(5.0 ** N, rel=1e-6)


def test_max_generalized_eig_is_tight(rng):
    for _ in range(30):
        n = int(rng.integers(2, 8))
        b = random_psd(n, int(rng.integers(1, n + 1)), rng)
        P = support_projection(PsdOperator.from_array(b)).array
        a = P @ random_psd(n, n, rng) @ P
        alpha = max_generalized_eig(PsdOperator.from_array(a), PsdOperator.from_array(b))
        assert math.isfinite(alpha)
        assert sla.eigvalsh(alpha * (1 + 1e-9) * b - a)[0] >= -1e-9 * alpha
        assert sla.eigvalsh(alpha * (1 - 1e-6) * b - a)[0] < 0


def test_dimension_mismatch(psd):
    with pytest.raises(DimensionMismatch):
        max_generalized_eig(psd(np.eye(2)), psd(np.eye(3)))


def test_factor_reconstructs(rng):
    for rank in range(5):
        A = PsdOperator.from_array(random_psd(4, rank, rng))
        X = A.factor()
        assert X.shape == (4, A.rank)
        assert_allclose(X @ X.conj().T, A.array, atol=1e-12)


def test_from_factor_has_an_exact_spectrum(rng):
    xi = 0.2 ** np.arange(1, 41)
    op = PsdOperator.from_factor(xi)
    assert op.rank == 1
    assert np.count_nonzero(op.eigvals) == 1
    assert op.eigvals[0] == pytest.approx(float(xi @ xi))
    X = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
    op = PsdOperator.from_factor(X)
    assert op.rank == 2
    assert_allclose(op.array, X @ X.conj().T, atol=1e-12)
    assert_allclose(op.eigvals[2:], 0.0)
    assert PsdOperator.from_factor(np.zeros((3, 0))).is_zero
