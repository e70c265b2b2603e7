import math

import numpy as np
import pytest
import scipy.linalg as sla
from numpy.testing import assert_allclose

from conftest import random_psd, random_unitary
from lebesgue_core import (
    DEFAULT_CONFIG,
    DecompositionMode,
    DimensionMismatch,
    NoConvergence,
    Projection,
    PsdOperator,
    form_closable,
    form_decompose,
    iterated_parallel_sums,
    operator_is_unique,
    operator_lebesgue,
    operators_singular,
    parallel_sum,
    pseudo_inverse,
    psd_leq,
    random_contraction,
    shorted_operator,
    sqrt_psd,
    support_projection,
)


def _op(arr):
    return PsdOperator.from_array(np.asarray(arr, dtype=complex))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (np.eye(2), np.diag([1.0, 0.0]), np.diag([0.5, 0.0])),
        (np.diag([1.0, 3.0, 0.0]), np.diag([1.0, 1.0, 0.0]), np.diag([0.5, 0.75, 0.0])),
        (np.eye(3), np.eye(3), 0.5 * np.eye(3)),
        (np.eye(2), np.zeros((2, 2)), np.zeros((2, 2))),
    ],
)
def test_parallel_sum_examples(a, b, expected):
    assert_allclose(parallel_sum(_op(a), _op(b)).array, expected, atol=1e-12)


def test_parallel_sum_properties(rng):
    for _ in range(40):
        n = int(rng.integers(1, 9))
        A = _op(random_psd(n, int(rng.integers(0, n + 1)), rng))
        B = _op(random_psd(n, int(rng.integers(0, n + 1)), rng))
        AB = parallel_sum(A, B)
        assert_allclose(AB.array, parallel_sum(B, A).array, atol=1e-9)
        assert psd_leq(AB, A)
        assert psd_leq(AB, B)
        assert sla.eigvalsh(AB.array)[0] >= -1e-10


def test_rank_one_parallel_sums():
    v = np.array([1.0, 0.0])
    w = np.array([1.0, 1.0]) / math.sqrt(2)
    # parallel rank-one operators overlap, transverse ones meet only in 0
    assert not operators_singular(_op(np.outer(v, v)), _op(3 * np.outer(v, v)))
    assert operators_singular(_op(np.outer(v, v)), _op(np.outer(w, w)))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), True),
        (np.eye(2), np.eye(2), False),
    ],
)
def test_operators_singular_examples(a, b, expected):
    assert operators_singular(_op(a), _op(b)) is expected


def test_shorted_operator_examples():
    A = _op([[2.0, 1.0], [1.0, 1.0]])
    assert_allclose(shorted_operator(A, Projection.from_array(np.diag([1.0, 0.0]))).array, np.diag([1.0, 0.0]), atol=1e-12)
    assert_allclose(shorted_operator(A, Projection.from_array(np.eye(2))).array, A.array)
    assert_allclose(shorted_operator(A, Projection.from_array(np.zeros((2, 2)))).array, np.zeros((2, 2)))


def _largest_rank_one_below(A, v):
    """t v v* with t the largest weight keeping it below A (v in range(A))"""
    v = v / np.linalg.norm(v)
    t = 1.0 / float(np.real(v.conj() @ pseudo_inverse(A).array @ v))
    return t * np.outer(v, v.conj())


def test_shorted_operator_is_maximal(rng):
    for _ in range(30):
        n = int(rng.integers(2, 8))
        A = _op(random_psd(n, int(rng.integers(1, n + 1)), rng))
        basis = random_unitary(n, rng)[:, : int(rng.integers(1, n))]
        P = Projection.onto(basis)
        S = shorted_operator(A, P)
        assert psd_leq(S, A)
        outside = np.eye(n) - P.array
        assert np.linalg.norm(outside @ S.array) <= 1e-9 * max(np.linalg.norm(A.array), 1.0)
        common = sla.null_space(np.hstack([basis, -A.range_basis()]))
        if not common.shape[1]:
            continue
        tops = []
        for _ in range(5):
            coeffs = rng.standard_normal(common.shape[1]) + 1j * rng.standard_normal(common.shape[1])
            top = _largest_rank_one_below(A, basis @ (common[: basis.shape[1]] @ coeffs))
            assert psd_leq(top, A)
            assert psd_leq(top, S)
            tops.append(top)
        weights = rng.dirichlet(np.ones(len(tops)))
        assert psd_leq(sum(w * t for w, t in zip(weights, tops)), S)


def test_shorted_operator_matches_inverse_formula(rng):
    for _ in range(30):
        n = int(rng.integers(2, 8))
        A = _op(random_psd(n, n, rng))
        U = random_unitary(n, rng)[:, : int(rng.integers(1, n))]
        expected = U @ np.linalg.inv(U.conj().T @ np.linalg.inv(A.array) @ U) @ U.conj().T
        assert_allclose(shorted_operator(A, Projection.onto(U)).array, expected, atol=1e-9)


def test_shorted_operator_stays_below(rng):
    for _ in range(300):
        n = int(rng.integers(2, 9))
        A = _op(random_psd(n, int(rng.integers(1, n + 1)), rng))
        P = Projection.onto(random_unitary(n, rng)[:, : int(rng.integers(1, n))])
        S = shorted_operator(A, P)
        scale = max(np.linalg.norm(A.array, 2), 1.0)
        assert sla.eigvalsh(A.array - S.array)[0] >= -1e-10 * scale
        assert sla.eigvalsh(S.array)[0] >= -1e-10 * scale


def test_operator_lebesgue_diagonal():
    d = operator_lebesgue(_op(np.eye(2)), _op(np.diag([1.0, 0.0])))
    assert_allclose(d.regular.array, np.diag([1.0, 0.0]), atol=1e-12)
    assert_allclose(d.singular.array, np.diag([0.0, 1.0]), atol=1e-12)
    assert d.alpha_min == pytest.approx(1.0)
    assert d.unique


def test_operator_lebesgue_trivial_branches(rng):
    A = _op(random_psd(4, 3, rng))
    full = operator_lebesgue(A, _op(random_psd(4, 4, rng)))
    assert_allclose(full.regular.array, A.array)
    assert_allclose(full.singular.array, np.zeros((4, 4)), atol=1e-12)
    empty = operator_lebesgue(A, _op(np.zeros((4, 4))))
    assert_allclose(empty.regular.array, np.zeros((4, 4)))
    assert_allclose(empty.singular.array, A.array)


@pytest.mark.parametrize("mode", list(DecompositionMode))
def test_operator_lebesgue_invariants(rng, mode):
    for _ in range(25):
        n = int(rng.integers(2, 9))
        A = _op(random_psd(n, int(rng.integers(1, n + 1)), rng))
        B = _op(random_psd(n, int(rng.integers(1, n)), rng))
        d = operator_lebesgue(A, B, mode)
        assert np.linalg.norm(d.regular.array + d.singular.array - A.array) <= 1e-8 * max(np.linalg.norm(A.array), 1)
        assert sla.eigvalsh(d.singular.array)[0] >= -1e-8
        assert psd_leq(d.regular, A)
        assert operators_singular(d.singular, B)
        assert form_closable(d.regular, B)
        assert math.isfinite(d.alpha_min)


def test_schur_and_iterative_agree(rng):
    """200 seeded pairs of dims 2..12: the two independent algorithms coincide"""
    for _ in range(200):
        n = int(rng.integers(2, 13))
        A = _op(random_psd(n, int(rng.integers(1, n + 1)), rng))
        B = _op(random_psd(n, int(rng.integers(0, n + 1)), rng))
        schur = operator_lebesgue(A, B, DecompositionMode.SCHUR)
        iterative = operator_lebesgue(A, B, DecompositionMode.ITERATIVE)
        assert np.linalg.norm(schur.regular.array - iterative.regular.array) <= 1e-7


def test_parallel_sums_increase_to_regular_part(rng):
    A = _op(random_psd(5, 4, rng))
    B = _op(random_psd(5, 2, rng))
    previous = np.zeros((5, 5))
    for k in range(8):
        current = parallel_sum(A, PsdOperator.from_array(2.0 ** k * B.array)).array
        assert psd_leq(previous, current)
        assert psd_leq(current, A)
        previous = current
    limit, used = iterated_parallel_sums(A, B)
    assert used >= 3
    regular = shorted_operator(A, support_projection(B))
    assert_allclose(limit.array, regular.array, atol=1e-7)


def test_operator_is_unique(rng):
    unique, alpha = operator_is_unique(_op(random_psd(4, 4, rng)), _op(random_psd(4, 2, rng)))
    assert unique and math.isfinite(alpha)


@pytest.mark.parametrize(
    "F, G, expected",
    [
        (np.diag([1.0, 0.0]), np.eye(2), True),
        (np.diag([0.0, 1.0]), np.diag([1.0, 0.0]), False),
    ],
)
def test_form_closable_examples(F, G, expected):
    assert form_closable(_op(F), _op(G)) is expected


def test_form_chain(rng):
    for _ in range(30):
        n = int(rng.integers(2, 7))
        G = _op(random_psd(n, int(rng.integers(1, n + 1)), rng))
        F = _op(0.5 * shorted_operator(G, Projection.onto(random_unitary(n, rng)[:, : int(rng.integers(1, n + 1))])).array)
        assert form_closable(G, G)
        if psd_leq(F, G):
            assert form_closable(F, G)
            kernel_g = G.kernel_basis()
            assert np.linalg.norm(F.array @ kernel_g) <= 1e-9


def test_form_decompose_matches_operator_view(rng):
    F = _op(random_psd(4, 3, rng))
    G = _op(random_psd(4, 2, rng))
    assert_allclose(form_decompose(F, G).regular.array, operator_lebesgue(F, G).regular.array)


def test_mismatched_dimensions():
    with pytest.raises(DimensionMismatch):
        parallel_sum(_op(np.eye(2)), _op(np.eye(3)))


def test_iterative_mode_gives_up(rng):
    A = _op(random_psd(4, 3, rng))
    B = _op(random_psd(4, 2, rng))
    config = DEFAULT_CONFIG.with_overrides(iter_max_exponent=1)
    with pytest.raises(NoConvergence):
        iterated_parallel_sums(A, B, config)
    with pytest.raises(NoConvergence):
        operator_lebesgue(A, B, DecompositionMode.ITERATIVE, config)


@pytest.mark.parametrize("n", [6, 24, 40])
def test_parallel_sum_with_tiny_eigenvalues(n):
    """xi xi* : diag(0.1^k) against |xi|^2 / (1 + xi* g^-1 xi)"""
    weights = 0.1 ** np.arange(1, n + 1)
    xi = 0.2 ** np.arange(1, n + 1)
    config = DEFAULT_CONFIG.with_overrides(rank_tol=10.0 ** -(n + 3))
    A = PsdOperator.from_factor(xi, config)
    B = PsdOperator.from_array(np.diag(weights).astype(complex), config)
    expected = float(xi @ xi) / (1.0 + float(np.sum(xi**2 / weights)))
    assert np.linalg.norm(parallel_sum(A, B, config).array, 2) == pytest.approx(expected, rel=1e-8)
