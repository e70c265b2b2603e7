import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_functional_pair, random_psd
from lebesgue_core import (
    AlgebraElement,
    AlgebraMismatch,
    BlockAlgebra,
    IndexOutOfRange,
    NotAbsolutelyContinuous,
    PositiveFunctional,
    abs_continuous,
    ac_witness,
    domination_constant,
    evaluate,
    left_kernel_basis,
    order_leq,
    random_element,
    representability_constant,
    representable,
    sample_below,
    singular,
    support,
    zero_functional,
)

M2 = BlockAlgebra((2,))


def _m2(arr):
    return PositiveFunctional.from_blocks(M2, [np.asarray(arr, dtype=complex)])


def test_evaluate_is_trace_against_density():
    f = _m2(np.diag([1.0, 2.0]))
    a = AlgebraElement(M2, (np.array([[3.0, 1.0], [1.0, 4.0]]),))
    assert evaluate(f, a) == pytest.approx(11.0)
    assert f.norm == pytest.approx(3.0)


def test_functional_is_positive(rng):
    algebra = BlockAlgebra((1, 3))
    f, _ = random_functional_pair(rng, algebra)
    for _ in range(20):
        x = random_element(algebra, rng)
        value = evaluate(f, x.adjoint() @ x)
        assert value.real >= -1e-10
        assert abs(value.imag) <= 1e-10


def test_evaluate_mismatch(rng):
    with pytest.raises(AlgebraMismatch):
        evaluate(_m2(np.eye(2)), random_element(BlockAlgebra((1, 1)), rng))


@pytest.mark.parametrize(
    "f, g, expected",
    [
        (np.diag([1.0, 0.0]), np.eye(2), True),
        (np.eye(2), np.diag([1.0, 0.0]), False),
        (np.eye(2), np.eye(2), True),
        (2 * np.eye(2), np.eye(2), False),
    ],
)
def test_order_leq_examples(f, g, expected):
    assert order_leq(_m2(f), _m2(g)) is expected


def test_support_projection():
    f = _m2(np.diag([2.0, 0.0]))
    s = support(f)
    assert_allclose(s.blocks[0], np.diag([1.0, 0.0]), atol=1e-12)


def test_support_compresses(rng):
    algebra = BlockAlgebra((2, 3))
    f, _ = random_functional_pair(rng, algebra)
    s = support(f)
    for _ in range(10):
        x = random_element(algebra, rng)
        assert evaluate(f, s @ x @ s) == pytest.approx(evaluate(f, x), abs=1e-10)


def test_left_kernel():
    f = _m2(np.diag([1.0, 0.0]))
    kernel = left_kernel_basis(f)
    assert len(kernel) == 2
    for a in kernel:
        assert abs(evaluate(f, a.adjoint() @ a)) <= 1e-12
        assert np.linalg.norm((a @ support(f)).blocks[0]) <= 1e-12


def test_left_kernel_size(rng):
    algebra = BlockAlgebra((2, 3))
    f, _ = random_functional_pair(rng, algebra)
    expected = sum(op.dim * (op.dim - op.rank) for op in f.operators)
    assert len(left_kernel_basis(f)) == expected


@pytest.mark.parametrize(
    "f, g, expected",
    [
        (np.diag([1.0, 0.0]), np.eye(2), True),
        (np.eye(2), np.diag([1.0, 0.0]), False),
        (np.zeros((2, 2)), np.zeros((2, 2)), True),
        (5 * np.diag([1.0, 0.0]), np.diag([1.0, 0.0]), True),
    ],
)
def test_abs_continuous_examples(f, g, expected):
    assert abs_continuous(_m2(f), _m2(g)) is expected


def test_domination_constant():
    assert domination_constant(_m2(np.diag([3.0, 0.0])), _m2(np.diag([1.0, 1.0]))) == pytest.approx(3.0)
    assert domination_constant(_m2(np.eye(2)), _m2(np.diag([1.0, 0.0]))) == math.inf


def test_ac_witness():
    f = _m2(np.diag([3.0, 1.0]))
    g = _m2(np.eye(2))
    parts, alphas = ac_witness(f, g, terms=4)
    assert len(parts) == len(alphas) == 4
    for part, alpha in zip(parts, alphas):
        assert order_leq(part, g.scaled(alpha * (1 + 1e-9)))
    assert alphas[-1] == pytest.approx(3.0)
    with pytest.raises(NotAbsolutelyContinuous):
        ac_witness(g, _m2(np.diag([1.0, 0.0])))


@pytest.mark.parametrize(
    "f, g, expected",
    [
        (np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), True),
        (np.eye(2), np.diag([1.0, 0.0]), False),
        (np.zeros((2, 2)), np.eye(2), True),
        (np.array([[1.0, 0.0], [0.0, 0.0]]), np.array([[0.5, 0.5], [0.5, 0.5]]), True),
    ],
)
def test_singular_examples(f, g, expected):
    assert singular(_m2(f), _m2(g)) is expected


def test_below_continuous_stays_continuous(rng):
    for _ in range(30):
        f, g = random_functional_pair(rng, overlap=True)
        if not abs_continuous(f, g):
            continue
        assert abs_continuous(sample_below(f, rng), g)


def test_continuous_and_singular_is_zero(rng):
    algebra = BlockAlgebra((2, 2))
    g = PositiveFunctional.from_blocks(algebra, [random_psd(2, 1, rng), random_psd(2, 2, rng)])
    h = PositiveFunctional.from_blocks(algebra, [g.operators[0].array, np.zeros((2, 2))])
    assert abs_continuous(h, g)
    assert not singular(h, g)
    zero = zero_functional(algebra)
    assert abs_continuous(zero, g) and singular(zero, g)


def test_representable():
    algebra = BlockAlgebra((1, 2, 2))
    f = PositiveFunctional.from_blocks(algebra, [np.array([[2.0]]), np.zeros((2, 2)), np.eye(2)])
    assert representable(f, [{0, 2}])
    assert representable(f, [{1}, {0, 1, 2}])
    assert not representable(f, [{0}, {1, 2}])
    assert representability_constant(f, {0, 2}) == pytest.approx(4.0)
    assert representability_constant(f, {0}) == math.inf
    with pytest.raises(IndexOutOfRange):
        representability_constant(f, {5})


def test_functional_arithmetic():
    f = _m2(np.diag([1.0, 0.0]))
    assert_allclose((f + f).density.blocks[0], np.diag([2.0, 0.0]))
    assert f.scaled(0.0).is_zero
    with pytest.raises(ValueError):
        f.scaled(-1.0)
    with pytest.raises(AlgebraMismatch):
        f + zero_functional(BlockAlgebra((1, 1)))
