import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_block_algebra, random_unitary
from lebesgue_core import (
    BlockAlgebra,
    GeneratorPresentation,
    InvalidAlgebra,
    NoConvergence,
    block_algebra_of,
    block_presentation,
    block_residual,
    commutant_basis,
    conjugate,
    cyclic_group_table,
    group_algebra,
    intertwiner,
    irreducible_dimensions,
    max_irreducible_dimension,
    symmetric_group_table,
    wedderburn_decompose,
)


def test_full_matrix_algebra():
    result = wedderburn_decompose(block_presentation(BlockAlgebra((3,))))
    assert result.block_dims == (3,)
    assert result.multiplicities == (1,)
    assert max_irreducible_dimension(result) == 3


def test_diagonal_algebra():
    result = wedderburn_decompose(block_presentation(BlockAlgebra((1, 1, 1))))
    assert irreducible_dimensions(result) == (1, 1, 1)
    assert max_irreducible_dimension(result) == 1


def test_symmetric_group_s3():
    result = wedderburn_decompose(group_algebra(symmetric_group_table(3)))
    assert result.block_dims == (1, 1, 2)
    assert result.multiplicities == (1, 1, 2)
    assert max_irreducible_dimension(result) == 2
    assert result.residual < 1e-7


def test_cyclic_group_is_commutative():
    result = wedderburn_decompose(group_algebra(cyclic_group_table(4)))
    assert irreducible_dimensions(result) == (1, 1, 1, 1)
    assert max_irreducible_dimension(result) == 1


def test_unitary_is_unitary():
    result = wedderburn_decompose(group_algebra(symmetric_group_table(3)), seed=3)
    U = result.unitary
    assert_allclose(U.conj().T @ U, np.eye(6), atol=1e-9)
    assert result.copy_dims == [1, 1, 2, 2]


def test_random_block_algebras_are_recovered(rng):
    """Random conjugates of M_{n1} + ... + M_{nk} give back the block sizes"""
    for seed in range(100):
        algebra = random_block_algebra(rng, max_blocks=4, max_dim=4)
        U = random_unitary(algebra.hilbert_dim, rng)
        presentation = conjugate(block_presentation(algebra), U)
        result = wedderburn_decompose(presentation, seed=seed)
        assert irreducible_dimensions(result) == tuple(sorted(algebra.block_dims))
        assert result.residual < 1e-7


def test_multiplicities_are_recovered(rng):
    algebra = BlockAlgebra((1, 2, 2))
    presentation = conjugate(block_presentation(algebra, [3, 2, 1]), random_unitary(9, rng))
    result = wedderburn_decompose(presentation, seed=11)
    assert sorted(zip(result.block_dims, result.multiplicities)) == [(1, 3), (2, 1), (2, 2)]
    assert block_residual(presentation, result) == pytest.approx(result.residual)


def test_same_seed_same_result():
    presentation = group_algebra(symmetric_group_table(3))
    first = wedderburn_decompose(presentation, seed=5)
    second = wedderburn_decompose(presentation, seed=5)
    assert first.block_dims == second.block_dims
    assert_allclose(first.unitary, second.unitary)


def test_block_algebra_of():
    result = wedderburn_decompose(group_algebra(symmetric_group_table(3)))
    assert block_algebra_of(result) == BlockAlgebra((1, 1, 2))


def test_commutant_of_full_algebra_is_scalar():
    basis = commutant_basis(block_presentation(BlockAlgebra((3,))).generators)
    assert len(basis) == 1
    assert_allclose(basis[0] / basis[0][0, 0], np.eye(3), atol=1e-9)


def test_intertwiner(rng):
    rho = list(block_presentation(BlockAlgebra((2,))).generators)
    V = random_unitary(2, rng)
    moved = [V @ r @ V.conj().T for r in rho]
    U = intertwiner(rho, moved)
    assert U is not None
    for a, b in zip(rho, moved):
        assert_allclose(U.conj().T @ b @ U, a, atol=1e-8)
    assert intertwiner(rho, [np.eye(3)] * len(rho)) is None


def test_adjoints_are_appended():
    presentation = GeneratorPresentation.from_generators([np.array([[0.0, 1.0], [0.0, 0.0]])])
    assert len(presentation.generators) == 2
    with pytest.raises(InvalidAlgebra):
        GeneratorPresentation.from_generators([])
    with pytest.raises(InvalidAlgebra):
        GeneratorPresentation.from_generators([np.eye(2), np.eye(3)])


def _padded(arr, d):
    out = np.zeros((d, d), dtype=complex)
    out[: arr.shape[0], : arr.shape[1]] = arr
    return out


def test_non_unital_subalgebra_has_a_null_part():
    units = [np.array([[1.0, 0.0], [0.0, 0.0]]), np.array([[0.0, 1.0], [0.0, 0.0]])]
    presentation = GeneratorPresentation.from_generators([_padded(u, 3) for u in units])
    result = wedderburn_decompose(presentation)
    assert irreducible_dimensions(result) == (2,)
    assert result.null_dim == 1
    assert_allclose(result.unitary.conj().T @ result.unitary, np.eye(3), atol=1e-9)
    assert result.residual < 1e-7
    assert block_residual(presentation, result) < 1e-7


def test_zero_generators_span_no_algebra():
    with pytest.raises(InvalidAlgebra):
        wedderburn_decompose(GeneratorPresentation.from_generators([np.zeros((3, 3))]))


def test_unsplittable_commutant_gives_up(monkeypatch):
    monkeypatch.setattr(
        "lebesgue_core.staralg.wedderburn._clusters", lambda eigvals: [np.arange(len(eigvals))]
    )
    with pytest.raises(NoConvergence):
        wedderburn_decompose(block_presentation(BlockAlgebra((2, 1))))
