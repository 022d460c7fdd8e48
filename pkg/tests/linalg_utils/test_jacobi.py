import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantumness.errors import InvalidInputError
from quantumness.linalg_utils import jacobi_eigh, jacobi_eigh_stack


def _random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    matrix = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (matrix + matrix.conj().T)


@settings(max_examples=40, deadline=None)
@given(dim=st.integers(min_value=1, max_value=8), seed=st.integers(0, 2**32 - 1))
def test_jacobi_matches_numpy(dim, seed):
    """
    test that the Jacobi eigenvalues agree with numpy's and the
    decomposition reconstructs the matrix.
    """
    ## Arrange ##
    matrix = _random_hermitian(dim, seed)

    ## Act ##
    eigenvalues, eigenvectors, _ = jacobi_eigh(matrix)

    ## Assert ##
    expected = np.sort(np.linalg.eigvalsh(matrix))[::-1]
    np.testing.assert_allclose(eigenvalues, expected, atol=1e-10)
    reconstructed = (eigenvectors * eigenvalues) @ eigenvectors.conj().T
    np.testing.assert_allclose(reconstructed, matrix, atol=1e-10)
    np.testing.assert_allclose(
        eigenvectors.conj().T @ eigenvectors, np.eye(dim), atol=1e-10
    )


def test_jacobi_descending_order():
    """
    test that eigenvalues come back in descending order.
    """
    eigenvalues, _, sweeps = jacobi_eigh(np.diag([0.2, 0.8, 0.5]))

    np.testing.assert_allclose(eigenvalues, [0.8, 0.5, 0.2])
    assert sweeps == 0


def test_jacobi_phase_convention():
    """
    test that the largest component of every eigenvector is real and
    non-negative.
    """
    ## Arrange ##
    matrix = _random_hermitian(4, 11)

    ## Act ##
    _, eigenvectors, _ = jacobi_eigh(matrix)

    ## Assert ##
    for k in range(4):
        column = eigenvectors[:, k]
        largest = column[np.argmax(np.abs(column))]
        assert abs(largest.imag) < 1e-12
        assert largest.real > 0.0


@pytest.mark.parametrize(
    "matrix", [np.zeros((2, 3)), np.zeros((0, 0)), np.array([[np.nan]])]
)
def test_jacobi_rejects_bad_input(matrix):
    """
    test that non-square, empty and non-finite matrices raise.
    """
    with pytest.raises(InvalidInputError):
        jacobi_eigh(matrix)


def test_stack_matches_single_matrices():
    """
    test that diagonalizing a stack gives each matrix's own decomposition,
    degenerate and already diagonal members included.
    """
    ## Arrange ##
    stack = np.array(
        [_random_hermitian(4, seed) for seed in range(6)]
        + [np.eye(4), np.diag([0.1, 0.4, 0.4, 0.2]).astype(complex)]
    )

    ## Act ##
    eigenvalues, eigenvectors, _ = jacobi_eigh_stack(stack)

    ## Assert ##
    assert eigenvalues.shape == (8, 4)
    assert eigenvectors.shape == (8, 4, 4)
    for matrix, values, vectors in zip(stack, eigenvalues, eigenvectors):
        single_values, _, _ = jacobi_eigh(matrix)
        np.testing.assert_allclose(values, single_values, atol=1e-12)
        reconstructed = (vectors * values) @ vectors.conj().T
        np.testing.assert_allclose(reconstructed, matrix, atol=1e-10)
        largest = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(4)]
        np.testing.assert_allclose(largest.imag, 0.0, atol=1e-12)
        assert np.all(largest.real > 0.0)


def test_stack_of_sixteen_dimensional_operators():
    """
    test that a stack of 256 operators of dimension 16 is diagonalized in one
    call.
    """
    ## Arrange ##
    stack = np.array([_random_hermitian(16, seed) for seed in range(256)])

    ## Act ##
    eigenvalues, _, sweeps = jacobi_eigh_stack(stack)

    ## Assert ##
    expected = np.sort(np.linalg.eigvalsh(stack), axis=1)[:, ::-1]
    np.testing.assert_allclose(eigenvalues, expected, atol=1e-9)
    assert sweeps < 20


def test_empty_stack():
    """
    test that a stack of zero matrices returns empty arrays.
    """
    eigenvalues, eigenvectors, sweeps = jacobi_eigh_stack(np.zeros((0, 3, 3)))

    assert eigenvalues.shape == (0, 3)
    assert eigenvectors.shape == (0, 3, 3)
    assert sweeps == 0
