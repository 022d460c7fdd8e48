"""Spectral operations on Hermitian operators.

The ``*_array`` variants work on raw numpy matrices and are what the solvers
call inside their loops; the public operations wrap them for
:class:`HermitianOperator` inputs.
"""
# Installed
import numpy as np

# Local
from quantumness.errors import NotPSDError
from quantumness.linalg_utils.hermitian_operator import HermitianOperator
from quantumness.linalg_utils.jacobi import jacobi_eigh, jacobi_eigh_stack
from quantumness.utils.config import tolerance

SUPPORT_TOL = tolerance("support_tol")


def top_eigenpair_array(matrix):
    """Returns (largest eigenvalue, its unit eigenvector) of a Hermitian array."""
    eigenvalues, eigenvectors, _ = jacobi_eigh(matrix)
    return float(eigenvalues[0]), eigenvectors[:, 0]


def top_eigenpairs_array(matrices):
    """Largest eigenvalue and eigenvector of every matrix in a ``B x d x d`` stack.

    Returns
    -------
    eigenvalues : numpy.ndarray
        Length ``B``.
    eigenvectors : numpy.ndarray
        ``B x d``, with the phase and tie conventions of :func:`top_eigenpair`.
    """
    eigenvalues, eigenvectors, _ = jacobi_eigh_stack(matrices)
    return eigenvalues[:, 0], eigenvectors[:, :, 0]


def inv_sqrt_psd_array(matrix, support_tol=SUPPORT_TOL):
    """Pseudo-inverse square root of a PSD array, zero off its support."""
    eigenvalues, eigenvectors, _ = jacobi_eigh(matrix)
    if eigenvalues[-1] < -support_tol:
        raise NotPSDError(
            f"Operator has eigenvalue {eigenvalues[-1]:.3e} below -{support_tol:.1e}"
        )
    scale = np.zeros_like(eigenvalues)
    support = eigenvalues > support_tol
    scale[support] = 1.0 / np.sqrt(eigenvalues[support])
    return (eigenvectors * scale) @ eigenvectors.conj().T


def top_eigenpair(operator):
    """Largest eigenvalue of a Hermitian operator and a matching eigenvector.

    Parameters
    ----------
    operator : HermitianOperator

    Returns
    -------
    eigenvalue : float
        lambda_1, the maximum of <a|H|a> over unit vectors.
    eigenvector : numpy.ndarray
        Unit eigenvector whose largest-magnitude component is real and
        non-negative. Among equal top eigenvalues the one with the smallest
        diagonal index is chosen.
    """
    operator = HermitianOperator.validate_operator(operator)
    return top_eigenpair_array(operator.matrix)


def eigendecompose(operator):
    """Full eigendecomposition of a Hermitian operator.

    Parameters
    ----------
    operator : HermitianOperator

    Returns
    -------
    eigenvalues : numpy.ndarray
        Real eigenvalues in descending order.
    eigenvectors : list of numpy.ndarray
        Orthonormal eigenvectors matching ``eigenvalues``.
    """
    operator = HermitianOperator.validate_operator(operator)
    eigenvalues, eigenvectors, _ = jacobi_eigh(operator.matrix)
    return eigenvalues, [eigenvectors[:, k].copy() for k in range(operator.dim)]


def inv_sqrt_psd(operator, support_tol=SUPPORT_TOL):
    """Pseudo-inverse square root of a PSD operator.

    Eigenvalues at or below ``support_tol`` are treated as zero, so that
    ``B A B`` is the projector onto the support of ``A``.

    Parameters
    ----------
    operator : HermitianOperator
    support_tol : float, optional

    Returns
    -------
    HermitianOperator

    Raises
    ------
    NotPSDError
        If ``operator`` has an eigenvalue below ``-support_tol``.
    """
    operator = HermitianOperator.validate_operator(operator)
    return HermitianOperator(inv_sqrt_psd_array(operator.matrix, support_tol))


def is_psd(operator, tol=SUPPORT_TOL):
    """Returns whether the smallest eigenvalue is at least ``-tol``."""
    operator = HermitianOperator.validate_operator(operator)
    return bool(min_eigenvalue_array(operator.matrix) >= -tol)


def min_eigenvalue_array(matrix):
    """Smallest eigenvalue of a Hermitian array."""
    eigenvalues, _, _ = jacobi_eigh(matrix)
    return float(eigenvalues[-1])
