"""Cyclic Jacobi eigensolver for small dense Hermitian matrices.

Each rotation first removes the phase of the pivot element, which reduces the
2 x 2 pivot block to a real symmetric one, and then applies the classical real
Jacobi rotation to it. Sweeps visit every (p, q) pair in row order and stop
once the Frobenius norm of the off-diagonal part drops below
``OFF_DIAGONAL_TOL`` (relative to the matrix norm when that exceeds one).

:func:`jacobi_eigh_stack` applies the same rotations to a whole ``B x d x d``
stack at once; a single matrix is a stack of one.
"""
# Standard
import logging

# Installed
import numpy as np

# Local
from quantumness.errors import InvalidInputError

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOL = 1e-14
MAX_SWEEPS = 100
# pivots smaller than this are already far below the stopping threshold
_NEGLIGIBLE_PIVOT = 1e-150


def off_diagonal_norm(matrices):
    """Frobenius norm of the off-diagonal part of a matrix or of each in a stack."""
    matrices = np.asarray(matrices)
    dim = matrices.shape[-1]
    off = matrices * (1.0 - np.eye(dim))
    return np.linalg.norm(off, axis=(-2, -1))


def _rotate(a, v, p, q):
    pivot = a[:, p, q]
    magnitude = np.abs(pivot)
    active = magnitude >= _NEGLIGIBLE_PIVOT
    safe = np.where(active, magnitude, 1.0)
    phase = np.where(active, pivot / safe, 1.0)
    tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
    sign = np.where(tau >= 0.0, 1.0, -1.0)
    t = np.where(active, sign / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    rotation = np.empty((a.shape[0], 2, 2), dtype=complex)
    rotation[:, 0, 0] = c
    rotation[:, 0, 1] = s
    rotation[:, 1, 0] = -s * phase.conj()
    rotation[:, 1, 1] = c * phase.conj()

    pair = [p, q]
    a[:, :, pair] = a[:, :, pair] @ rotation
    a[:, pair, :] = np.swapaxes(rotation.conj(), -1, -2) @ a[:, pair, :]
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, q, q] = a[:, q, q].real
    v[:, :, pair] = v[:, :, pair] @ rotation


def _fix_phases(vectors):
    largest = np.argmax(np.abs(vectors), axis=1)[:, np.newaxis, :]
    pivot = np.take_along_axis(vectors, largest, axis=1)
    magnitude = np.abs(pivot)
    vectors = vectors * (magnitude / pivot)
    np.put_along_axis(vectors, largest, magnitude, axis=1)
    return vectors


def _validated_stack(matrices):
    a = np.array(matrices, dtype=complex)
    if a.ndim != 3 or a.shape[1] != a.shape[2] or a.shape[1] == 0:
        raise InvalidInputError(
            f"Expected a stack of non-empty square matrices, got {a.shape}"
        )
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("Matrix has non-finite entries")
    return 0.5 * (a + np.swapaxes(a.conj(), -1, -2))


def jacobi_eigh_stack(matrices, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Diagonalize every matrix of a ``B x d x d`` Hermitian stack.

    Every matrix gets the same sequence of (p, q) rotations; sweeps continue
    until each matrix meets its own stopping threshold.

    Returns
    -------
    eigenvalues : numpy.ndarray
        ``B x d``, descending per matrix; equal eigenvalues keep the order of
        their diagonal positions.
    eigenvectors : numpy.ndarray
        ``B x d x d``, eigenvectors as columns, phase-fixed as in
        :func:`jacobi_eigh`.
    sweeps : int
        Number of sweeps performed.
    """
    a = _validated_stack(matrices)
    count, n = a.shape[0], a.shape[1]
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    if count == 0:
        return np.zeros((0, n)), v, 0
    threshold = tol * np.maximum(1.0, np.linalg.norm(a, axis=(-2, -1)))

    sweeps = 0
    while n > 1 and np.any(off_diagonal_norm(a) >= threshold):
        if sweeps >= max_sweeps:
            logger.warning(
                f"Jacobi stopped after {sweeps} sweeps with off-diagonal norm "
                f"{float(np.max(off_diagonal_norm(a))):.3e}"
            )
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
        sweeps += 1

    eigenvalues = np.diagonal(a, axis1=1, axis2=2).real.copy()
    order = np.argsort(-eigenvalues, axis=1, kind="stable")
    eigenvalues = np.take_along_axis(eigenvalues, order, axis=1)
    vectors = np.take_along_axis(v, order[:, np.newaxis, :], axis=2)
    return eigenvalues, _fix_phases(vectors), sweeps


def jacobi_eigh(matrix, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix; only its Hermitian part is used.
    tol : float, optional
        Stopping threshold for the off-diagonal Frobenius norm.
    max_sweeps : int, optional
        Upper bound on the number of full sweeps.

    Returns
    -------
    eigenvalues : numpy.ndarray
        Real eigenvalues in descending order. Equal eigenvalues keep the
        order of their diagonal positions.
    eigenvectors : numpy.ndarray
        Orthonormal eigenvectors as columns, each phase-fixed so that its
        largest-magnitude component (first one on ties) is real and
        non-negative.
    sweeps : int
        Number of sweeps performed.

    Raises
    ------
    InvalidInputError
        If the matrix is not square or has non-finite entries.
    """
    a = np.asarray(matrix)
    if a.ndim != 2:
        raise InvalidInputError(f"Expected a non-empty square matrix, got {a.shape}")
    eigenvalues, eigenvectors, sweeps = jacobi_eigh_stack(
        a[np.newaxis], tol, max_sweeps
    )
    return eigenvalues[0], eigenvectors[0], sweeps
