"""Brute-force reference value of the qubit accessible fidelity.

Shares no code with the seesaw: projective measurements are scanned in Bloch
form, where for E = (I + n.sigma)/2 each M_b = a I + b.sigma has
lambda_1 = a + |b|, and the random measurements are refined by a batched,
undamped seesaw built on the closed-form 2 x 2 eigensolver below.
"""
# Standard
import logging
import math

# Installed
import numpy as np

# Local
from quantumness.ensemble_utils import Ensemble, make_generator
from quantumness.errors import InvalidInputError
from quantumness.utils.config import load_config

logger = logging.getLogger(__name__)

_ORACLE = load_config()["oracle"]
DEFAULT_RESOLUTION = float(_ORACLE["resolution"])
DEFAULT_SAMPLES = int(_ORACLE["samples"])
DEFAULT_REFINE_STEPS = int(_ORACLE["refine_steps"])
DIRECTION_CHUNK = 200_000
SAMPLE_CHUNK = 5_000
# the oracle stream is kept apart from the seesaw restart streams
ORACLE_STREAM = 7_919
_DEGENERATE = 1e-150


def _direction_chunks(resolution, chunk_size=DIRECTION_CHUNK):
    """Unit vectors covering the upper Bloch hemisphere at angular ``resolution``.

    Polar angles step by ``resolution``; each ring gets enough azimuths that
    neighbours are about ``resolution`` apart.
    """
    count = int(math.ceil((0.5 * math.pi) / resolution))
    thetas = np.linspace(0.0, 0.5 * math.pi, count + 1)
    pending = []
    size = 0
    for theta in thetas:
        ring = max(1, int(math.ceil(2.0 * math.pi * math.sin(theta) / resolution)))
        phis = 2.0 * math.pi * np.arange(ring) / ring
        pending.append(
            np.column_stack(
                [
                    math.sin(theta) * np.cos(phis),
                    math.sin(theta) * np.sin(phis),
                    np.full(ring, math.cos(theta)),
                ]
            )
        )
        size += ring
        if size >= chunk_size:
            yield np.concatenate(pending)
            pending, size = [], 0
    if pending:
        yield np.concatenate(pending)


def projective_fidelity(bloch, priors, directions):
    """Achievable fidelity of {(I + n.sigma)/2, (I - n.sigma)/2} for each row n."""
    dots = directions @ bloch.T
    total = np.zeros(directions.shape[0])
    for sign in (1.0, -1.0):
        weights = 0.5 * priors * (1.0 + sign * dots)
        scalar = weights.sum(axis=1)
        vector = weights @ bloch
        total += 0.5 * (scalar + np.linalg.norm(vector, axis=1))
    return total


def _random_rank_one_batch(count, outcomes, rng):
    ginibre = rng.standard_normal((count, outcomes, 2)) + 1j * rng.standard_normal(
        (count, outcomes, 2)
    )
    isometry, _ = np.linalg.qr(ginibre)
    rows = isometry.conj()
    return np.einsum("bka,bkc->bkac", rows, rows.conj())


def qubit_eigh(matrices):
    """Closed-form eigendecomposition of a stack of 2 x 2 Hermitian matrices.

    For ``[[a, b], [b*, c]]`` the eigenvalues are ``m -+ r`` with
    ``m = (a + c) / 2`` and ``r = sqrt(((a - c) / 2)^2 + |b|^2)``.

    Returns
    -------
    eigenvalues : numpy.ndarray
        ``... x 2``, ascending.
    eigenvectors : numpy.ndarray
        ``... x 2 x 2``, unit eigenvectors as columns in the same order.
    """
    a = matrices[..., 0, 0].real
    c = matrices[..., 1, 1].real
    b = matrices[..., 0, 1]
    mean = 0.5 * (a + c)
    half = 0.5 * (a - c)
    radius = np.hypot(half, np.abs(b))
    # (h + r, b*) and (b, r - h) both solve the top row; pick the one away from 0
    upper = half >= 0.0
    first = np.where(upper, half + radius, b)
    second = np.where(upper, b.conj(), radius - half)
    norm = np.sqrt(np.abs(first) ** 2 + np.abs(second) ** 2)
    degenerate = norm <= _DEGENERATE
    safe = np.where(degenerate, 1.0, norm)
    first = np.where(degenerate, 1.0, first / safe)
    second = np.where(degenerate, 0.0, second / safe)

    eigenvalues = np.stack([mean - radius, mean + radius], axis=-1)
    eigenvectors = np.empty(matrices.shape, dtype=complex)
    eigenvectors[..., 0, 1] = first
    eigenvectors[..., 1, 1] = second
    eigenvectors[..., 0, 0] = -second.conj()
    eigenvectors[..., 1, 0] = first.conj()
    return eigenvalues, eigenvectors


def _batch_inv_sqrt(matrices, tol=1e-12):
    eigenvalues, eigenvectors = qubit_eigh(matrices)
    support = eigenvalues > tol
    scale = np.where(support, 1.0 / np.sqrt(np.where(support, eigenvalues, 1.0)), 0.0)
    inverse = (eigenvectors * scale[..., np.newaxis, :]) @ np.conj(
        np.swapaxes(eigenvectors, -1, -2)
    )
    projector = (eigenvectors * support[..., np.newaxis, :]) @ np.conj(
        np.swapaxes(eigenvectors, -1, -2)
    )
    return inverse, projector


def refine_batch(vectors, priors, elements, steps):
    """Best achievable fidelity seen along ``steps`` undamped seesaw updates.

    Parameters
    ----------
    vectors : numpy.ndarray
        ``n x 2`` state amplitudes.
    priors : numpy.ndarray
    elements : numpy.ndarray
        ``B x K x 2 x 2`` batch of measurements.
    steps : int

    Returns
    -------
    numpy.ndarray
        Length ``B``; every entry is the fidelity of a valid measurement.
    """
    projectors = np.einsum("ia,ic->iac", vectors, vectors.conj())
    outcomes = elements.shape[1]
    best = np.full(elements.shape[0], -np.inf)
    for step in range(steps + 1):
        clicks = np.einsum("ia,bkac,ic->bki", vectors.conj(), elements, vectors).real
        conditional = np.einsum("bki,i,iac->bkac", clicks, priors, projectors)
        eigenvalues, eigenvectors = qubit_eigh(conditional)
        best = np.maximum(best, eigenvalues[..., -1].sum(axis=1))
        if step == steps:
            break
        responses = eigenvectors[..., -1]
        weights = np.abs(np.einsum("bka,ia->bki", responses.conj(), vectors)) ** 2
        linear = np.einsum("bki,i,iac->bkac", weights, priors, projectors)
        sandwiched = linear @ elements @ linear
        inverse, support = _batch_inv_sqrt(sandwiched.sum(axis=1))
        elements = inverse[:, np.newaxis] @ sandwiched @ inverse[:, np.newaxis]
        elements += ((np.eye(2) - support) / outcomes)[:, np.newaxis]
    return best


def brute_force_qubit_fidelity(
    ensemble,
    resolution=DEFAULT_RESOLUTION,
    samples=DEFAULT_SAMPLES,
    refine_steps=DEFAULT_REFINE_STEPS,
    seed=0,
):
    """Reference lower bound on the accessible fidelity of a qubit ensemble.

    Parameters
    ----------
    ensemble : Ensemble
        Must have dimension 2.
    resolution : float, optional
        Angular spacing of the grid of projective measurements.
    samples : int, optional
        Number of random measurements with 2 to 4 rank-one outcomes.
    refine_steps : int, optional
        Seesaw updates applied to each random measurement.
    seed : int, optional

    Returns
    -------
    float
        Maximum achievable fidelity over the grid and the refined samples.

    Raises
    ------
    InvalidInputError
        If the ensemble is not a qubit ensemble or an argument is out of range.
    """
    ensemble = Ensemble.validate_ensemble(ensemble)
    if ensemble.dim != 2:
        raise InvalidInputError(
            f"The brute-force oracle handles qubits only, got dimension {ensemble.dim}"
        )
    if not 0.0 < resolution <= 0.5:
        raise InvalidInputError(f"Resolution must lie in (0, 0.5], got {resolution}")
    if samples < 0 or refine_steps < 0:
        raise InvalidInputError("samples and refine_steps must be non-negative")

    bloch = np.array([state.bloch_vector() for state in ensemble.states])
    priors = ensemble.priors
    grid_best = 0.0
    directions = 0
    for chunk in _direction_chunks(resolution):
        values = projective_fidelity(bloch, priors, chunk)
        grid_best = max(grid_best, float(np.max(values)))
        directions += chunk.shape[0]

    rng = make_generator(seed, ORACLE_STREAM)
    counts = rng.integers(2, 5, size=samples)
    sample_best = 0.0
    for outcomes in (2, 3, 4):
        remaining = int(np.sum(counts == outcomes))
        while remaining > 0:
            batch = min(remaining, SAMPLE_CHUNK)
            elements = _random_rank_one_batch(batch, outcomes, rng)
            values = refine_batch(ensemble.vectors, priors, elements, refine_steps)
            sample_best = max(sample_best, float(np.max(values)))
            remaining -= batch

    logger.info(
        f"Oracle: grid of {directions} directions gives {grid_best:.12g}, "
        f"{samples} refined samples give {sample_best:.12g}"
    )
    return min(max(grid_best, sample_best), 1.0)
