"""Constructors for the standard families of ensembles."""
# Standard
import math

# Installed
import numpy as np
from scipy.optimize import brentq

# Local
from quantumness.ensemble_utils.ensemble import Ensemble
from quantumness.ensemble_utils.pure_state import PureState
from quantumness.ensemble_utils.rng import haar_state, make_generator
from quantumness.errors import InvalidInputError

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
MIN_RING = 3


def _check_unit_interval(name, value):
    if not (0.0 <= value <= 1.0) or math.isnan(value):
        raise InvalidInputError(f"{name} must lie in [0, 1], got {value}")


def two_state_vectors(x):
    """Canonical real pair (cos(t/2), +-sin(t/2)) with cos t = x."""
    _check_unit_interval("x", x)
    half_angle = 0.5 * math.acos(x)
    return (
        np.array([math.cos(half_angle), math.sin(half_angle)], dtype=complex),
        np.array([math.cos(half_angle), -math.sin(half_angle)], dtype=complex),
    )


def make_two_state_ensemble(x, prior0=0.5):
    """Two qubit states with overlap |<psi_0|psi_1>| = x.

    The states have real amplitudes, ``(cos(t/2), sin(t/2))`` and
    ``(cos(t/2), -sin(t/2))`` with ``cos t = x``, so they sit symmetrically
    about the first basis vector.

    Parameters
    ----------
    x : float
        Overlap in [0, 1].
    prior0 : float, optional
        Prior of the first state, in [0, 1]. The second gets ``1 - prior0``.

    Returns
    -------
    Ensemble
    """
    _check_unit_interval("prior0", prior0)
    first, second = two_state_vectors(x)
    states = [PureState.normalized(first), PureState.normalized(second)]
    return Ensemble([prior0, 1.0 - prior0], states)


def _polyhedron(n):
    if n == 2:
        vertices = [(0, 0, 1), (0, 0, -1)]
    elif n == 4:
        vertices = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif n == 6:
        vertices = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    elif n == 8:
        vertices = [
            (sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)
        ]
    elif n == 12:
        g = GOLDEN_RATIO
        vertices = (
            [(0, sa, sb * g) for sa in (1, -1) for sb in (1, -1)]
            + [(sa, sb * g, 0) for sa in (1, -1) for sb in (1, -1)]
            + [(sa * g, 0, sb) for sa in (1, -1) for sb in (1, -1)]
        )
    else:
        return None
    vertices = np.array(vertices, dtype=float)
    return vertices / np.linalg.norm(vertices, axis=1, keepdims=True)


def fibonacci_sphere(n):
    """``n`` well-spread unit vectors on the sphere (Fibonacci lattice)."""
    k = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * k + 1.0) / n
    radius = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    azimuth = GOLDEN_ANGLE * k
    return np.column_stack([radius * np.cos(azimuth), radius * np.sin(azimuth), z])


def _ring_sizes(count):
    rings = max(1, min(count // MIN_RING, int(round(math.sqrt(count)))))
    sizes = np.full(rings, count // rings)
    sizes[: count % rings] += 1
    return sizes


def _ring_heights(sizes):
    """Heights z_k^gamma in (0, 1) whose size-weighted mean square is 1/3."""
    base = (np.arange(len(sizes)) + 0.5) / len(sizes)
    weights = sizes / sizes.sum()

    def excess(gamma):
        return float(np.dot(weights, base ** (2.0 * gamma))) - 1.0 / 3.0

    upper = 1.0 + math.log(3.0) / (2.0 * -math.log(base[-1]))
    gamma = brentq(excess, 1e-12, upper, xtol=1e-15, rtol=1e-15)
    return base**gamma


def antipodal_ring_design(n):
    """``n`` unit vectors with zero mean and second moment exactly I/3.

    Half of the points sit on rings of at least three equally spaced azimuths
    in the upper hemisphere, each ring turned by the golden angle against the
    previous one; the other half are their antipodes. Equal spacing cancels
    the in-plane moments of every ring, so only the heights matter, and these
    are bent by a common power so that the mean of z^2 is 1/3.

    Parameters
    ----------
    n : int
        Even, at least ``2 * MIN_RING``.

    Returns
    -------
    numpy.ndarray
        ``n x 3``; row ``k + n/2`` is the antipode of row ``k``.
    """
    if n % 2 or n < 2 * MIN_RING:
        raise InvalidInputError(
            f"An antipodal ring design needs an even n >= {2 * MIN_RING}, got {n}"
        )
    sizes = _ring_sizes(n // 2)
    heights = _ring_heights(sizes)
    upper = []
    for ring, (size, z) in enumerate(zip(sizes, heights)):
        azimuth = GOLDEN_ANGLE * ring + 2.0 * math.pi * np.arange(size) / size
        radius = math.sqrt(1.0 - z * z)
        upper.append(
            np.column_stack(
                [radius * np.cos(azimuth), radius * np.sin(azimuth), np.full(size, z)]
            )
        )
    upper = np.concatenate(upper)
    return np.concatenate([upper, -upper])


def bloch_constellation(n):
    """Bloch directions used by :func:`symmetric_qubit_ensemble`."""
    if n < 1:
        raise InvalidInputError(f"Need at least one state, got {n}")
    vertices = _polyhedron(n)
    if vertices is not None:
        return vertices
    if n % 2 == 0 and n >= 2 * MIN_RING:
        return antipodal_ring_design(n)
    return fibonacci_sphere(n)


def symmetric_qubit_ensemble(n):
    """Equiprobable qubit states spread over the Bloch sphere.

    n in {2, 4, 6, 8, 12} places the states on the antipodal pair,
    tetrahedron, octahedron, cube and icosahedron. Other even n >= 6 use
    :func:`antipodal_ring_design`, so every even n except 2 gives a set whose
    Bloch vectors average to zero with second moment I/3. Odd n use the
    Fibonacci lattice.

    Parameters
    ----------
    n : int
        Number of states, at least 1.

    Returns
    -------
    Ensemble
    """
    directions = bloch_constellation(n)
    return Ensemble.uniform([PureState.from_bloch(r) for r in directions])


def random_ensemble(dim, n, seed, uniform_priors=True):
    """Haar-random pure states with uniform or Dirichlet(1) priors.

    Parameters
    ----------
    dim : int
        Dimension, at least 1.
    n : int
        Number of states, at least 1.
    seed : int
        Seed for :func:`make_generator`; identical seeds give identical
        ensembles bit for bit.
    uniform_priors : bool, optional
        Equal priors when True, flat Dirichlet draws otherwise.

    Returns
    -------
    Ensemble
    """
    if dim < 1 or n < 1:
        raise InvalidInputError(f"Need dim >= 1 and n >= 1, got dim={dim}, n={n}")
    rng = make_generator(seed)
    states = [PureState.normalized(haar_state(dim, rng)) for _ in range(n)]
    if uniform_priors:
        return Ensemble.uniform(states)
    priors = rng.dirichlet(np.ones(n))
    return Ensemble(priors / priors.sum(), states)


def orthonormal_basis_ensemble(dim, priors=None):
    """The computational basis of dimension ``dim`` with the given priors."""
    states = [PureState.basis(dim, k) for k in range(dim)]
    if priors is None:
        return Ensemble.uniform(states)
    return Ensemble(priors, states)
