"""Seeded random sources.

All randomness goes through :func:`make_generator`, which returns a numpy
``Generator`` driven by the Philox 4x64 counter-based bit generator keyed by a
``SeedSequence`` built from the seed and a tuple of stream indices (restart
number, outer iteration, ...). Philox output is specified bit-for-bit, so
runs agree across platforms, and every caller owns its own stream: there is
no global generator state.
"""
# Installed
import numpy as np

# Local
from quantumness.errors import InvalidInputError


def make_generator(seed, *stream):
    """Returns a Philox-backed generator for ``seed`` and a stream path.

    Parameters
    ----------
    seed : int
        Non-negative seed.
    *stream : int
        Non-negative stream indices, e.g. a restart number.

    Returns
    -------
    numpy.random.Generator
    """
    entropy = [int(seed), *(int(index) for index in stream)]
    if any(value < 0 for value in entropy):
        raise InvalidInputError(f"Seed and stream indices must be >= 0, got {entropy}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def haar_state(dim, rng):
    """Haar-distributed unit vector: a normalized complex Gaussian vector."""
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vector / np.linalg.norm(vector)


def haar_unitary(dim, rng):
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix.

    The phases of the diagonal of R are moved into Q so the distribution is
    exactly Haar.
    """
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(ginibre)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def haar_isometry(rows, columns, rng):
    """``rows`` x ``columns`` matrix with orthonormal columns (rows >= columns)."""
    return haar_unitary(rows, rng)[:, :columns]
