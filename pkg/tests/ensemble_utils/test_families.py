import itertools
import math

import numpy as np
import pytest

from quantumness.ensemble_utils import (
    antipodal_ring_design,
    bloch_constellation,
    make_two_state_ensemble,
    orthonormal_basis_ensemble,
    random_ensemble,
    symmetric_qubit_ensemble,
)
from quantumness.errors import InvalidInputError


def test_two_state_overlap_grid():
    """
    test that the canonical pair has overlap x over a 100-point grid.
    """
    for x in np.linspace(0.0, 1.0, 100):
        ensemble = make_two_state_ensemble(float(x), 0.3)
        overlap = abs(np.vdot(ensemble.vectors[0], ensemble.vectors[1]))
        assert overlap == pytest.approx(x, abs=1e-12)
        np.testing.assert_allclose(ensemble.priors, [0.3, 0.7])


@pytest.mark.parametrize(("x", "prior"), [(1.5, 0.5), (-0.1, 0.5), (0.5, 1.2)])
def test_two_state_rejects_out_of_range(x, prior):
    """
    test that the overlap and the prior must lie in [0, 1].
    """
    with pytest.raises(InvalidInputError):
        make_two_state_ensemble(x, prior)


def test_two_state_endpoints():
    """
    test that x = 0 gives orthogonal and x = 1 gives identical states.
    """
    orthogonal = make_two_state_ensemble(0.0)
    identical = make_two_state_ensemble(1.0)

    assert orthogonal.states[0].overlap(orthogonal.states[1]) == pytest.approx(0.0)
    assert identical.states[0].overlap(identical.states[1]) == pytest.approx(1.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8, 12, 30, 100])
def test_symmetric_constellation(n):
    """
    test that symmetric sets have unit Bloch vectors, equal priors and no
    repeated directions.
    """
    ## Act ##
    ensemble = symmetric_qubit_ensemble(n)
    bloch = np.array([state.bloch_vector() for state in ensemble.states])

    ## Assert ##
    assert len(ensemble) == n
    np.testing.assert_allclose(np.linalg.norm(bloch, axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(ensemble.priors, 1.0 / n)
    for a, b in itertools.combinations(range(n), 2):
        assert np.linalg.norm(bloch[a] - bloch[b]) > 1e-6


def test_symmetric_pair_is_antipodal():
    """
    test that two symmetric states are orthogonal.
    """
    ensemble = symmetric_qubit_ensemble(2)

    overlap = ensemble.states[0].overlap(ensemble.states[1])
    assert overlap == pytest.approx(0.0, abs=1e-12)


def test_tetrahedron_overlaps():
    """
    test that tetrahedron states have squared overlaps of 1/3.
    """
    ensemble = symmetric_qubit_ensemble(4)

    for a, b in itertools.combinations(range(4), 2):
        overlap = ensemble.states[a].overlap(ensemble.states[b])
        assert overlap == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_constellation_rejects_empty():
    """
    test that a constellation needs at least one direction.
    """
    with pytest.raises(InvalidInputError):
        bloch_constellation(0)


def test_random_ensemble_is_seeded():
    """
    test that equal seeds give identical ensembles and Dirichlet priors sum to 1.
    """
    ## Act ##
    first = random_ensemble(3, 5, 7, uniform_priors=False)
    second = random_ensemble(3, 5, 7, uniform_priors=False)
    other = random_ensemble(3, 5, 8, uniform_priors=False)

    ## Assert ##
    assert np.array_equal(first.vectors, second.vectors)
    assert np.array_equal(first.priors, second.priors)
    assert first.digest() != other.digest()
    assert math.isclose(float(np.sum(first.priors)), 1.0, abs_tol=1e-12)


def test_basis_ensemble():
    """
    test that the basis ensemble holds orthonormal states.
    """
    ensemble = orthonormal_basis_ensemble(3)

    np.testing.assert_allclose(ensemble.vectors, np.eye(3))
    np.testing.assert_allclose(ensemble.priors, 1.0 / 3.0)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12, 14, 30, 100])
def test_even_constellations_have_isotropic_second_moment(n):
    """
    test that even symmetric sets beyond the pair average to the zero Bloch
    vector with second moment I/3.
    """
    ## Act ##
    bloch = bloch_constellation(n)

    ## Assert ##
    np.testing.assert_allclose(bloch.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(bloch.T @ bloch / n, np.eye(3) / 3.0, atol=1e-12)


def test_ring_design_layout():
    """
    test that the second half of a ring design mirrors the first through the
    origin and that the first half lies strictly above the equator.
    """
    ## Act ##
    points = antipodal_ring_design(30)

    ## Assert ##
    np.testing.assert_allclose(points[15:], -points[:15], atol=0.0)
    assert np.all(points[:15, 2] > 0.0)
    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 11])
def test_ring_design_rejects_odd_or_small(n):
    """
    test that a ring design needs an even count of at least six points.
    """
    with pytest.raises(InvalidInputError):
        antipodal_ring_design(n)
