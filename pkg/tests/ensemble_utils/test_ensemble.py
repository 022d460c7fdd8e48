import numpy as np
import pytest

from quantumness.ensemble_utils import Ensemble, PureState, haar_unitary, make_generator
from quantumness.errors import DimensionMismatchError, InvalidInputError


@pytest.fixture()
def states():
    return [PureState.basis(2, 0), PureState.normalized([1.0, 1.0])]


def test_ensemble_attributes(states):
    """
    test that an ensemble exposes its dimension, priors and vectors.
    """
    ## Act ##
    ensemble = Ensemble([0.25, 0.75], states)

    ## Assert ##
    assert ensemble.dim == 2
    assert len(ensemble) == 2
    np.testing.assert_allclose(ensemble.priors, [0.25, 0.75])
    assert ensemble.vectors.shape == (2, 2)
    assert ensemble.items()[1] == (0.75, states[1])


@pytest.mark.parametrize(
    "priors", [[0.5, 0.4], [1.5, -0.5], [0.5], [np.nan, 0.5]]
)
def test_ensemble_rejects_bad_priors(states, priors):
    """
    test that priors must be finite, non-negative, aligned and sum to 1.
    """
    with pytest.raises(InvalidInputError):
        Ensemble(priors, states)


def test_ensemble_rejects_mixed_dimensions():
    """
    test that states of different dimension cannot share an ensemble.
    """
    with pytest.raises(DimensionMismatchError):
        Ensemble.uniform([PureState.basis(2, 0), PureState.basis(3, 0)])


def test_ensemble_rejects_empty():
    """
    test that an ensemble needs a state.
    """
    with pytest.raises(InvalidInputError):
        Ensemble.uniform([])


def test_ensemble_rejects_non_states():
    """
    test that raw vectors are not accepted as states.
    """
    with pytest.raises(TypeError):
        Ensemble([1.0], [np.array([1.0, 0.0])])


def test_density_operator(states):
    """
    test that rho has unit trace and matches the weighted projectors.
    """
    ## Arrange ##
    ensemble = Ensemble([0.25, 0.75], states)

    ## Act ##
    rho = ensemble.density_operator()

    ## Assert ##
    expected = 0.25 * np.diag([1.0, 0.0]) + 0.75 * 0.5 * np.ones((2, 2))
    np.testing.assert_allclose(rho.matrix, expected, atol=1e-12)
    assert rho.trace() == pytest.approx(1.0)


def test_conjugate_preserves_overlaps(states):
    """
    test that rotating every state keeps their overlaps.
    """
    ## Arrange ##
    ensemble = Ensemble.uniform(states)
    unitary = haar_unitary(2, make_generator(5))

    ## Act ##
    rotated = ensemble.conjugate_by(unitary)

    ## Assert ##
    assert rotated.states[0].overlap(rotated.states[1]) == pytest.approx(0.5)
    with pytest.raises(DimensionMismatchError):
        ensemble.conjugate_by(np.eye(3))


def test_digest_is_stable(states):
    """
    test that equal ensembles share a digest and different priors do not.
    """
    first = Ensemble([0.25, 0.75], states)
    second = Ensemble([0.25, 0.75], list(states))
    third = first.with_priors([0.75, 0.25])

    assert first.digest() == second.digest()
    assert first.digest() != third.digest()
