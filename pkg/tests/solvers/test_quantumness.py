import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantumness.ensemble_utils import (
    PureState,
    haar_unitary,
    make_generator,
    make_two_state_ensemble,
    orthonormal_basis_ensemble,
)
from quantumness.errors import InvalidInputError
from quantumness.solvers import (
    optimize_accessible_fidelity,
    quantumness,
    simplex_projection,
)


def test_simplex_projection_examples():
    """
    test projections of points on and off the simplex.
    """
    np.testing.assert_allclose(simplex_projection([0.2, 0.8]), [0.2, 0.8])
    np.testing.assert_allclose(simplex_projection([2.0, 0.0]), [1.0, 0.0])
    np.testing.assert_allclose(simplex_projection([0.0, 0.0, 0.0]), [1 / 3] * 3)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
        min_size=1,
        max_size=8,
    )
)
def test_simplex_projection_properties(values):
    """
    test that projections land on the simplex and are idempotent.
    """
    projected = simplex_projection(values)

    assert projected.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(projected >= 0.0)
    np.testing.assert_allclose(simplex_projection(projected), projected, atol=1e-12)


def test_single_state(fast_cfg):
    """
    test that a single state has quantumness 1 without any outer steps.
    """
    result = quantumness([PureState.basis(2, 0)], fast_cfg)

    assert result.value == pytest.approx(1.0, abs=1e-12)
    assert result.outer_iterations == 0
    assert result.worst_priors == [1.0]


def test_basis_set(fast_cfg):
    """
    test that an orthonormal basis has quantumness 1.
    """
    states = list(orthonormal_basis_ensemble(2).states)

    result = quantumness(states, fast_cfg)

    assert result.value == pytest.approx(1.0, abs=1e-9)


def test_empty_set_raises(fast_cfg):
    """
    test that quantumness needs a state.
    """
    with pytest.raises(InvalidInputError):
        quantumness([], fast_cfg)


def test_two_states_worst_priors(fast_cfg):
    """
    test that the worst priors of the x = 0.6 pair are uniform and the
    value matches the uniform-prior optimum.
    """
    ## Arrange ##
    ensemble = make_two_state_ensemble(0.6)

    ## Act ##
    result = quantumness(list(ensemble.states), fast_cfg)
    uniform = optimize_accessible_fidelity(ensemble, fast_cfg)

    ## Assert ##
    assert result.worst_priors[0] == pytest.approx(0.5, abs=0.02)
    assert sum(result.worst_priors) == pytest.approx(1.0, abs=1e-10)
    assert result.value == pytest.approx(uniform.value, abs=1e-3)
    assert result.outer_iterations == fast_cfg.outer_iterations
    assert result.polish_evaluations > 0


def test_result_document(fast_cfg):
    """
    test that the result document carries the certificate and rationale.
    """
    ensemble = make_two_state_ensemble(0.3)

    document = quantumness(list(ensemble.states), fast_cfg).to_dict(True)

    assert "convex" in document["rationale"]
    assert document["inner"]["value"] == document["value"]
    assert len(document["outer_trace"]) == fast_cfg.outer_iterations


@pytest.mark.slow()
@pytest.mark.parametrize("x", [0.3, 0.6, 0.9])
def test_two_state_symmetry_and_convexity(x, fast_cfg):
    """
    test uniform worst priors and a convex prior scan for the canonical pair.
    """
    ## Arrange ##
    ensemble = make_two_state_ensemble(x)
    cfg = fast_cfg.with_overrides(outer_iterations=50, polish_evaluations=30)

    ## Act ##
    result = quantumness(list(ensemble.states), cfg)
    scan = [
        optimize_accessible_fidelity(ensemble.with_priors([p, 1.0 - p]), fast_cfg).value
        for p in np.linspace(0.0, 1.0, 101)
    ]

    ## Assert ##
    assert result.worst_priors[0] == pytest.approx(0.5, abs=0.02)
    for left, middle, right in zip(scan, scan[1:], scan[2:]):
        assert middle <= 0.5 * (left + right) + 1e-5


@pytest.mark.slow()
def test_unitary_invariance(fast_cfg):
    """
    test that rotating every state leaves the quantumness unchanged.
    """
    ## Arrange ##
    rng = make_generator(8)
    states = [PureState.normalized(rng.standard_normal(2) + 0.5j) for _ in range(3)]
    unitary = haar_unitary(2, rng)
    rotated = [PureState.normalized(unitary @ state.amplitudes) for state in states]
    cfg = fast_cfg.with_overrides(outer_iterations=60, polish_evaluations=40)

    ## Act ##
    original = quantumness(states, cfg)
    turned = quantumness(rotated, cfg)

    ## Assert ##
    assert turned.value == pytest.approx(original.value, abs=1e-5)
