import math

import numpy as np

from quantumness.ensemble_utils import (
    make_generator,
    make_two_state_ensemble,
    random_ensemble,
    symmetric_qubit_ensemble,
    trivial_povm,
    validate_povm,
)

CASES = 500


def _assert_ensemble_invariants(ensemble, dim, count):
    assert ensemble.dim == dim
    assert len(ensemble) == count
    assert ensemble.vectors.shape == (count, dim)
    assert np.all(ensemble.priors >= 0.0)
    assert math.isclose(float(np.sum(ensemble.priors)), 1.0, abs_tol=1e-12)
    np.testing.assert_allclose(
        np.linalg.norm(ensemble.vectors, axis=1), 1.0, atol=1e-12
    )
    assert all(state.dim == dim for state in ensemble.states)


def test_constructor_outputs_satisfy_invariants():
    """
    test that every constructor output passes its type invariants over 500
    seeded cases.
    """
    for case in range(CASES):
        ## Arrange ##
        rng = make_generator(case, 11)
        x = float(rng.uniform())
        prior = float(rng.uniform())
        n = int(rng.integers(1, 201))
        dim = int(rng.integers(1, 17))
        count = int(rng.integers(1, 21))

        ## Act ##
        pair = make_two_state_ensemble(x, prior)
        symmetric = symmetric_qubit_ensemble(n)
        haar = random_ensemble(dim, count, case, uniform_priors=bool(case % 2))
        povm = trivial_povm(dim)

        ## Assert ##
        _assert_ensemble_invariants(pair, 2, 2)
        overlap = abs(np.vdot(pair.vectors[0], pair.vectors[1]))
        assert abs(overlap - x) <= 1e-12
        np.testing.assert_allclose(pair.priors, [prior, 1.0 - prior])

        _assert_ensemble_invariants(symmetric, 2, n)
        np.testing.assert_allclose(symmetric.priors, 1.0 / n)

        _assert_ensemble_invariants(haar, dim, count)

        assert len(povm) == 1
        assert povm.dim == dim
        assert validate_povm(povm) == []
