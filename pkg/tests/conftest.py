import pytest

from quantumness.ensemble_utils import (
    PureState,
    make_two_state_ensemble,
    orthonormal_basis_ensemble,
)
from quantumness.ensemble_utils.ensemble import Ensemble
from quantumness.solvers import SolverConfig


@pytest.fixture()
def fast_cfg():
    """Small solver budget that still converges on qubit problems."""
    return SolverConfig(
        restarts=4,
        max_iterations=300,
        inner_restarts=1,
        outer_iterations=10,
        polish_evaluations=10,
        search_restarts=1,
        search_steps=4,
    )


@pytest.fixture()
def two_state_ensemble():
    """Equiprobable pair with overlap 0.6."""
    return make_two_state_ensemble(0.6)


@pytest.fixture()
def basis_ensemble():
    """Qutrit basis with unequal priors."""
    return orthonormal_basis_ensemble(3, [0.2, 0.3, 0.5])


@pytest.fixture()
def single_state_ensemble():
    return Ensemble([1.0], [PureState.normalized([1.0, 1.0j])])
