"""Closed-form benchmarks and computable bounds.

- ``lambda_1(rho)``: every measurement reaches at least this, and the
  single-outcome measurement reaches exactly it.
- Square-root ("pretty good") measurement E_i = pi_i rho^{-1/2} Pi_i rho^{-1/2}
  and its fidelity F_PGM, a lower bound on the accessible fidelity. F_PGM is
  computed twice: by inserting the measurement into the achievable fidelity,
  and by the direct sum ``sum_i lambda_1(sum_j pi_i pi_j Pi_j rho^{-1/2} Pi_i
  rho^{-1/2} Pi_j)``. The two must agree.
- Helstrom success probability of two equiprobable pure states.
- Optimal two-state cloning fidelity and the cloning objective for a given
  two-qubit unitary.
"""
# Standard
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Dict

# Installed
import numpy as np

# Local
from quantumness.ensemble_utils import Ensemble, Povm, two_state_vectors
from quantumness.errors import InvalidInputError, NonUnitaryError
from quantumness.fidelity_kernel import (
    achievability_from_elements,
    success_probability,
)
from quantumness.linalg_utils import inv_sqrt_psd_array, top_eigenpair_array
from quantumness.utils.config import tolerance

logger = logging.getLogger(__name__)

COMPLETENESS_TOL = tolerance("completeness_tol")
PGM_ROUTE_TOL = 1e-9
SANDWICH_TOL = 1e-7
UNITARY_TOL = 1e-10
MOST_QUANTUM_OVERLAP = 1.0 / math.sqrt(3.0)


@dataclass
class BoundsReport:
    """Bounds on the accessible fidelity of one ensemble.

    Attributes
    ----------
    lambda1_rho : float
        Largest eigenvalue of rho.
    pgm_fidelity : float
        Achievable fidelity of the square-root measurement.
    pgm_fidelity_direct : float
        The same number from the direct eigenvalue sum.
    pgm_route_residual : float
        Absolute difference of the two routes.
    optimal_success_lower : float
        Success probability of the square-root measurement, a lower bound on
        the optimal success probability.
    hierarchy_ok : dict of str to bool
        One flag per checked inequality.
    """

    dim: int
    lambda1_rho: float
    pgm_fidelity: float
    pgm_fidelity_direct: float
    pgm_route_residual: float
    optimal_success_lower: float
    hierarchy_ok: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self):
        """Returns a JSON-ready dictionary."""
        return asdict(self)


def _check_unit_interval(name, value):
    if not (0.0 <= value <= 1.0) or math.isnan(value):
        raise InvalidInputError(f"{name} must lie in [0, 1], got {value}")


def trivial_bound(ensemble):
    """Returns lambda_1(rho), reached by the single-outcome measurement."""
    ensemble = Ensemble.validate_ensemble(ensemble)
    eigenvalue, _ = top_eigenpair_array(ensemble.density_matrix())
    return eigenvalue


def srm_elements(ensemble):
    """``K x d x d`` stack of square-root measurement elements.

    One element per input state; when rho does not have full rank a final
    element ``I - P`` with P the projector onto the support of rho completes
    the measurement.
    """
    scale = inv_sqrt_psd_array(ensemble.density_matrix())
    elements = np.einsum(
        "i,ab,ib,ic,cd->iad",
        ensemble.priors,
        scale,
        ensemble.vectors,
        ensemble.vectors.conj(),
        scale,
    )
    residual = np.eye(ensemble.dim) - elements.sum(axis=0)
    residual = 0.5 * (residual + residual.conj().T)
    if np.max(np.abs(residual)) > COMPLETENESS_TOL:
        elements = np.concatenate([elements, residual[np.newaxis]])
    return elements


def srm_povm(ensemble):
    """Square-root measurement E_i = pi_i rho^{-1/2} Pi_i rho^{-1/2}.

    Parameters
    ----------
    ensemble : Ensemble

    Returns
    -------
    Povm
        ``n`` elements, plus the off-support projector when rho is rank
        deficient.
    """
    ensemble = Ensemble.validate_ensemble(ensemble)
    return Povm.from_arrays(srm_elements(ensemble))


def pgm_fidelity(ensemble):
    """Achievable fidelity of the square-root measurement."""
    ensemble = Ensemble.validate_ensemble(ensemble)
    return achievability_from_elements(ensemble, srm_elements(ensemble)).value


def pgm_fidelity_direct(ensemble):
    """F_PGM from the eigenvalue sum, without building a measurement.

    ``sum_i lambda_1(sum_j pi_i pi_j Pi_j rho^{-1/2} Pi_i rho^{-1/2} Pi_j)``
    """
    ensemble = Ensemble.validate_ensemble(ensemble)
    scale = inv_sqrt_psd_array(ensemble.density_matrix())
    projectors = ensemble.projectors()
    priors = ensemble.priors
    total = 0.0
    for i in range(len(ensemble)):
        sandwiched = scale @ projectors[i] @ scale
        operator = np.zeros((ensemble.dim, ensemble.dim), dtype=complex)
        for j in range(len(ensemble)):
            operator += priors[i] * priors[j] * (
                projectors[j] @ sandwiched @ projectors[j]
            )
        eigenvalue, _ = top_eigenpair_array(operator)
        total += eigenvalue
    return min(max(total, 0.0), 1.0)


def helstrom_success(x):
    """Best probability of identifying one of two equiprobable pure states.

    Parameters
    ----------
    x : float
        Overlap |<psi_0|psi_1>| in [0, 1].

    Returns
    -------
    float
        ``(1 + sqrt(1 - x^2)) / 2``, non-increasing in x, in [0.5, 1].
    """
    _check_unit_interval("x", x)
    return 0.5 * (1.0 + math.sqrt(1.0 - x * x))


def clone_fidelity(x):
    """Optimal average fidelity for cloning two pure states of overlap x.

    ``(1 + x^3 + (1 - x^2) sqrt(1 + x^2)) / 2``; equal to 1 for orthogonal
    and for identical states, smallest at x = 1/sqrt(3).
    """
    _check_unit_interval("x", x)
    return 0.5 * (1.0 + x**3 + (1.0 - x * x) * math.sqrt(1.0 + x * x))


def overlap_grid(step):
    """Points 0, step, 2 step, ... on [0, 1], always including 1."""
    if not step > 0.0:
        raise InvalidInputError(f"Grid step must be positive, got {step}")
    count = int(math.floor(1.0 / step + 1e-9))
    grid = step * np.arange(count + 1)
    if grid[-1] < 1.0 - 1e-12:
        grid = np.append(grid, 1.0)
    return np.clip(grid, 0.0, 1.0)


def clone_fidelity_argmin(grid_step=1e-3):
    """Overlap on a grid over [0, 1] where the cloning fidelity is smallest.

    Parameters
    ----------
    grid_step : float, optional
        Spacing of the grid; at most 1e-3 for the result to resolve
        1/sqrt(3). Coarser grids are evaluated as given.

    Returns
    -------
    float
        First grid point attaining the minimum.
    """
    if grid_step > 1e-3:
        logger.warning(f"Grid step {grid_step} is too coarse to locate 1/sqrt(3)")
    grid = overlap_grid(grid_step)
    values = [clone_fidelity(float(x)) for x in grid]
    return float(grid[int(np.argmin(values))])


def overlap_to_degrees(x):
    """Hilbert-space angle arccos(x) in degrees; 1/sqrt(3) is about 54.7."""
    _check_unit_interval("x", x)
    return math.degrees(math.acos(x))


def check_unitary(matrix, tol=UNITARY_TOL):
    """Returns ``matrix`` as a complex array if U^dagger U = I within ``tol``."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidInputError(f"Expected a square matrix, got shape {matrix.shape}")
    deviation = np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0])))
    if not deviation <= tol:
        raise NonUnitaryError(f"U^dagger U differs from I by {deviation:.3e}")
    return matrix


def clone_targets(x):
    """Inputs |psi_i>|0> and targets |psi_i>|psi_i> of the two-state cloning task."""
    fiducial = np.array([1.0, 0.0], dtype=complex)
    states = two_state_vectors(x)
    inputs = [np.kron(state, fiducial) for state in states]
    targets = [np.kron(state, state) for state in states]
    return inputs, targets


def clone_try_fidelity(x, unitary):
    """Cloning objective of a two-qubit unitary on the canonical pair.

    ``(|<Psi_0|psi_0,psi_0>|^2 + |<Psi_1|psi_1,psi_1>|^2) / 2`` with
    ``|Psi_i> = U (|psi_i> (x) |0>)``.

    Parameters
    ----------
    x : float
        Overlap of the pair, in [0, 1].
    unitary : array_like
        4 x 4 unitary acting on input and blank qubit.

    Returns
    -------
    float

    Raises
    ------
    NonUnitaryError
        If U^dagger U differs from the identity by more than 1e-10.
    """
    _check_unit_interval("x", x)
    unitary = check_unitary(unitary)
    if unitary.shape != (4, 4):
        raise InvalidInputError(f"Cloning unitary must be 4 x 4, got {unitary.shape}")
    return clone_objective(unitary, *clone_targets(x))


def clone_objective(unitary, inputs, targets):
    """:func:`clone_try_fidelity` for precomputed inputs and targets."""
    total = 0.0
    for source, target in zip(inputs, targets):
        total += 0.5 * abs(np.vdot(unitary @ source, target)) ** 2
    return float(total)


def bounds_report(ensemble):
    """Collect the lower bounds of an ensemble and check their ordering.

    Parameters
    ----------
    ensemble : Ensemble

    Returns
    -------
    BoundsReport
    """
    ensemble = Ensemble.validate_ensemble(ensemble)
    lambda1 = trivial_bound(ensemble)
    srm = Povm.from_arrays(srm_elements(ensemble))
    pgm = achievability_from_elements(ensemble, srm.stacked()).value
    pgm_direct = pgm_fidelity_direct(ensemble)
    residual = abs(pgm - pgm_direct)
    if residual > PGM_ROUTE_TOL:
        logger.warning(
            f"Square-root measurement routes disagree: {pgm!r} vs {pgm_direct!r}"
        )
    srm_success = success_probability(ensemble, srm)
    hierarchy = {
        "lambda1_at_least_inverse_dim": lambda1 >= 1.0 / ensemble.dim - 1e-10,
        "lambda1_at_most_one": lambda1 <= 1.0 + 1e-10,
        "pgm_at_least_lambda1": pgm >= lambda1 - 1e-10,
        "success_at_most_pgm": srm_success <= pgm + 1e-10,
        "pgm_routes_agree": residual <= PGM_ROUTE_TOL,
    }
    return BoundsReport(
        dim=ensemble.dim,
        lambda1_rho=lambda1,
        pgm_fidelity=pgm,
        pgm_fidelity_direct=pgm_direct,
        pgm_route_residual=residual,
        optimal_success_lower=srm_success,
        hierarchy_ok=hierarchy,
    )


def certificate_sandwich(bounds, value, success=None):
    """Check max(lambda_1, F_PGM, P_s*) - 1e-7 <= value <= 1.

    Parameters
    ----------
    bounds : BoundsReport
    value : float
        A computed accessible fidelity.
    success : float, optional
        Optimized success probability P_s*, when available.

    Returns
    -------
    dict
        ``lower``, ``upper`` and the boolean ``ok``.
    """
    candidates = [bounds.lambda1_rho, bounds.pgm_fidelity]
    if success is not None:
        candidates.append(success)
    lower = max(candidates)
    return {
        "lower": lower,
        "upper": 1.0,
        "ok": bool(lower - SANDWICH_TOL <= value <= 1.0 + 1e-10),
    }
