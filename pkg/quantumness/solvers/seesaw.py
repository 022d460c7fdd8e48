"""Measurement optimization by alternating ascent.

Both objectives handled here, the achievable fidelity ``sum_b lambda_1(M_b)``
and the success probability ``sum_b max_i pi_i tr(Pi_i E_b)``, are maxima of
functions that are linear in the measurement. Freezing the maximizer (the
response states, or the guessed index) at the current measurement gives a
linear minorant ``L(E) = sum_b tr(R_b E_b)`` that touches the objective there,
so any measurement that does not lower ``L`` does not lower the objective.

One iteration:

1. response step: recompute the maximizer and build ``R_b``;
2. measurement step: ``E_b <- Lambda^{-1/2} T_b E_b T_b Lambda^{-1/2}`` with
   ``Lambda = sum_b T_b E_b T_b`` and ``T_b = (1 - s) I + s R_b / r``;
   ``s = 1`` is the plain fixed-point update, smaller ``s`` dilutes it;
3. accept if the objective did not decrease, otherwise halve ``s``.

The loop stops when an accepted step gains less than ``convergence_tol``, when
the last ``stall_window`` accepted steps together gain less than ``stall_tol``,
when no step size gives an ascent, or after ``max_iterations``. Outcomes that
occur with probability below ``prune_tol`` are then dropped and the rest
re-completed.
"""
# Standard
import logging
from dataclasses import dataclass, field
from typing import List

# Installed
import numpy as np

# Local
from quantumness.bounds import srm_elements
from quantumness.ensemble_utils import (
    Ensemble,
    Povm,
    complete_elements,
    haar_isometry,
    haar_unitary,
    make_generator,
    to_pairs,
    validate_povm,
)
from quantumness.errors import DimensionMismatchError, InvariantBreachError
from quantumness.fidelity_kernel import (
    AchievabilityResult,
    achievability_from_elements,
    achievable_terms,
    clamp_fidelity,
    click_probabilities,
    response_weights,
    success_terms,
)
from quantumness.solvers.solver_config import SolverConfig
from quantumness.solvers.solver_status import SolverStatus

logger = logging.getLogger(__name__)

MAX_HALVINGS = 40
PRUNE_SLACK = 1e-12


@dataclass
class StartOutcome:
    """Result of running the ascent from one starting measurement."""

    label: str
    value: float
    elements: np.ndarray
    iterations: int
    status: SolverStatus
    trace: List[float] = field(default_factory=list)
    pruned: int = 0


@dataclass
class SolveReport:
    """
    Best measurement found over all starts, with optimizer diagnostics.

    ...

    Attributes
    ----------
    value: float
        best objective value, clamped to [0, 1].
    povm: Povm
        measurement attaining ``value``.
    achievability: AchievabilityResult
        achievable fidelity of ``povm`` with its optimal responses.
    status: SolverStatus
        CONVERGED when the best start stopped on the convergence test.
    best_start: int
        index of the start that produced ``povm``.
    start_labels: list of str
        ``warm``, ``srm`` or ``random`` for every start, in order.
    restart_values: list of float
        final objective value of every start.
    iterations: list of int
        accepted iterations of every start.
    traces: list of list of float
        accepted objective values of every start, non-decreasing.
    completeness_residual: float
        Frobenius norm of ``sum_b E_b - I`` for ``povm``.
    effective_outcomes: int
        outcomes of ``povm`` with tr(rho E_b) above ``prune_tol``.
    """

    value: float
    povm: Povm
    achievability: AchievabilityResult
    status: SolverStatus
    best_start: int
    start_labels: List[str]
    restart_values: List[float]
    iterations: List[int]
    traces: List[List[float]]
    completeness_residual: float
    effective_outcomes: int

    @property
    def converged(self):
        return self.status is SolverStatus.CONVERGED

    def to_dict(self, include_traces=False):
        """JSON-ready dictionary; the traces are left out unless asked for."""
        result = {
            "value": self.value,
            "status": self.status.value,
            "best_start": self.best_start,
            "start_labels": list(self.start_labels),
            "restart_values": list(self.restart_values),
            "iterations": list(self.iterations),
            "completeness_residual": self.completeness_residual,
            "effective_outcomes": self.effective_outcomes,
            "outcomes": len(self.povm),
            "povm": [to_pairs(element.matrix) for element in self.povm.elements],
            "responses": [
                to_pairs(state.amplitudes) for state in self.achievability.responses
            ],
        }
        if include_traces:
            result["traces"] = [list(trace) for trace in self.traces]
        return result


class FidelityObjective:
    """Achievable fidelity; frozen maximizer is the set of response states."""

    name = "achievable fidelity"

    def __init__(self, ensemble):
        self.vectors = ensemble.vectors
        self.priors = ensemble.priors

    def evaluate(self, elements):
        eigenvalues, responses, _ = achievable_terms(
            self.vectors, self.priors, elements
        )
        total = 0.0
        for eigenvalue in eigenvalues:
            total += float(eigenvalue)
        return total, responses

    def linearize(self, responses):
        weights = response_weights(self.vectors, self.priors, responses)
        return np.einsum("ki,ia,ib->kab", weights, self.vectors, self.vectors.conj())


class SuccessObjective:
    """Success probability; frozen maximizer is the guessed index per outcome."""

    name = "success probability"

    def __init__(self, ensemble):
        self.vectors = ensemble.vectors
        self.priors = ensemble.priors

    def evaluate(self, elements):
        best, guesses = success_terms(self.vectors, self.priors, elements)
        total = 0.0
        for term in best:
            total += float(term)
        return total, guesses

    def linearize(self, guesses):
        chosen = self.vectors[guesses]
        return np.einsum(
            "k,ka,kb->kab", self.priors[guesses], chosen, chosen.conj()
        )


def random_rank_one_elements(dim, outcomes, rng):
    """Random measurement with ``outcomes`` rank-one elements.

    With at least ``dim`` outcomes the rows of a Haar isometry give the
    elements, which then sum to the identity exactly. With fewer outcomes the
    columns of a Haar unitary are dealt round-robin into projectors.
    """
    if outcomes >= dim:
        rows = haar_isometry(outcomes, dim, rng).conj()
        return np.einsum("ka,kb->kab", rows, rows.conj())
    columns = haar_unitary(dim, rng)
    elements = np.zeros((outcomes, dim, dim), dtype=complex)
    for k in range(dim):
        elements[k % outcomes] += np.outer(columns[:, k], columns[:, k].conj())
    return elements


def _measurement_step(elements, linear, step):
    dim = elements.shape[-1]
    scale = max(float(np.max(np.einsum("kaa->k", linear).real)), 0.0)
    if scale <= 0.0:
        return None
    tilt = (1.0 - step) * np.eye(dim) + (step / scale) * linear
    return complete_elements(tilt @ elements @ tilt)


def _outcome_probabilities(ensemble, elements):
    return click_probabilities(ensemble.vectors, elements) @ ensemble.priors


def ascend(objective, ensemble, elements, cfg, label="start"):
    """Run the alternating ascent from one measurement.

    Parameters
    ----------
    objective : FidelityObjective or SuccessObjective
    ensemble : Ensemble
    elements : numpy.ndarray
        ``K x d x d`` starting measurement.
    cfg : SolverConfig
    label : str, optional
        Name of the start, used in logs.

    Returns
    -------
    StartOutcome
    """
    value, frozen = objective.evaluate(elements)
    trace = [value]
    status = SolverStatus.NOT_CONVERGED
    step = 1.0
    iterations = 0
    for iteration in range(1, cfg.max_iterations + 1):
        linear = objective.linearize(frozen)
        accepted = False
        for _ in range(MAX_HALVINGS):
            candidate = _measurement_step(elements, linear, step)
            if candidate is None:
                break
            candidate_value, candidate_frozen = objective.evaluate(candidate)
            if candidate_value >= value:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            # no step size ascends: stationary point
            status = SolverStatus.CONVERGED
            break
        gain = candidate_value - value
        elements, value, frozen = candidate, candidate_value, candidate_frozen
        trace.append(value)
        iterations = iteration
        logger.debug(f"{label} iteration {iteration}: {value!r} (step {step:.3g})")
        if gain < cfg.convergence_tol:
            status = SolverStatus.CONVERGED
            break
        window = cfg.stall_window
        if window and len(trace) > window:
            if value - trace[-1 - window] < cfg.stall_tol:
                logger.debug(f"{label} stalled over the last {window} steps")
                status = SolverStatus.CONVERGED
                break
        step = min(1.0, 2.0 * step)

    pruned = 0
    probabilities = _outcome_probabilities(ensemble, elements)
    keep = probabilities >= cfg.prune_tol
    if np.any(keep) and not np.all(keep):
        candidate = complete_elements(elements[keep])
        candidate_value, _ = objective.evaluate(candidate)
        if candidate_value >= value - PRUNE_SLACK:
            pruned = int(np.sum(~keep))
            elements, value = candidate, candidate_value
    return StartOutcome(
        label=label,
        value=value,
        elements=elements,
        iterations=iterations,
        status=status,
        trace=trace,
        pruned=pruned,
    )


def _starting_points(ensemble, cfg, initial_povms, stream):
    starts = []
    for povm in initial_povms or []:
        povm = Povm.validate_povm_type(povm)
        if povm.dim != ensemble.dim:
            raise DimensionMismatchError(
                f"Warm start has dimension {povm.dim}, ensemble has {ensemble.dim}"
            )
        starts.append(("warm", complete_elements(povm.stacked())))
    starts.append(("srm", srm_elements(ensemble)))
    outcomes = cfg.outcomes_for(ensemble.dim)
    for restart in range(cfg.restarts):
        rng = make_generator(cfg.seed, *stream, restart)
        starts.append(
            ("random", random_rank_one_elements(ensemble.dim, outcomes, rng))
        )
    return starts


def _solve(objective, ensemble, cfg, initial_povms, stream):
    ensemble = Ensemble.validate_ensemble(ensemble)
    if not isinstance(cfg, SolverConfig):
        raise TypeError(f"Input is type {type(cfg)}, but must be type SolverConfig")
    starts = _starting_points(ensemble, cfg, initial_povms, stream)
    labels = [label for label, _ in starts]
    outcomes = [
        ascend(objective, ensemble, elements, cfg, f"{label} start {index}")
        for index, (label, elements) in enumerate(starts)
    ]

    # first start wins ties, so the reduction does not depend on run order
    best_index = 0
    for index, outcome in enumerate(outcomes):
        if outcome.value > outcomes[best_index].value:
            best_index = index
    best = outcomes[best_index]

    povm = Povm.from_arrays(best.elements)
    diagnostics = validate_povm(povm)
    if diagnostics:
        raise InvariantBreachError(
            "Optimized measurement is not a valid POVM: "
            + "; ".join(diagnostic.message for diagnostic in diagnostics)
        )
    residual = float(np.linalg.norm(best.elements.sum(axis=0) - np.eye(ensemble.dim)))
    value, _ = clamp_fidelity(best.value, objective.name)
    outcome_probs = _outcome_probabilities(ensemble, best.elements)
    effective = int(np.sum(outcome_probs > cfg.prune_tol))
    if best.status is SolverStatus.NOT_CONVERGED:
        logger.warning(
            f"{objective.name} did not converge within {cfg.max_iterations} "
            f"iterations; returning best value {value!r}"
        )
    logger.info(
        f"Best {objective.name} {value:.12g} from start {best_index} "
        f"({labels[best_index]}) of {len(outcomes)}, {effective} effective outcomes"
    )
    return SolveReport(
        value=value,
        povm=povm,
        achievability=achievability_from_elements(ensemble, best.elements),
        status=best.status,
        best_start=best_index,
        start_labels=labels,
        restart_values=[outcome.value for outcome in outcomes],
        iterations=[outcome.iterations for outcome in outcomes],
        traces=[outcome.trace for outcome in outcomes],
        completeness_residual=residual,
        effective_outcomes=effective,
    )


def optimize_accessible_fidelity(
    ensemble, cfg=None, initial_povms=None, stream=()
) -> SolveReport:
    """Maximize the achievable fidelity over measurements.

    Parameters
    ----------
    ensemble : Ensemble
    cfg : SolverConfig, optional
        Defaults to the packaged configuration.
    initial_povms : list of Povm, optional
        Warm starts tried before the square-root measurement and the
        ``cfg.restarts`` random starts.
    stream : tuple of int, optional
        Prefix of the random stream of each start, so callers that solve
        many related problems draw independent starts.

    Returns
    -------
    SolveReport
        The best value over all starts. A run that hits ``max_iterations``
        is flagged NOT_CONVERGED and still returns its best measurement.
    """
    cfg = SolverConfig.from_config() if cfg is None else cfg
    ensemble = Ensemble.validate_ensemble(ensemble)
    return _solve(FidelityObjective(ensemble), ensemble, cfg, initial_povms, stream)


def optimal_success_probability(
    ensemble, cfg=None, initial_povms=None, stream=()
) -> SolveReport:
    """Maximize sum_b max_i pi_i tr(Pi_i E_b) over measurements.

    Same starts and ascent as :func:`optimize_accessible_fidelity`, with
    ``R_b = pi_g Pi_g`` for the index ``g`` guessed on outcome ``b``. For two
    equiprobable states the result is the Helstrom probability.
    """
    cfg = SolverConfig.from_config() if cfg is None else cfg
    ensemble = Ensemble.validate_ensemble(ensemble)
    return _solve(SuccessObjective(ensemble), ensemble, cfg, initial_povms, stream)

