"""Quantumness of a state set: accessible fidelity minimized over priors."""
# Standard
import logging
import math
from dataclasses import dataclass, field
from typing import List

# Installed
import numpy as np
from scipy.optimize import minimize

# Local
from quantumness.ensemble_utils import Ensemble, PureState
from quantumness.errors import InvalidInputError
from quantumness.fidelity_kernel import per_state_fidelity_array
from quantumness.solvers.seesaw import SolveReport, optimize_accessible_fidelity
from quantumness.solvers.solver_config import SolverConfig
from quantumness.solvers.solver_status import SolverStatus

logger = logging.getLogger(__name__)

OUTER_STREAM = 1
POLISH_STREAM = 2

CONVEXITY_RATIONALE = (
    "For a fixed measurement each M_b is linear in the priors and lambda_1 is "
    "convex, so the achievable fidelity is convex in the priors; the accessible "
    "fidelity is a maximum of convex functions and therefore convex, and the "
    "minimization over the simplex has no spurious local minima up to the error "
    "of the inner solver."
)


def simplex_projection(values):
    """Euclidean projection onto the probability simplex.

    Returns the solution of ``min ||x - values||^2`` subject to
    ``sum(x) = 1`` and ``x >= 0``.
    """
    values = np.asarray(values, dtype=float)
    ordered = -np.sort(-values)
    thresholds = (np.cumsum(ordered) - 1.0) / np.arange(1, values.size + 1)
    for k in range(values.size - 1, -1, -1):
        if ordered[k] > thresholds[k]:
            projected = np.maximum(values - thresholds[k], 0.0)
            return projected / projected.sum()
    raise InvalidInputError(f"Cannot project {values} onto the simplex")


@dataclass
class QuantumnessResult:
    """
    Worst-case accessible fidelity of a state set.

    ...

    Attributes
    ----------
    value: float
        Q, the accessible fidelity at ``worst_priors``.
    worst_priors: list of float
        minimizing prior distribution.
    inner: SolveReport
        inner solve at ``worst_priors``, the certificate of ``value``.
    outer_iterations: int
        subgradient iterations performed.
    outer_trace: list of float
        accessible fidelity at each subgradient iterate.
    polish_evaluations: int
        objective evaluations spent by the Nelder-Mead polish.
    status: SolverStatus
        NOT_CONVERGED if the final inner solve did not converge.
    rationale: str
        why a local search over the priors finds the minimum.
    """

    value: float
    worst_priors: List[float]
    inner: SolveReport
    outer_iterations: int
    outer_trace: List[float] = field(default_factory=list)
    polish_evaluations: int = 0
    status: SolverStatus = SolverStatus.CONVERGED
    rationale: str = CONVEXITY_RATIONALE

    def to_dict(self, include_traces=False):
        """JSON-ready dictionary."""
        result = {
            "value": self.value,
            "worst_priors": list(self.worst_priors),
            "inner": self.inner.to_dict(include_traces),
            "outer_iterations": self.outer_iterations,
            "polish_evaluations": self.polish_evaluations,
            "status": self.status.value,
            "rationale": self.rationale,
        }
        if include_traces:
            result["outer_trace"] = list(self.outer_trace)
        return result


class _PriorSearch:
    """Keeps the best priors seen and warm-starts every inner solve."""

    def __init__(self, ensemble, cfg):
        self.ensemble = ensemble
        self.inner_cfg = cfg.with_overrides(restarts=cfg.inner_restarts)
        self.best_value = math.inf
        self.best_priors = ensemble.priors.copy()
        self.best_report = None
        self.warm = []

    def evaluate(self, priors, stream):
        report = optimize_accessible_fidelity(
            self.ensemble.with_priors(priors),
            self.inner_cfg,
            initial_povms=self.warm,
            stream=stream,
        )
        self.warm = [report.povm]
        if report.value < self.best_value:
            self.best_value = report.value
            self.best_priors = np.array(priors, dtype=float)
            self.best_report = report
        return report


def quantumness(states, cfg=None) -> QuantumnessResult:
    """Minimize the accessible fidelity of a state set over its priors.

    Parameters
    ----------
    states : list of PureState
    cfg : SolverConfig, optional
        Defaults to the packaged configuration.

    Returns
    -------
    QuantumnessResult

    Notes
    -----
    The outer problem is convex (see ``CONVEXITY_RATIONALE``). It is solved
    by ``cfg.outer_iterations`` projected subgradient steps of size
    ``cfg.step_scale / sqrt(t)`` starting from uniform priors, where the
    subgradient at the current priors is the per-state reconstruction
    fidelity of the inner optimal protocol. A Nelder-Mead polish on the
    projected priors follows, and the best priors seen are solved once more
    with the full ``cfg.restarts`` to certify the reported value. Priors on
    the boundary of the simplex are allowed.
    """
    cfg = SolverConfig.from_config() if cfg is None else cfg
    states = [PureState.validate_state(state) for state in states]
    if not states:
        raise InvalidInputError("Quantumness needs at least one state")
    ensemble = Ensemble.uniform(states)
    search = _PriorSearch(ensemble, cfg)
    priors = ensemble.priors.copy()
    trace = []
    iterations = 0
    polish = 0

    if len(states) > 1:
        for iteration in range(1, cfg.outer_iterations + 1):
            report = search.evaluate(priors, (OUTER_STREAM, iteration))
            trace.append(report.value)
            responses = np.array(
                [state.amplitudes for state in report.achievability.responses]
            )
            gradient = per_state_fidelity_array(
                ensemble.vectors, report.povm.stacked(), responses
            )
            step = cfg.step_scale / math.sqrt(iteration)
            priors = simplex_projection(priors - step * gradient)
            iterations = iteration
            logger.debug(f"Outer iteration {iteration}: {report.value!r}")

        if cfg.polish_evaluations > 0:

            def objective(point):
                nonlocal polish
                polish += 1
                return search.evaluate(
                    simplex_projection(point), (POLISH_STREAM, polish)
                ).value

            minimize(
                objective,
                search.best_priors if search.best_report else priors,
                method="Nelder-Mead",
                options={
                    "maxfev": cfg.polish_evaluations,
                    "xatol": 1e-6,
                    "fatol": 1e-12,
                },
            )

    worst = search.best_priors if search.best_report else priors
    warm = [search.best_report.povm] if search.best_report else []
    final = optimize_accessible_fidelity(
        ensemble.with_priors(worst), cfg, initial_povms=warm, stream=(OUTER_STREAM, 0)
    )
    status = SolverStatus.combine([final.status])
    logger.info(
        f"Quantumness {final.value:.12g} at priors {np.round(worst, 6).tolist()} "
        f"after {iterations} outer iterations and {polish} polish evaluations"
    )
    return QuantumnessResult(
        value=final.value,
        worst_priors=worst.tolist(),
        inner=final,
        outer_iterations=iterations,
        outer_trace=trace,
        polish_evaluations=polish,
        status=status,
    )
