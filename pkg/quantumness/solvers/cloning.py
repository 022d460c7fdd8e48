"""Numeric maximization of the two-state cloning objective over unitaries."""
# Standard
import logging
from dataclasses import dataclass, field
from typing import List

# Installed
import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

# Local
from quantumness.bounds import (
    clone_fidelity,
    clone_objective,
    clone_targets,
    clone_try_fidelity,
)
from quantumness.ensemble_utils import make_generator, to_pairs
from quantumness.errors import InvalidInputError
from quantumness.solvers.solver_config import SolverConfig

logger = logging.getLogger(__name__)

CLONE_DIM = 4
PARAMETERS = CLONE_DIM * CLONE_DIM
CLONE_STREAM = 3
GAP_LOWER = -1e-9
GAP_UPPER = 1e-3
SEARCH_EVALUATIONS = 4000
POLISH_EVALUATIONS = 2000


def hermitian_from_parameters(parameters):
    """4 x 4 Hermitian matrix from 16 reals.

    The first four are the diagonal, the rest the real and imaginary parts of
    the upper triangle.
    """
    parameters = np.asarray(parameters, dtype=float)
    if parameters.shape != (PARAMETERS,):
        raise InvalidInputError(
            f"Expected {PARAMETERS} parameters, got shape {parameters.shape}"
        )
    matrix = np.diag(parameters[:CLONE_DIM]).astype(complex)
    rows, columns = np.triu_indices(CLONE_DIM, k=1)
    off = parameters[CLONE_DIM : CLONE_DIM + rows.size] + 1j * parameters[
        CLONE_DIM + rows.size :
    ]
    matrix[rows, columns] = off
    matrix[columns, rows] = off.conj()
    return matrix


def unitary_from_parameters(parameters):
    """exp(iH) for the Hermitian H built by :func:`hermitian_from_parameters`."""
    return expm(1j * hermitian_from_parameters(parameters))


@dataclass
class CloneOptimization:
    """
    Best cloning unitary found for one overlap.

    ...

    Attributes
    ----------
    x: float
        overlap of the two input states.
    value: float
        cloning objective of ``unitary``.
    closed_form: float
        optimal cloning fidelity at ``x``.
    gap: float
        ``closed_form - value``; expected in [-1e-9, 1e-3].
    unitary: numpy.ndarray
        best 4 x 4 unitary.
    start_values: list of float
        objective reached from every start.
    evaluations: int
        objective evaluations over all starts.
    """

    x: float
    value: float
    closed_form: float
    gap: float
    unitary: np.ndarray
    start_values: List[float] = field(default_factory=list)
    evaluations: int = 0

    @property
    def gap_ok(self):
        return GAP_LOWER <= self.gap <= GAP_UPPER

    def to_dict(self):
        """JSON-ready dictionary."""
        return {
            "x": self.x,
            "value": self.value,
            "closed_form": self.closed_form,
            "gap": self.gap,
            "gap_ok": self.gap_ok,
            "unitary": to_pairs(self.unitary),
            "start_values": list(self.start_values),
            "evaluations": self.evaluations,
        }


def optimize_clone_unitary(x, cfg=None) -> CloneOptimization:
    """Maximize the cloning objective over two-qubit unitaries.

    The unitary is ``exp(iH)`` with H Hermitian and given by 16 real
    parameters. Each of ``cfg.restarts`` starts runs an adaptive Nelder-Mead
    search followed by a Powell polish; the first start is H = 0 and the
    rest are seeded Gaussian draws.

    Parameters
    ----------
    x : float
        Overlap in [0, 1].
    cfg : SolverConfig, optional

    Returns
    -------
    CloneOptimization
        Best value over all starts with its gap to the closed form. The best
        value is always returned, whatever the gap.
    """
    cfg = SolverConfig.from_config() if cfg is None else cfg
    target = clone_fidelity(x)
    inputs, targets = clone_targets(x)
    evaluations = 0

    def loss(parameters):
        nonlocal evaluations
        evaluations += 1
        return -clone_objective(unitary_from_parameters(parameters), inputs, targets)

    best_value = -np.inf
    best_parameters = np.zeros(PARAMETERS)
    start_values = []
    for restart in range(cfg.restarts):
        if restart == 0:
            start = np.zeros(PARAMETERS)
        else:
            start = make_generator(cfg.seed, CLONE_STREAM, restart).normal(
                scale=1.0, size=PARAMETERS
            )
        search = minimize(
            loss,
            start,
            method="Nelder-Mead",
            options={
                "maxfev": SEARCH_EVALUATIONS,
                "xatol": 1e-9,
                "fatol": 1e-13,
                "adaptive": True,
            },
        )
        polished = minimize(
            loss,
            search.x,
            method="Powell",
            options={"maxfev": POLISH_EVALUATIONS, "xtol": 1e-9, "ftol": 1e-13},
        )
        candidates = [(search.fun, search.x), (polished.fun, polished.x)]
        fun, parameters = min(candidates, key=lambda candidate: candidate[0])
        start_values.append(-float(fun))
        if -fun > best_value:
            best_value = -float(fun)
            best_parameters = np.array(parameters)
        logger.debug(f"Cloning start {restart} at x={x}: {-fun!r}")

    unitary = unitary_from_parameters(best_parameters)
    value = clone_try_fidelity(x, unitary)
    result = CloneOptimization(
        x=float(x),
        value=value,
        closed_form=target,
        gap=target - value,
        unitary=unitary,
        start_values=start_values,
        evaluations=evaluations,
    )
    if not result.gap_ok:
        logger.warning(
            f"Cloning gap {result.gap:.3e} at x={x} is outside "
            f"[{GAP_LOWER}, {GAP_UPPER}]"
        )
    logger.info(f"Cloning x={x}: numeric {value:.12g}, closed form {target:.12g}")
    return result
