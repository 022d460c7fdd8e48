"""Heuristic search for the least quantum state sets of a Hilbert space.

The quantumness of a space is the infimum of the quantumness over every
finite state set. Nothing guarantees that a random search finds it, so every
value produced here is an upper bound and is labelled as such.
"""
# Standard
import logging
import math
from dataclasses import dataclass, field
from typing import List

# Local
from quantumness.ensemble_utils import (
    Ensemble,
    PureState,
    ensemble_to_document,
    haar_state,
    make_generator,
)
from quantumness.errors import InvalidInputError
from quantumness.solvers.quantumness import quantumness
from quantumness.solvers.solver_config import SolverConfig
from quantumness.utils.config import limit

logger = logging.getLogger(__name__)

HEURISTIC_LABEL = "HEURISTIC UPPER BOUND"
EXPLORE_STREAM = 4
INITIAL_SCALE = 0.5
SHRINK = 0.8
MIN_SCALE = 1e-3
SCREENING_FRACTION = 10


@dataclass
class SizeRecord:
    """Best set found for one set size."""

    size: int
    value: float
    states: List[PureState]
    evaluations: int
    accepted_moves: int

    def to_dict(self):
        return {
            "size": self.size,
            "value": self.value,
            "evaluations": self.evaluations,
            "accepted_moves": self.accepted_moves,
            "ensemble": ensemble_to_document(Ensemble.uniform(self.states)),
        }


@dataclass
class ExplorationResult:
    """
    Smallest quantumness found in a dimension.

    ...

    Attributes
    ----------
    dim: int
        Hilbert-space dimension searched.
    value: float
        smallest quantumness found, an upper bound on the quantumness of the
        space.
    states: list of PureState
        set attaining ``value``.
    per_size: list of SizeRecord
        best set per size, sizes ascending.
    running_minimum: list of float
        smallest value over all sizes up to each entry of ``per_size``.
    label: str
        always ``HEURISTIC UPPER BOUND``.
    """

    dim: int
    value: float
    states: List[PureState]
    per_size: List[SizeRecord] = field(default_factory=list)
    running_minimum: List[float] = field(default_factory=list)
    label: str = HEURISTIC_LABEL

    @property
    def evaluations(self):
        return sum(record.evaluations for record in self.per_size)

    def to_dict(self):
        """JSON-ready dictionary; sets use the ensemble file schema."""
        return {
            "dim": self.dim,
            "value": self.value,
            "label": self.label,
            "evaluations": self.evaluations,
            "running_minimum": list(self.running_minimum),
            "per_size": [record.to_dict() for record in self.per_size],
            "ensemble": ensemble_to_document(Ensemble.uniform(self.states)),
        }


def _perturb(state, scale, rng):
    direction = rng.standard_normal(state.dim) + 1j * rng.standard_normal(state.dim)
    return PureState.normalized(state.amplitudes + scale * direction)


def _descend(states, cfg, search_cfg, rng, label):
    """Perturb one state at a time, keeping moves that lower the quantumness."""
    value = quantumness(states, search_cfg).value
    evaluations = 1
    accepted = 0
    scale = INITIAL_SCALE
    for step in range(cfg.search_steps):
        index = step % len(states)
        candidate = list(states)
        candidate[index] = _perturb(states[index], scale, rng)
        candidate_value = quantumness(candidate, search_cfg).value
        evaluations += 1
        if candidate_value < value:
            states, value = candidate, candidate_value
            accepted += 1
            logger.debug(f"{label} step {step}: {value!r}")
        else:
            scale = max(MIN_SCALE, scale * SHRINK)
    return states, value, evaluations, accepted


def explore_space_quantumness(
    dim, set_sizes, cfg=None, max_dimension=None
) -> ExplorationResult:
    """Search for state sets of small quantumness in dimension ``dim``.

    Sizes are searched in ascending order. Each size gets
    ``cfg.search_restarts`` starts of ``cfg.search_steps`` perturbation
    steps; the first start of every size after the first extends the best
    set of the previous size with random states. Sets of one state have
    quantumness 1 and are not searched.

    Parameters
    ----------
    dim : int
        At least 2.
    set_sizes : list of int
    cfg : SolverConfig, optional
        Candidate sets are screened with ``restarts`` lowered to
        ``cfg.inner_restarts``, a tenth of the outer iterations and no
        polish; the best set of each size is re-evaluated with ``cfg``
        itself.
    max_dimension : int, optional
        Largest accepted ``dim``; the packaged ``max_dimension`` limit when
        omitted.

    Returns
    -------
    ExplorationResult
    """
    cfg = SolverConfig.from_config() if cfg is None else cfg
    if max_dimension is None:
        max_dimension = limit("max_dimension")
    if not 2 <= dim <= max_dimension:
        raise InvalidInputError(
            f"Dimension must lie in [2, {max_dimension}], got {dim}"
        )
    sizes = sorted({int(size) for size in set_sizes})
    if not sizes or sizes[0] < 1:
        raise InvalidInputError(f"Set sizes must be positive integers, got {set_sizes}")
    search_cfg = cfg.with_overrides(
        restarts=cfg.inner_restarts,
        outer_iterations=max(1, cfg.outer_iterations // SCREENING_FRACTION),
        polish_evaluations=0,
    )

    records = []
    running = []
    previous = None
    for size in sizes:
        if size == 1:
            states = [PureState.basis(dim, 0)]
            record = SizeRecord(size, 1.0, states, 0, 0)
        else:
            best_states, best_value, evaluations, accepted = None, math.inf, 0, 0
            for restart in range(cfg.search_restarts):
                rng = make_generator(cfg.seed, EXPLORE_STREAM, size, restart)
                if restart == 0 and previous is not None:
                    states = list(previous)[:size]
                else:
                    states = []
                while len(states) < size:
                    states.append(PureState.normalized(haar_state(dim, rng)))
                states, value, count, moves = _descend(
                    states, cfg, search_cfg, rng, f"size {size} start {restart}"
                )
                evaluations += count
                accepted += moves
                if value < best_value:
                    best_states, best_value = states, value
            final = quantumness(best_states, cfg)
            evaluations += 1
            record = SizeRecord(size, final.value, best_states, evaluations, accepted)
        records.append(record)
        previous = record.states
        running.append(min([record.value] + running[-1:]))
        logger.info(f"Size {size}: best quantumness {record.value:.12g}")

    best = min(records, key=lambda record: record.value)
    return ExplorationResult(
        dim=dim,
        value=best.value,
        states=best.states,
        per_size=records,
        running_minimum=running,
    )
