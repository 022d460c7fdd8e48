# Standard
import logging
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

# Local
from quantumness.errors import InvalidInputError
from quantumness.utils.config import load_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    """
    Class holding every knob of the optimizers.

    Defaults live in the ``solver`` section of the packaged config.json; use
    :meth:`from_config` to build an instance from it. Two runs with equal
    configurations produce identical results.

    ...

    Attributes
    ----------
    outcomes: int or None
        number of measurement outcomes; None means d^2.
    restarts: int
        random starts of the measurement seesaw.
    max_iterations: int
        seesaw iterations per start.
    convergence_tol: float
        stop once an accepted step improves the objective by less.
    stall_window: int
        number of accepted steps compared by the stall test; 0 disables it.
    stall_tol: float
        stop once the last ``stall_window`` steps together gain less.
    prune_tol: float
        outcomes with tr(rho E_b) below this are dropped.
    seed: int
        root of every random stream.
    inner_restarts: int
        random starts of each inner solve during the prior minimization.
    outer_iterations: int
        projected subgradient steps over the priors.
    step_scale: float
        c in the step size c / sqrt(t).
    polish_evaluations: int
        objective evaluations of the final Nelder-Mead polish.
    search_restarts: int
        random state sets tried per size by the Hilbert-space search.
    search_steps: int
        perturbation steps per random state set.

    Methods
    -------
    from_config(config=None, **overrides):
        builds a validated configuration from a config dictionary.
    outcomes_for(dim):
        number of outcomes to use in dimension ``dim``.
    with_overrides(**overrides):
        copy with some fields replaced.
    to_dict():
        echo of every field.
    """

    outcomes: Optional[int] = None
    restarts: int = 32
    max_iterations: int = 500
    convergence_tol: float = 1e-10
    stall_window: int = 50
    stall_tol: float = 1e-8
    prune_tol: float = 1e-12
    seed: int = 0
    inner_restarts: int = 4
    outer_iterations: int = 200
    step_scale: float = 0.1
    polish_evaluations: int = 60
    search_restarts: int = 4
    search_steps: int = 40

    def __post_init__(self):
        if self.outcomes is not None and self.outcomes < 1:
            raise InvalidInputError(f"outcomes must be at least 1, got {self.outcomes}")
        for name in ("restarts", "inner_restarts", "search_restarts"):
            if getattr(self, name) < 1:
                raise InvalidInputError(
                    f"{name} must be at least 1, got {getattr(self, name)}"
                )
        for name in (
            "max_iterations",
            "outer_iterations",
            "polish_evaluations",
            "search_steps",
            "stall_window",
        ):
            if getattr(self, name) < 0:
                raise InvalidInputError(
                    f"{name} must be non-negative, got {getattr(self, name)}"
                )
        for name in ("convergence_tol", "stall_tol", "prune_tol", "step_scale"):
            if not getattr(self, name) > 0.0:
                raise InvalidInputError(
                    f"{name} must be positive, got {getattr(self, name)}"
                )
        if self.seed < 0:
            raise InvalidInputError(f"seed must be non-negative, got {self.seed}")

    @classmethod
    def from_config(cls, config=None, **overrides):
        """Build a configuration from the ``solver`` section of a config dict.

        Parameters
        ----------
        config : dict, optional
            Parsed configuration; the packaged file when omitted.
        **overrides
            Field values that replace the configured ones. ``None`` values
            are ignored so that unset command-line flags keep the defaults.

        Returns
        -------
        SolverConfig
        """
        if config is None:
            config = load_config()
        known = {field.name for field in fields(cls)}
        section = dict(config.get("solver", {}))
        unknown = set(section) - known
        if unknown:
            logger.warning(f"Ignoring unknown solver settings {sorted(unknown)}")
        values = {key: value for key, value in section.items() if key in known}
        for key, value in overrides.items():
            if key not in known:
                raise InvalidInputError(f"Unknown solver setting {key!r}")
            if value is not None:
                values[key] = value
        return cls(**values)

    def outcomes_for(self, dim):
        """Returns the configured outcome count, d^2 when unset."""
        return dim * dim if self.outcomes is None else self.outcomes

    def with_overrides(self, **overrides):
        """Returns a copy with the given fields replaced."""
        return replace(self, **overrides)

    def to_dict(self):
        """Returns every field, enough to reproduce a run."""
        return asdict(self)
