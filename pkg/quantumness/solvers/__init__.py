from .cloning import CloneOptimization, optimize_clone_unitary
from .exploration import ExplorationResult, explore_space_quantumness
from .oracle import brute_force_qubit_fidelity
from .quantumness import QuantumnessResult, quantumness, simplex_projection
from .seesaw import (
    SolveReport,
    optimal_success_probability,
    optimize_accessible_fidelity,
)
from .solver_config import SolverConfig
from .solver_status import SolverStatus

__all__ = [
    "CloneOptimization",
    "ExplorationResult",
    "QuantumnessResult",
    "SolveReport",
    "SolverConfig",
    "SolverStatus",
    "brute_force_qubit_fidelity",
    "explore_space_quantumness",
    "optimal_success_probability",
    "optimize_accessible_fidelity",
    "optimize_clone_unitary",
    "quantumness",
    "simplex_projection",
]
