from .diagnostics import Diagnostic, DiagnosticKind
from .ensemble import Ensemble
from .families import (
    antipodal_ring_design,
    bloch_constellation,
    make_two_state_ensemble,
    orthonormal_basis_ensemble,
    random_ensemble,
    symmetric_qubit_ensemble,
    two_state_vectors,
)
from .povm import Povm, basis_povm, complete_elements, trivial_povm, validate_povm
from .pure_state import PureState
from .response_map import ResponseMap
from .rng import haar_isometry, haar_state, haar_unitary, make_generator
from .serialization import (
    ensemble_from_document,
    ensemble_to_document,
    load_ensemble_document,
    to_pairs,
    validate_ensemble_document,
)

__all__ = [
    "Diagnostic",
    "DiagnosticKind",
    "Ensemble",
    "Povm",
    "PureState",
    "ResponseMap",
    "antipodal_ring_design",
    "basis_povm",
    "bloch_constellation",
    "complete_elements",
    "ensemble_from_document",
    "ensemble_to_document",
    "haar_isometry",
    "haar_state",
    "haar_unitary",
    "load_ensemble_document",
    "make_generator",
    "make_two_state_ensemble",
    "orthonormal_basis_ensemble",
    "random_ensemble",
    "symmetric_qubit_ensemble",
    "to_pairs",
    "trivial_povm",
    "two_state_vectors",
    "validate_ensemble_document",
    "validate_povm",
]
