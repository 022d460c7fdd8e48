# Standard
from dataclasses import dataclass
from enum import Enum
from typing import Optional


class DiagnosticKind(Enum):
    """
    Enum for the invariant violations reported by the validators.
    """

    NOT_PSD = "not_psd"
    INCOMPLETE = "incomplete"
    NOT_NORMALIZED = "not_normalized"
    NEGATIVE_PRIOR = "negative_prior"
    PRIOR_SUM = "prior_sum"
    DIMENSION = "dimension"
    EMPTY = "empty"
    TOO_MANY_STATES = "too_many_states"
    NON_FINITE = "non_finite"


@dataclass(frozen=True)
class Diagnostic:
    """One invariant violation with its measured residual.

    Attributes
    ----------
    kind : DiagnosticKind
        Which invariant failed.
    message : str
        Human readable description.
    residual : float
        Measured size of the violation (e.g. a negative eigenvalue or a
        norm defect).
    index : int, optional
        Element or state the violation refers to.
    """

    kind: DiagnosticKind
    message: str
    residual: float
    index: Optional[int] = None

    def to_dict(self):
        """Returns the diagnostic as a JSON-ready dictionary."""
        return {
            "kind": self.kind.value,
            "message": self.message,
            "residual": self.residual,
            "index": self.index,
        }
