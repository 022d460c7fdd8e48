# Standard
from enum import Enum


class SolverStatus(Enum):
    """
    Enum for the outcome of an optimization run.
    """

    CONVERGED = "converged"
    NOT_CONVERGED = "not_converged"

    @classmethod
    def combine(cls, statuses):
        """Returns NOT_CONVERGED if any of ``statuses`` is, else CONVERGED."""
        if any(status is cls.NOT_CONVERGED for status in statuses):
            return cls.NOT_CONVERGED
        return cls.CONVERGED
