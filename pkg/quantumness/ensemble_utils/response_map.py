# Installed
import numpy as np

# Local
from quantumness.ensemble_utils.pure_state import PureState
from quantumness.errors import InvalidInputError
from quantumness.linalg_utils import HermitianOperator, min_eigenvalue_array
from quantumness.utils.config import tolerance

PSD_TOL = tolerance("psd_tol")
TRACE_TOL = 1e-10


class ResponseMap:
    """
    Class to represent the preparation strategy b -> sigma_b: one density
    operator per measurement outcome.

    ...

    Attributes
    ----------
    responses: tuple of HermitianOperator
        density operators, PSD with unit trace.

    Methods
    -------
    from_states(states):
        builds the pure-state strategy sigma_b = |phi_b><phi_b|.
    stacked():
        ``K x d x d`` array of the density operators.
    """

    __slots__ = ("responses",)

    def __init__(self, responses):
        responses = tuple(HermitianOperator.validate_operator(r) for r in responses)
        if not responses:
            raise InvalidInputError("A response map needs at least one response")
        for index, response in enumerate(responses):
            smallest = min_eigenvalue_array(response.matrix)
            if smallest < -PSD_TOL:
                raise InvalidInputError(
                    f"Response {index} has eigenvalue {smallest:.3e}"
                )
            if abs(response.trace() - 1.0) > TRACE_TOL:
                raise InvalidInputError(
                    f"Response {index} has trace {response.trace():.12g}"
                )
        self.responses = responses

    @classmethod
    def from_states(cls, states):
        """Returns the strategy that prepares the given pure states."""
        return cls([PureState.validate_state(state).projector() for state in states])

    def __len__(self):
        return len(self.responses)

    def stacked(self):
        """Returns the ``K x d x d`` array of responses."""
        return np.array([response.matrix for response in self.responses])

    def __repr__(self):
        return f"ResponseMap(outcomes={len(self)})"
