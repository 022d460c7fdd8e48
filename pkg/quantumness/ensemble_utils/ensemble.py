# Standard
import hashlib

# Installed
import numpy as np

# Local
from quantumness.ensemble_utils.pure_state import PureState
from quantumness.errors import DimensionMismatchError, InvalidInputError
from quantumness.linalg_utils import HermitianOperator

PRIOR_SUM_TOL = 1e-12


class Ensemble:
    """
    Class to represent an ensemble: pure states with prior probabilities.

    ...

    Attributes
    ----------
    dim: int
        dimension shared by every state.
    priors: numpy.ndarray
        read-only prior probabilities, non-negative and summing to 1.
    states: tuple of PureState
        the states of the set, aligned with ``priors``.
    vectors: numpy.ndarray
        read-only ``n x d`` array whose rows are the state amplitudes.

    Methods
    -------
    items():
        list of (prior, state) pairs.
    density_operator():
        rho = sum_i pi_i |psi_i><psi_i| as a HermitianOperator.
    projectors():
        ``n x d x d`` array of the state projectors.
    with_priors(priors):
        same states with new priors.
    conjugate_by(unitary):
        the ensemble of rotated states U|psi_i>.
    digest():
        sha256 of the canonical amplitudes and priors.
    validate_ensemble(ensemble):
        static method to validate that the input is an Ensemble.
    """

    __slots__ = ("dim", "priors", "states", "vectors")

    def __init__(self, priors, states):
        states = tuple(PureState.validate_state(state) for state in states)
        priors = np.array(priors, dtype=float).reshape(-1)
        if len(states) == 0:
            raise InvalidInputError("An ensemble needs at least one state")
        if priors.size != len(states):
            raise InvalidInputError(
                f"Got {priors.size} priors for {len(states)} states"
            )
        if not np.all(np.isfinite(priors)) or np.any(priors < 0.0):
            raise InvalidInputError("Priors must be finite and non-negative")
        residual = abs(float(np.sum(priors)) - 1.0)
        if residual > PRIOR_SUM_TOL:
            raise InvalidInputError(f"Priors sum to 1 only within {residual:.3e}")
        dims = {state.dim for state in states}
        if len(dims) != 1:
            raise DimensionMismatchError(f"States have mixed dimensions {sorted(dims)}")

        vectors = np.array([state.amplitudes for state in states], dtype=complex)
        priors.setflags(write=False)
        vectors.setflags(write=False)
        self.dim = dims.pop()
        self.priors = priors
        self.states = states
        self.vectors = vectors

    @classmethod
    def uniform(cls, states):
        """Builds an ensemble with equal priors."""
        states = list(states)
        if not states:
            raise InvalidInputError("An ensemble needs at least one state")
        return cls(np.full(len(states), 1.0 / len(states)), states)

    def __len__(self):
        return len(self.states)

    def items(self):
        """Returns the list of (prior, state) pairs."""
        return list(zip(self.priors.tolist(), self.states))

    def projectors(self):
        """Returns the ``n x d x d`` array of projectors |psi_i><psi_i|."""
        return np.einsum("ia,ib->iab", self.vectors, self.vectors.conj())

    def density_matrix(self):
        """Returns rho as a plain numpy array."""
        return np.einsum("i,ia,ib->ab", self.priors, self.vectors, self.vectors.conj())

    def density_operator(self):
        """Returns rho = sum_i pi_i |psi_i><psi_i| as a HermitianOperator."""
        return HermitianOperator(self.density_matrix())

    def with_priors(self, priors):
        """Returns the same states with new priors."""
        return Ensemble(priors, self.states)

    def conjugate_by(self, unitary):
        """Returns the ensemble of states U|psi_i> with the same priors."""
        unitary = np.asarray(unitary, dtype=complex)
        if unitary.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"Unitary of shape {unitary.shape} does not act on dimension {self.dim}"
            )
        return Ensemble(
            self.priors,
            [PureState.normalized(unitary @ state.amplitudes) for state in self.states],
        )

    def digest(self):
        """Returns a sha256 hex digest of the canonical amplitudes and priors."""
        hasher = hashlib.sha256()
        hasher.update(np.asarray([self.dim, len(self)], dtype=np.int64).tobytes())
        hasher.update(np.ascontiguousarray(self.vectors).tobytes())
        hasher.update(np.ascontiguousarray(self.priors).tobytes())
        return hasher.hexdigest()

    def __repr__(self):
        return f"Ensemble(dim={self.dim}, n={len(self)}, priors={self.priors.tolist()})"

    @staticmethod
    def validate_ensemble(ensemble):
        """
        Static method used to validate whether an object is of type Ensemble.

        Returns
        -------
        Ensemble
            the validated ensemble that was input.
        """
        if isinstance(ensemble, Ensemble):
            return ensemble
        raise TypeError(f"Input is type {type(ensemble)}, but must be type Ensemble")
