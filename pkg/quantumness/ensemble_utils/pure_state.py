# Installed
import numpy as np

# Local
from quantumness.errors import DimensionMismatchError, InvalidInputError
from quantumness.linalg_utils import HermitianOperator

NORM_TOL = 1e-12


class PureState:
    """
    Class to represent a pure state, a unit vector in a d-dimensional
    complex space.

    ...

    Attributes
    ----------
    dim: int
        dimension of the space.
    amplitudes: numpy.ndarray
        read-only complex vector of length ``dim`` with unit norm.

    Methods
    -------
    normalized(vector):
        builds a state from any non-zero vector.
    basis(dim, index):
        computational basis state.
    from_bloch(vector):
        qubit state with the given Bloch vector.
    bloch_vector():
        Bloch vector of a qubit state.
    overlap(other):
        squared overlap |<self|other>|^2.
    projector():
        the rank-one operator |psi><psi| as a HermitianOperator.
    validate_state(state):
        static method to validate that the input is a PureState.
    """

    __slots__ = ("amplitudes", "dim")

    def __init__(self, amplitudes):
        vector = np.array(amplitudes, dtype=complex).reshape(-1)
        if vector.size < 1:
            raise InvalidInputError("A pure state needs at least one amplitude")
        if not np.all(np.isfinite(vector)):
            raise InvalidInputError("State amplitudes must be finite")
        residual = abs(float(np.vdot(vector, vector).real) - 1.0)
        if residual > NORM_TOL:
            raise InvalidInputError(
                f"State has squared norm off from 1 by {residual:.3e}"
            )
        vector.setflags(write=False)
        self.dim = vector.size
        self.amplitudes = vector

    @classmethod
    def normalized(cls, vector):
        """Returns the state along a non-zero complex vector."""
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0 or not np.isfinite(norm):
            raise InvalidInputError("Cannot normalize a zero or non-finite vector")
        return cls(vector / norm)

    @classmethod
    def basis(cls, dim, index):
        """Returns the computational basis state ``index`` in dimension ``dim``."""
        vector = np.zeros(dim, dtype=complex)
        vector[index] = 1.0
        return cls(vector)

    @classmethod
    def from_bloch(cls, vector):
        """Returns (cos(t/2), e^{ip} sin(t/2)) for a unit Bloch vector."""
        x, y, z = (float(component) for component in vector)
        length = np.sqrt(x * x + y * y + z * z)
        if length == 0.0:
            raise InvalidInputError("Bloch vector must be non-zero")
        x, y, z = x / length, y / length, z / length
        theta = np.arccos(np.clip(z, -1.0, 1.0))
        phi = np.arctan2(y, x)
        return cls.normalized(
            [np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)]
        )

    def bloch_vector(self):
        """Returns the Bloch vector of a qubit state."""
        if self.dim != 2:
            raise DimensionMismatchError("Bloch vectors are defined for qubits only")
        a, b = self.amplitudes
        coherence = 2.0 * np.conj(a) * b
        return np.array(
            [coherence.real, coherence.imag, abs(a) ** 2 - abs(b) ** 2], dtype=float
        )

    def overlap(self, other):
        """Returns |<self|other>|^2."""
        other = PureState.validate_state(other)
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"Dimensions {self.dim} and {other.dim} differ"
            )
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)

    def projector(self):
        """Returns |psi><psi| as a HermitianOperator."""
        return HermitianOperator.projector(self.amplitudes)

    def __eq__(self, other):
        return isinstance(other, PureState) and np.array_equal(
            self.amplitudes, other.amplitudes
        )

    def __hash__(self):
        return hash(self.amplitudes.tobytes())

    def __repr__(self):
        return f"PureState({self.amplitudes.tolist()})"

    @staticmethod
    def validate_state(state):
        """
        Static method used to validate whether an object is of type PureState.

        Returns
        -------
        PureState
            the validated state that was input.
        """
        if isinstance(state, PureState):
            return state
        raise TypeError(f"Input is type {type(state)}, but must be type PureState")
