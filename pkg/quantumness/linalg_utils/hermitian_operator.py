# Installed
import numpy as np

# Local
from quantumness.errors import DimensionMismatchError, InvalidInputError


class HermitianOperator:
    """
    Class to represent a Hermitian operator on a d-dimensional complex space.

    The entries are symmetrized on construction, ``(A + A^dagger) / 2``, so
    the stored matrix is Hermitian to rounding. The stored array is
    read-only; operations build new operators.

    ...

    Attributes
    ----------
    dim: int
        dimension d of the underlying space, at least 1.
    matrix: numpy.ndarray
        read-only d x d complex array.

    Methods
    -------
    identity(dim):
        the d x d identity operator.
    projector(vector):
        rank-one operator |v><v| for a complex vector.
    trace():
        real trace of the operator.
    expectation(vector):
        real value <v|A|v>.
    conjugate_by(unitary):
        the operator U A U^dagger.
    validate_operator(operator):
        static method to validate that the input is a HermitianOperator.
    """

    __slots__ = ("dim", "matrix")

    def __init__(self, entries):
        array = np.array(entries, dtype=complex)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise InvalidInputError(
                f"Hermitian operator needs a square matrix, got shape {array.shape}"
            )
        if array.shape[0] < 1:
            raise InvalidInputError("Hermitian operator needs dimension at least 1")
        if not np.all(np.isfinite(array)):
            raise InvalidInputError("Hermitian operator has non-finite entries")

        array = 0.5 * (array + array.conj().T)
        array.setflags(write=False)
        self.dim = array.shape[0]
        self.matrix = array

    @classmethod
    def identity(cls, dim):
        """Returns the identity operator on a ``dim``-dimensional space."""
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def projector(cls, vector):
        """Returns the rank-one operator |v><v|."""
        vector = np.asarray(vector, dtype=complex)
        return cls(np.outer(vector, vector.conj()))

    def trace(self):
        """Returns the trace of the operator as a float."""
        return float(np.trace(self.matrix).real)

    def expectation(self, vector):
        """Returns <v|A|v> for a complex vector of matching length."""
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (self.dim,):
            raise DimensionMismatchError(
                f"Vector of shape {vector.shape} does not act on dimension {self.dim}"
            )
        return float(np.vdot(vector, self.matrix @ vector).real)

    def conjugate_by(self, unitary):
        """Returns U A U^dagger."""
        unitary = np.asarray(unitary, dtype=complex)
        if unitary.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"Unitary of shape {unitary.shape} does not act on dimension {self.dim}"
            )
        return HermitianOperator(unitary @ self.matrix @ unitary.conj().T)

    def __add__(self, other):
        other = HermitianOperator.validate_operator(other)
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"Cannot add dimensions {self.dim} and {other.dim}"
            )
        return HermitianOperator(self.matrix + other.matrix)

    def __sub__(self, other):
        other = HermitianOperator.validate_operator(other)
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"Cannot subtract dimensions {self.dim} and {other.dim}"
            )
        return HermitianOperator(self.matrix - other.matrix)

    def __mul__(self, scalar):
        return HermitianOperator(float(scalar) * self.matrix)

    __rmul__ = __mul__

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim}, matrix={self.matrix.tolist()})"

    @staticmethod
    def validate_operator(operator):
        """
        Static method used to validate whether an object is of type
        HermitianOperator. If it is, the same object is returned, otherwise an
        error is raised.

        Parameters
        ----------
        operator : an object to be validated as a HermitianOperator.

        Returns
        -------
        HermitianOperator
            the validated operator that was input.
        """
        if isinstance(operator, HermitianOperator):
            return operator
        raise TypeError(
            f"Input is type {type(operator)}, but must be type HermitianOperator"
        )
