# Installed
import numpy as np

# Local
from quantumness.ensemble_utils.diagnostics import Diagnostic, DiagnosticKind
from quantumness.errors import DimensionMismatchError, InvalidInputError
from quantumness.linalg_utils import (
    HermitianOperator,
    inv_sqrt_psd_array,
    min_eigenvalue_array,
)
from quantumness.utils.config import tolerance

PSD_TOL = tolerance("psd_tol")
COMPLETENESS_TOL = tolerance("completeness_tol")


class Povm:
    """
    Class to represent a measurement, a list of PSD operators E_b.

    Construction only checks shapes; positivity and completeness are reported
    by :func:`validate_povm` so that invalid measurements can be diagnosed.

    ...

    Attributes
    ----------
    dim: int
        dimension of the measured space.
    elements: tuple of HermitianOperator
        the measurement operators, indexed by outcome b.

    Methods
    -------
    from_arrays(arrays):
        builds a measurement from plain matrices.
    stacked():
        ``K x d x d`` array of the elements.
    refine(index):
        splits one element into two equal halves.
    complete():
        returns a measurement whose elements sum exactly to the identity.
    conjugate_by(unitary):
        the measurement U E_b U^dagger.
    validate_povm_type(povm):
        static method to validate that the input is a Povm.
    """

    __slots__ = ("dim", "elements")

    def __init__(self, elements):
        elements = tuple(HermitianOperator.validate_operator(e) for e in elements)
        if not elements:
            raise InvalidInputError("A measurement needs at least one element")
        dims = {element.dim for element in elements}
        if len(dims) != 1:
            raise DimensionMismatchError(
                f"Elements have mixed dimensions {sorted(dims)}"
            )
        self.dim = dims.pop()
        self.elements = elements

    @classmethod
    def from_arrays(cls, arrays):
        """Builds a measurement from an iterable of d x d arrays."""
        return cls([HermitianOperator(array) for array in arrays])

    def __len__(self):
        return len(self.elements)

    def stacked(self):
        """Returns the ``K x d x d`` array of elements."""
        return np.array([element.matrix for element in self.elements])

    def refine(self, index):
        """Returns the measurement with element ``index`` split into two halves."""
        half = 0.5 * self.elements[index]
        elements = list(self.elements)
        elements[index : index + 1] = [half, half]
        return Povm(elements)

    def complete(self):
        """Returns the measurement rescaled to sum to the identity.

        Elements are conjugated by S^{-1/2}, S = sum_b E_b, and whatever S
        does not cover is spread evenly over the elements.
        """
        return Povm.from_arrays(complete_elements(self.stacked()))

    def conjugate_by(self, unitary):
        """Returns the measurement with every element conjugated by ``unitary``."""
        return Povm([element.conjugate_by(unitary) for element in self.elements])

    def __repr__(self):
        return f"Povm(dim={self.dim}, outcomes={len(self)})"

    @staticmethod
    def validate_povm_type(povm):
        """
        Static method used to validate whether an object is of type Povm.

        Returns
        -------
        Povm
            the validated measurement that was input.
        """
        if isinstance(povm, Povm):
            return povm
        raise TypeError(f"Input is type {type(povm)}, but must be type Povm")


def complete_elements(elements):
    """Make a stack of PSD elements sum to the identity.

    Parameters
    ----------
    elements : numpy.ndarray
        ``K x d x d`` stack of PSD matrices.

    Returns
    -------
    numpy.ndarray
        ``K x d x d`` stack with ``sum_b E_b = I`` to rounding.
    """
    dim = elements.shape[-1]
    total = elements.sum(axis=0)
    scale = inv_sqrt_psd_array(total)
    elements = np.einsum("ab,kbc,cd->kad", scale, elements, scale)
    residual = np.eye(dim) - elements.sum(axis=0)
    residual = 0.5 * (residual + residual.conj().T)
    if np.linalg.norm(residual) > 0.0:
        elements = elements + residual / elements.shape[0]
    return 0.5 * (elements + np.conj(np.swapaxes(elements, -1, -2)))


def validate_povm(povm, psd_tol=PSD_TOL, completeness_tol=COMPLETENESS_TOL):
    """Check the measurement invariants.

    Parameters
    ----------
    povm : Povm
    psd_tol : float, optional
        Allowed negative eigenvalue per element.
    completeness_tol : float, optional
        Allowed elementwise deviation of ``sum_b E_b`` from the identity.

    Returns
    -------
    list of Diagnostic
        Empty when every element is PSD and the elements sum to the
        identity; otherwise one entry per violation, with the smallest
        eigenvalue of the offending element or the completeness residual
        (Frobenius norm of ``sum_b E_b - I``).
    """
    povm = Povm.validate_povm_type(povm)
    diagnostics = []
    for index, element in enumerate(povm.elements):
        smallest = min_eigenvalue_array(element.matrix)
        if smallest < -psd_tol:
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.NOT_PSD,
                    f"Element {index} has eigenvalue {smallest:.3e}",
                    smallest,
                    index,
                )
            )
    deviation = povm.stacked().sum(axis=0) - np.eye(povm.dim)
    if np.max(np.abs(deviation)) > completeness_tol:
        residual = float(np.linalg.norm(deviation))
        diagnostics.append(
            Diagnostic(
                DiagnosticKind.INCOMPLETE,
                f"Elements sum to the identity only within {residual:.3e}",
                residual,
            )
        )
    return diagnostics


def trivial_povm(dim):
    """Returns the single-outcome measurement {I}."""
    if dim < 1:
        raise InvalidInputError(f"Dimension must be at least 1, got {dim}")
    return Povm([HermitianOperator.identity(dim)])


def basis_povm(dim):
    """Returns the projective measurement on the computational basis."""
    if dim < 1:
        raise InvalidInputError(f"Dimension must be at least 1, got {dim}")
    return Povm(
        [HermitianOperator.projector(np.eye(dim, dtype=complex)[k]) for k in range(dim)]
    )
