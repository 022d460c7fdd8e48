import numpy as np
import pytest

from quantumness.ensemble_utils import (
    DiagnosticKind,
    Povm,
    basis_povm,
    complete_elements,
    haar_unitary,
    make_generator,
    trivial_povm,
    validate_povm,
)
from quantumness.errors import DimensionMismatchError, InvalidInputError
from quantumness.linalg_utils import HermitianOperator


@pytest.mark.parametrize("dim", [1, 2, 4])
def test_trivial_povm(dim):
    """
    test that the trivial measurement is the identity and valid.
    """
    povm = trivial_povm(dim)

    assert len(povm) == 1
    np.testing.assert_allclose(povm.elements[0].matrix, np.eye(dim))
    assert validate_povm(povm) == []


def test_basis_povm_is_valid():
    """
    test that the basis projectors form a valid measurement.
    """
    assert validate_povm(basis_povm(2)) == []


def test_povm_constructors_reject_bad_dimension():
    """
    test that constructors refuse dimension zero.
    """
    with pytest.raises(InvalidInputError):
        trivial_povm(0)
    with pytest.raises(InvalidInputError):
        basis_povm(0)


def test_incomplete_povm_diagnostic():
    """
    test that {I, I} reports a completeness violation with residual 1.
    """
    ## Arrange ##
    povm = Povm([HermitianOperator.identity(1), HermitianOperator.identity(1)])

    ## Act ##
    diagnostics = validate_povm(povm)

    ## Assert ##
    assert len(diagnostics) == 1
    assert diagnostics[0].kind is DiagnosticKind.INCOMPLETE
    assert diagnostics[0].residual == pytest.approx(1.0)


def test_negative_element_diagnostic():
    """
    test that a non-PSD element is reported with its eigenvalue and index.
    """
    ## Arrange ##
    povm = Povm.from_arrays([np.diag([1.2, 1.0]), np.diag([-0.2, 0.0])])

    ## Act ##
    diagnostics = validate_povm(povm)

    ## Assert ##
    assert [diagnostic.kind for diagnostic in diagnostics] == [DiagnosticKind.NOT_PSD]
    assert diagnostics[0].index == 1
    assert diagnostics[0].residual == pytest.approx(-0.2)
    assert diagnostics[0].to_dict()["kind"] == "not_psd"


def test_povm_mixed_dimensions():
    """
    test that elements of different dimension raise.
    """
    with pytest.raises(DimensionMismatchError):
        Povm([HermitianOperator.identity(2), HermitianOperator.identity(3)])


def test_refine_splits_element():
    """
    test that refining keeps the measurement valid with one extra outcome.
    """
    povm = basis_povm(2).refine(0)

    assert len(povm) == 3
    np.testing.assert_allclose(povm.elements[0].matrix, np.diag([0.5, 0.0]))
    assert validate_povm(povm) == []


def test_complete_rescales_elements():
    """
    test that complete turns a scaled measurement back into a valid one.
    """
    ## Arrange ##
    rng = make_generator(3)
    unitary = haar_unitary(3, rng)
    arrays = [2.0 * np.outer(unitary[:, k], unitary[:, k].conj()) for k in range(3)]

    ## Act ##
    povm = Povm.from_arrays(arrays).complete()

    ## Assert ##
    assert validate_povm(povm) == []
    np.testing.assert_allclose(povm.elements[0].matrix, 0.5 * arrays[0], atol=1e-10)


def test_complete_elements_fills_missing_support():
    """
    test that directions no element covers are spread over the elements.
    """
    elements = np.array([np.diag([1.0, 0.0]), np.diag([3.0, 0.0])], dtype=complex)

    completed = complete_elements(elements)

    np.testing.assert_allclose(completed.sum(axis=0), np.eye(2), atol=1e-10)


def test_conjugate_keeps_validity():
    """
    test that rotating a measurement keeps it valid.
    """
    unitary = haar_unitary(2, make_generator(1))

    povm = basis_povm(2).conjugate_by(unitary)

    assert validate_povm(povm) == []
