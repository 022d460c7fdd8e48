"""Exceptions raised by the quantumness package.

Every exception derives from :class:`QuantumnessError` and from the builtin
exception a caller would otherwise expect, so ``except ValueError`` keeps
working.
"""


class QuantumnessError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(QuantumnessError, ValueError):
    """Input is malformed, non-finite, or outside its allowed range."""


class DimensionMismatchError(QuantumnessError, ValueError):
    """Operands live on Hilbert spaces of different dimension."""


class NotPSDError(QuantumnessError, ValueError):
    """Operator has an eigenvalue below the allowed negative tolerance."""


class InvalidPovmError(QuantumnessError, ValueError):
    """Measurement fails its positivity or completeness checks.

    Attributes
    ----------
    diagnostics : list
        The diagnostics returned by ``validate_povm``.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class UndefinedPosteriorError(QuantumnessError, ValueError):
    """Posterior requested for an outcome that never occurs."""


class NonUnitaryError(QuantumnessError, ValueError):
    """Matrix is not unitary within tolerance."""


class InvariantBreachError(QuantumnessError, RuntimeError):
    """A checked post-condition failed."""
