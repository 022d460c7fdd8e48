import numpy as np
import pytest

from quantumness.ensemble_utils import Povm


@pytest.fixture()
def helstrom_povm():
    """Projective measurement on (|0> +- |1>) / sqrt(2)."""
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / np.sqrt(2.0)
    return Povm.from_arrays([np.outer(plus, plus), np.outer(minus, minus)])
