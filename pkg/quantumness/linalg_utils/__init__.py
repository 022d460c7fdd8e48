from .hermitian_operator import HermitianOperator
from .jacobi import jacobi_eigh, jacobi_eigh_stack
from .spectral import (
    eigendecompose,
    inv_sqrt_psd,
    inv_sqrt_psd_array,
    is_psd,
    min_eigenvalue_array,
    top_eigenpair,
    top_eigenpair_array,
    top_eigenpairs_array,
)

__all__ = [
    "HermitianOperator",
    "eigendecompose",
    "inv_sqrt_psd",
    "inv_sqrt_psd_array",
    "is_psd",
    "jacobi_eigh",
    "jacobi_eigh_stack",
    "min_eigenvalue_array",
    "top_eigenpair",
    "top_eigenpair_array",
    "top_eigenpairs_array",
]
