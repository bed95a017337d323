from .complement import orthonormal_complement_basis
from .norms import operator_norm, schur_norm_bound
from .spectral import (
    LinalgError,
    Spectrum,
    hermitian_eig,
    is_hermitian,
    lambda_max,
    lambda_min,
    psd_rank,
    span_basis,
    spectral_function,
    symmetrize,
)

__all__ = [
    "LinalgError",
    "Spectrum",
    "hermitian_eig",
    "is_hermitian",
    "lambda_max",
    "lambda_min",
    "operator_norm",
    "orthonormal_complement_basis",
    "psd_rank",
    "schur_norm_bound",
    "span_basis",
    "spectral_function",
    "symmetrize",
]
