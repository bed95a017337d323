"""Operator norm and the Schur test bound."""

from __future__ import annotations

import numpy as np

from .spectral import as_matrix, hermitian_eig


def operator_norm(a: np.ndarray | list) -> float:
    """Largest singular value, computed as sqrt(lambda_max(A*A)).

    The smaller of A*A and AA* is diagonalised; both share the nonzero spectrum.
    """
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    gram = m.conj().T @ m if m.shape[1] <= m.shape[0] else m @ m.conj().T
    return float(np.sqrt(max(hermitian_eig(gram).lambda_max, 0.0)))


def schur_norm_bound(a: np.ndarray | list) -> float:
    """Schur test: max of the largest column and row absolute sums.

    Always dominates the operator norm.
    """
    m = np.abs(as_matrix(a))
    if m.size == 0:
        return 0.0
    return float(max(m.sum(axis=0).max(), m.sum(axis=1).max()))
