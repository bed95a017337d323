"""Orthonormal completion of an isometry."""

from __future__ import annotations

import numpy as np

from ..config import get_settings
from .spectral import LinalgError, as_matrix


def orthonormal_complement_basis(t: np.ndarray | list) -> np.ndarray:
    """Complete the orthonormal columns of ``t`` (M x N) to a unitary [T | T_perp].

    Gram-Schmidt runs over the canonical basis e_1..e_M in index order, with one
    reorthogonalisation pass, skipping basis vectors whose squared residual is
    below rank_tol. The result is reproducible for a given ``t``.

    Raises:
        LinalgError: If ``t`` is not an isometry (T*T != I) or has N > M.
    """
    settings = get_settings()
    m = as_matrix(t)
    rows, cols = m.shape
    if cols > rows:
        raise LinalgError(f"Isometry must have M >= N, got shape {m.shape}")
    if cols and np.linalg.norm(m.conj().T @ m - np.eye(cols)) > settings.isometry_tol:
        raise LinalgError("Input columns are not orthonormal")

    basis = m.copy()
    found: list[np.ndarray] = []
    for j in range(rows):
        if len(found) == rows - cols:
            break
        v = np.zeros(rows, dtype=complex)
        v[j] = 1.0
        for _ in range(2):
            v = v - basis @ (basis.conj().T @ v)
        norm = np.linalg.norm(v)
        if norm**2 <= settings.rank_tol:
            continue
        v = v / norm
        found.append(v)
        basis = np.column_stack([basis, v])

    if len(found) != rows - cols:
        raise LinalgError("Could not complete the isometry to a unitary matrix")
    if not found:
        return np.zeros((rows, 0), dtype=complex)
    return np.column_stack(found)
