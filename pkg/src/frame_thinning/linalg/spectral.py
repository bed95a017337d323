"""Dense Hermitian eigendecomposition and spectral functions.

Small matrices are diagonalised with the cyclic complex Jacobi method, larger
ones with LAPACK (numpy.linalg.eigh). Both paths share the same input checks,
ascending eigenvalue order and eigenvector phase convention, so callers never
see which solver ran.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from ..errors import FrameThinningError

logger = logging.getLogger(__name__)

ALLOWED_POWERS = (-1.0, -0.5, 0.5, 1.0)


class LinalgError(FrameThinningError):
    """Raised on malformed matrices (non-square, non-Hermitian, singular, ...)."""


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and unitary eigenvector matrix of a Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0]) if self.eigenvalues.size else 0.0

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1]) if self.eigenvalues.size else 0.0

    def recompose(self) -> np.ndarray:
        """Return V diag(lambda) V*."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a: np.ndarray | list) -> np.ndarray:
    """Return a finite complex 2-D copy of ``a``."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2:
        raise LinalgError(f"Expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise LinalgError("Matrix contains NaN or Inf entries")
    return m


def is_hermitian(a: np.ndarray, tol: float | None = None) -> bool:
    """True if ``a`` is square and ||A - A*|| <= tol * ||A|| (Frobenius)."""
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    tol = get_settings().herm_tol if tol is None else tol
    return bool(np.linalg.norm(a - a.conj().T) <= tol * np.linalg.norm(a))


def symmetrize(a: np.ndarray | list) -> np.ndarray:
    """Validate ``a`` as Hermitian and return (A + A*)/2.

    Raises:
        LinalgError: If ``a`` is not square or not Hermitian within herm_tol.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise LinalgError(f"Matrix is not square: shape {m.shape}")
    if not is_hermitian(m):
        raise LinalgError("Matrix is not Hermitian within tolerance")
    return (m + m.conj().T) / 2


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi sweeps on a Hermitian matrix (modified copy)."""
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return np.real(np.diag(a)).copy(), v

    for sweep in range(max_sweeps):
        # measured directly; ||A||^2 - ||diag A||^2 cancels below sqrt(machine eps)
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            logger.debug("Jacobi converged after %d sweeps (n=%d)", sweep, n)
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # columns: U = D P with D_qq = conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * col_p + c * np.conj(phase) * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * vp + c * np.conj(phase) * vq
    else:
        logger.warning("Jacobi did not converge in %d sweeps (n=%d)", max_sweeps, n)

    return np.real(np.diag(a)).copy(), v


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry of every column real positive."""
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    mags = np.abs(lead)
    mags[mags == 0.0] = 1.0
    return vectors * (np.conj(lead) / mags)


def hermitian_eig(a: np.ndarray | list) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Args:
        a: Square matrix, Hermitian within ``herm_tol``; symmetrised before use.

    Returns:
        Spectrum with ascending eigenvalues and phase-normalised eigenvectors.

    Raises:
        LinalgError: On non-square or non-Hermitian input.
    """
    settings = get_settings()
    h = symmetrize(a)
    n = h.shape[0]
    if n <= settings.jacobi_max_size:
        values, vectors = _jacobi(h, settings.eig_tol, settings.eig_max_sweeps)
    else:
        values, vectors = np.linalg.eigh(h)
    order = np.argsort(values, kind="stable")
    values = np.asarray(values, dtype=float)[order]
    vectors = _fix_phases(np.asarray(vectors, dtype=complex)[:, order])
    return Spectrum(eigenvalues=values, eigenvectors=vectors)


def lambda_min(a: np.ndarray) -> float:
    return hermitian_eig(a).lambda_min


def lambda_max(a: np.ndarray) -> float:
    return hermitian_eig(a).lambda_max


def psd_rank(spectrum: Spectrum, rank_tol: float | None = None) -> int:
    """Number of eigenvalues above rank_tol * lambda_max."""
    rank_tol = get_settings().rank_tol if rank_tol is None else rank_tol
    top = spectrum.lambda_max
    if top <= 0.0:
        return 0
    return int(np.count_nonzero(spectrum.eigenvalues > rank_tol * top))


def span_basis(a: np.ndarray, rank_tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the range of a PSD matrix."""
    spectrum = hermitian_eig(a)
    rank = psd_rank(spectrum, rank_tol)
    vectors = spectrum.eigenvectors
    return vectors[:, vectors.shape[1] - rank :]


def spectral_function(a: np.ndarray | list, p: float) -> np.ndarray:
    """Return A^p = V diag(lambda^p) V* for a PSD matrix.

    Args:
        a: Hermitian positive semidefinite matrix.
        p: One of -1, -1/2, 1/2, 1.

    Raises:
        LinalgError: For unsupported exponents, indefinite input, or a singular
            matrix with a negative exponent.
    """
    if p not in ALLOWED_POWERS:
        raise LinalgError(f"Unsupported exponent {p}; allowed {ALLOWED_POWERS}")
    settings = get_settings()
    spectrum = hermitian_eig(a)
    values = spectrum.eigenvalues
    top = max(spectrum.lambda_max, 0.0)
    floor = settings.rank_tol * top
    if values.size and values[0] < -max(floor, settings.herm_tol * top):
        raise LinalgError(f"Matrix is not positive semidefinite (lambda_min={values[0]:.3e})")
    if p < 0 and (values.size == 0 or values[0] <= floor):
        raise LinalgError("Singular matrix cannot be raised to a negative power")
    powered = np.clip(values, 0.0, None) ** p
    v = spectrum.eigenvectors
    return (v * powered) @ v.conj().T
