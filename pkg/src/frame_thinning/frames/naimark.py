"""Naimark complement of a Parseval frame."""

from __future__ import annotations

import numpy as np

from ..linalg import orthonormal_complement_basis
from .models import Frame, FrameError
from .operators import is_parseval


def naimark_complement(frame: Frame, tol: float | None = None) -> Frame:
    """Complementary Parseval frame f'_i = (1 - P) e_i in dimension M - N.

    With T = Phi* (an M x N isometry, Phi the synthesis matrix) and T_perp its
    orthonormal completion, the complement's synthesis matrix is T_perp*, so
    ||sum c_i f_i||^2 + ||sum c_i f'_i||^2 = sum |c_i|^2 for every c.
    M = N yields the 0-dimensional frame.

    Raises:
        FrameError: If the frame is not Parseval.
    """
    if not is_parseval(frame, tol):
        raise FrameError("naimark_complement requires a Parseval frame")
    isometry = frame.synthesis.conj().T
    completion = orthonormal_complement_basis(isometry)
    return Frame(completion.conj().T, frame.labels)


def naimark_energy_gap(frame: Frame, complement: Frame, coefficients: np.ndarray) -> float:
    """| ||Phi c||^2 + ||Phi' c||^2 - ||c||^2 | for one coefficient vector."""
    c = np.asarray(coefficients, dtype=complex)
    total = (
        np.linalg.norm(frame.synthesis @ c) ** 2 + np.linalg.norm(complement.synthesis @ c) ** 2
    )
    return float(abs(total - np.linalg.norm(c) ** 2))
