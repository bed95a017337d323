"""Time-frequency shifts, the discrete Gaussian and the finite STFT on Z_L."""

from __future__ import annotations

import numpy as np

from ..errors import FrameThinningError

WRAP_COPIES = 3


class GaborError(FrameThinningError):
    """Raised on malformed windows, label sets or lattice parameters."""


def as_window(g: np.ndarray | list, length: int | None = None) -> np.ndarray:
    window = np.asarray(g, dtype=complex)
    if window.ndim != 1 or window.size == 0:
        raise GaborError(f"Window must be a nonempty vector, got shape {window.shape}")
    if length is not None and window.size != length:
        raise GaborError(f"Window has length {window.size}, expected {length}")
    return window


def time_frequency_shift(g: np.ndarray | list, x: int, omega: int) -> np.ndarray:
    """M_omega T_x g: t -> exp(2 pi i omega t / L) g((t - x) mod L)."""
    window = as_window(g)
    length = window.size
    t = np.arange(length)
    return np.exp(2j * np.pi * omega * t / length) * np.roll(window, x)


def discrete_gaussian(length: int) -> np.ndarray:
    """Periodised exp(-pi t^2 / L) over +-3 wrap copies, unit l2 norm.

    Symmetric: gamma(t) = gamma(L - t).
    """
    if length < 4:
        raise GaborError(f"Signal length must be >= 4, got {length}")
    t = np.arange(length)
    centred = np.where(t > length // 2, t - length, t).astype(float)
    copies = np.arange(-WRAP_COPIES, WRAP_COPIES + 1)
    shifted = centred[:, None] + copies[None, :] * length
    values = np.exp(-np.pi * shifted**2 / length).sum(axis=1)
    return (values / np.linalg.norm(values)).astype(complex)


def stft(h: np.ndarray | list, window: np.ndarray | list) -> np.ndarray:
    """V h(y, xi) = sum_t h(t) conj(window(t - y)) exp(-2 pi i xi t / L).

    Rows are indexed by y, columns by xi. For a unit-norm window the energy
    identity reads sum |V h|^2 = L ||h||^2.
    """
    signal = as_window(h)
    gamma = as_window(window, signal.size)
    shifted = np.stack([np.roll(gamma, y) for y in range(signal.size)])
    return np.fft.fft(signal[None, :] * shifted.conj(), axis=1)
