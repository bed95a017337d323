"""Finite Gabor systems, molecules and their l1-type norms."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from ..frames import Frame, Label
from .transforms import GaborError, as_window, discrete_gaussian, stft

logger = logging.getLogger(__name__)

Point = tuple[int, int]


@dataclass(frozen=True)
class FiniteGaborSystem:
    """Window g on Z_L and a label set of (x, omega) in Z_L x Z_L."""

    length: int
    window: np.ndarray
    labels: tuple[Point, ...]

    def __post_init__(self) -> None:
        window = as_window(self.window, self.length)
        window.setflags(write=False)
        labels = tuple((int(x) % self.length, int(w) % self.length) for x, w in self.labels)
        if len(set(labels)) != len(labels):
            raise GaborError("Gabor labels must be distinct")
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def full(cls, window: np.ndarray | list) -> FiniteGaborSystem:
        """All of Z_L x Z_L."""
        g = as_window(window)
        length = g.size
        return cls(length, g, tuple((x, w) for x in range(length) for w in range(length)))

    @classmethod
    def on_lattice(cls, window: np.ndarray | list, a: int, b: int) -> FiniteGaborSystem:
        """aZ_L x bZ_L; a and b must divide L."""
        g = as_window(window)
        length = g.size
        if a < 1 or b < 1 or length % a or length % b:
            raise GaborError(f"Lattice steps ({a}, {b}) must divide L={length}")
        points = tuple((x, w) for x in range(0, length, a) for w in range(0, length, b))
        return cls(length, g, points)

    @property
    def size(self) -> int:
        return len(self.labels)


def _shift_matrix(window: np.ndarray, points: Sequence[Point]) -> np.ndarray:
    length = window.size
    xs = np.array([p[0] for p in points], dtype=int)
    ws = np.array([p[1] for p in points], dtype=int)
    t = np.arange(length)
    translated = window[(t[:, None] - xs[None, :]) % length]
    return np.exp(2j * np.pi * np.outer(t, ws) / length) * translated


def gabor_frame(system: FiniteGaborSystem) -> Frame:
    """Frame of M_omega T_x g over the system's labels."""
    if not system.labels:
        raise GaborError("A Gabor system needs at least one label")
    return Frame(_shift_matrix(system.window, system.labels), system.labels)


def gabor_union(systems: Sequence[FiniteGaborSystem]) -> Frame:
    """Disjoint union of several systems on the same Z_L; labels become (tag, x, omega)."""
    if not systems:
        raise GaborError("gabor_union needs at least one system")
    length = systems[0].length
    if any(s.length != length for s in systems):
        raise GaborError("All systems in a union must share L")
    blocks = [_shift_matrix(s.window, s.labels) for s in systems]
    labels = tuple((tag, x, w) for tag, s in enumerate(systems) for x, w in s.labels)
    return Frame(np.hstack(blocks), labels)


def label_position(label: Label) -> Point:
    """(x, omega) of a Gabor or union label."""
    if not isinstance(label, tuple) or len(label) < 2:
        raise GaborError(f"Label {label!r} carries no time-frequency position")
    return int(label[-2]), int(label[-1])


@dataclass(frozen=True)
class MoleculeCheck:
    passed: bool
    worst_violation: float
    worst_label: Label | None


def molecule_check(
    envelope: np.ndarray,
    members: Frame,
    positions: Iterable[Point] | None = None,
    reference_window: np.ndarray | None = None,
) -> MoleculeCheck:
    """Check |V f(y, xi)| <= envelope(y - x, xi - omega) for every member at (x, omega).

    Offsets wrap mod L. Positions default to the last two entries of each label.
    """
    length = members.dim
    gamma = discrete_gaussian(length) if reference_window is None else reference_window
    gamma_env = np.asarray(envelope, dtype=float)
    if gamma_env.shape != (length, length):
        raise GaborError(f"Envelope must be {length}x{length}, got {gamma_env.shape}")
    points = (
        [label_position(lab) for lab in members.labels] if positions is None else list(positions)
    )
    worst, worst_label = 0.0, None
    for i, (x, w) in enumerate(points):
        magnitude = np.abs(stft(members.synthesis[:, i], gamma))
        bound = np.roll(gamma_env, shift=(x, w), axis=(0, 1))
        excess = float(np.max(magnitude - bound))
        if excess > worst:
            worst, worst_label = excess, members.labels[i]
    passed = worst <= get_settings().check_tol
    if not passed:
        logger.info("Molecule check failed at %r by %.3e", worst_label, worst)
    return MoleculeCheck(passed, worst, worst_label)


def stft_envelope(
    window: np.ndarray | list, reference_window: np.ndarray | None = None
) -> np.ndarray:
    """|V g|, the envelope every Gabor system with window g is a molecule for."""
    g = as_window(window)
    gamma = discrete_gaussian(g.size) if reference_window is None else reference_window
    return np.abs(stft(g, gamma))


def envelope_w_norm(envelope: np.ndarray) -> float:
    """Sum of the envelope over Z_L x Z_L (cells are single points)."""
    return float(np.sum(np.abs(envelope)))


def window_m1_norm(window: np.ndarray | list, reference_window: np.ndarray | None = None) -> float:
    """||V g||_1 against the discrete Gaussian."""
    return envelope_w_norm(stft_envelope(window, reference_window))
