"""Seeded frame generators behind ``frame-thinning gen``.

Randomness comes from ``numpy.random.Generator(PCG64(seed))``. A random
frame draws the N x M real parts and then the N x M imaginary parts, each
standard normal in row-major order, before any normalisation.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from ..frames import Frame, FrameError, parseval_normalize
from ..gabor import FiniteGaborSystem, GaborError, discrete_gaussian, gabor_frame
from ..localization import IndexGroup, LocalizationMap

WindowKind = Literal["gaussian", "random", "impulse"]
ReferenceKind = Literal["basis", "banded"]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def onb_frame(dim: int) -> Frame:
    """Standard basis e_1..e_N."""
    if dim < 1:
        raise FrameError(f"N must be >= 1, got {dim}")
    return Frame(np.eye(dim, dtype=complex))


def random_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    return real + 1j * imag


def random_frame(dim: int, size: int, seed: int) -> Frame:
    """Gaussian N x M synthesis matrix; spans almost surely once M >= N."""
    if dim < 1 or size < dim:
        raise FrameError(f"Need 1 <= N <= M, got N={dim}, M={size}")
    return Frame(random_matrix(make_rng(seed), dim, size))


def random_parseval_frame(dim: int, size: int, seed: int) -> Frame:
    return parseval_normalize(random_frame(dim, size, seed))


def repeated_tail_frame(dim: int) -> Frame:
    """e_1..e_{N-1} followed by N copies of e_N / sqrt(N): Parseval, M = 2N - 1.

    Any N-element subframe that spans must keep one copy of e_N / sqrt(N), so
    its lower bound is at most 1/N.
    """
    if dim < 2:
        raise FrameError(f"N must be >= 2, got {dim}")
    head = np.eye(dim, dim - 1)
    tail = np.zeros((dim, dim))
    tail[-1, :] = 1.0 / np.sqrt(dim)
    return Frame(np.hstack([head, tail]).astype(complex))


def repeated_tail_forced_subframe(dim: int) -> Frame:
    """e_1..e_{N-1} and a single copy of e_N / sqrt(N)."""
    return repeated_tail_frame(dim).take(range(dim))


def make_window(length: int, kind: WindowKind, seed: int) -> np.ndarray:
    """Unit-norm window of the given kind on Z_L."""
    if kind == "gaussian":
        return discrete_gaussian(length)
    if kind == "impulse":
        window = np.zeros(length, dtype=complex)
        window[0] = 1.0
        return window
    if kind == "random":
        window = random_matrix(make_rng(seed), 1, length)[0]
        return window / np.linalg.norm(window)
    raise GaborError(f"Unknown window kind {kind!r}")


def gabor_system(
    length: int,
    kind: WindowKind = "gaussian",
    lattice: tuple[int, int] | None = None,
    seed: int = 0,
) -> FiniteGaborSystem:
    """Full grid Z_L x Z_L, or aZ_L x bZ_L when ``lattice`` is given."""
    window = make_window(length, kind, seed)
    if lattice is None:
        return FiniteGaborSystem.full(window)
    return FiniteGaborSystem.on_lattice(window, *lattice)


def gabor_grid_frame(
    length: int,
    kind: WindowKind = "gaussian",
    lattice: tuple[int, int] | None = None,
    seed: int = 0,
) -> Frame:
    return gabor_frame(gabor_system(length, kind, lattice, seed))


def _cyclic_distance(modulus: int, rows: np.ndarray, columns: np.ndarray) -> np.ndarray:
    cyclic = IndexGroup.cyclic(modulus)
    return cyclic.norms[cyclic.subtract(rows[:, None], columns[None, :])]


def banded_reference(group: IndexGroup, rng: np.random.Generator, width: int = 2) -> Frame:
    """Parseval-normalised [e_k | b_k] on Z_L x Z_2: b_k is random on |j - k| <= width."""
    modulus = group.moduli[0]
    signal = np.arange(modulus)
    near = _cyclic_distance(modulus, signal, signal) <= width
    bumps = near * random_matrix(rng, modulus, modulus) / (2 * width + 1)
    synthesis = np.empty((modulus, group.size), dtype=complex)
    synthesis[:, 0::2] = np.eye(modulus)
    synthesis[:, 1::2] = bumps
    return parseval_normalize(Frame(synthesis, group.elements))


def localized_configuration(
    modulus: int,
    multiplicity: int,
    decay: float,
    seed: int,
    reference: ReferenceKind = "basis",
) -> tuple[Frame, Frame, LocalizationMap]:
    """Parseval F in C^L localized against a Parseval reference E.

    With ``reference="basis"`` the group is Z_L and E is the standard basis.
    With ``"banded"`` the group is Z_L x Z_2 and E is ``banded_reference``, a
    redundant reference with a non-trivial self-localization sequence.

    Each group element g carries ``multiplicity`` labels (*g, c); f_(g,c) has
    random complex entries damped by exp(-|j - k| / decay), k the position of g,
    before the frame is Parseval-normalised. E is drawn after F.
    """
    group = IndexGroup.cyclic(modulus, torsion=2 if reference == "banded" else 1)
    rng = make_rng(seed)
    assignment = np.repeat(np.arange(group.size), multiplicity)
    positions = group.coordinates[assignment, 0]
    envelope = np.exp(-_cyclic_distance(modulus, np.arange(modulus), positions) / decay)
    synthesis = envelope * random_matrix(rng, modulus, assignment.size)
    labels = tuple((*g, c) for g in group.elements for c in range(multiplicity))
    frame = parseval_normalize(Frame(synthesis, labels))
    if reference == "banded":
        e = banded_reference(group, rng)
    else:
        e = Frame(np.eye(modulus, dtype=complex), group.elements)
    return frame, e, LocalizationMap(labels, group, assignment)
