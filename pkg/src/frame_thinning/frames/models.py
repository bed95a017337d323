"""Frame value types.

A frame is stored column-wise in its synthesis matrix: column i is the vector
f_i in C^N, labelled by ``labels[i]``.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import FrameThinningError

Label = Hashable


class FrameError(FrameThinningError):
    """Raised on malformed frames or violated frame preconditions."""


@dataclass(frozen=True)
class Frame:
    """Indexed finite collection of M vectors in an N-dimensional space."""

    synthesis: np.ndarray
    labels: tuple[Label, ...] = field(default=())

    def __post_init__(self) -> None:
        matrix = np.array(self.synthesis, dtype=complex)
        if matrix.ndim != 2:
            raise FrameError(f"Synthesis matrix must be 2-D, got shape {matrix.shape}")
        if matrix.shape[1] < 1:
            raise FrameError("A frame needs at least one vector")
        if not np.all(np.isfinite(matrix)):
            raise FrameError("Frame vectors contain NaN or Inf entries")
        labels = tuple(self.labels) if self.labels else tuple(range(matrix.shape[1]))
        if len(labels) != matrix.shape[1]:
            raise FrameError(f"Got {len(labels)} labels for {matrix.shape[1]} vectors")
        if len(set(labels)) != len(labels):
            raise FrameError("Frame labels must be distinct")
        matrix.setflags(write=False)
        object.__setattr__(self, "synthesis", matrix)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_vectors(
        cls, vectors: Iterable[Sequence[complex]], labels: Sequence[Label] | None = None
    ) -> Frame:
        """Build a frame from row-wise vectors (one vector per item)."""
        rows = np.array([np.asarray(v, dtype=complex) for v in vectors])
        if rows.ndim == 1:
            rows = rows.reshape(-1, 1)
        return cls(synthesis=rows.T, labels=tuple(labels) if labels is not None else ())

    @property
    def dim(self) -> int:
        return int(self.synthesis.shape[0])

    @property
    def size(self) -> int:
        return int(self.synthesis.shape[1])

    @property
    def redundancy(self) -> float:
        """M / N (infinite for the 0-dimensional frame)."""
        return self.size / self.dim if self.dim else float("inf")

    @cached_property
    def _positions(self) -> dict[Label, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def vector(self, label: Label) -> np.ndarray:
        return self.synthesis[:, self._positions[label]]

    def indices_of(self, labels: Iterable[Label]) -> np.ndarray:
        """Column indices for ``labels``, in the order given.

        Raises:
            FrameError: On an unknown label.
        """
        try:
            return np.array([self._positions[label] for label in labels], dtype=int)
        except KeyError as exc:
            raise FrameError(f"Unknown frame label {exc.args[0]!r}") from exc

    def take(self, indices: Iterable[int]) -> Frame:
        """Subframe from column indices (must be nonempty)."""
        idx = np.asarray(list(indices), dtype=int)
        return Frame(self.synthesis[:, idx], tuple(self.labels[i] for i in idx))

    def subframe(self, labels: Iterable[Label]) -> Frame:
        """F[J] for a nonempty label subset J, kept in frame order."""
        idx = np.sort(self.indices_of(labels))
        return self.take(idx)

    def scaled(self, factor: complex) -> Frame:
        return Frame(self.synthesis * factor, self.labels)

    def union(self, other: Frame, tags: tuple[Hashable, Hashable] = (0, 1)) -> Frame:
        """Disjoint union; labels become (tag, label) pairs."""
        if other.dim != self.dim:
            raise FrameError(f"Dimension mismatch in union: {self.dim} vs {other.dim}")
        labels = tuple((tags[0], lab) for lab in self.labels) + tuple(
            (tags[1], lab) for lab in other.labels
        )
        return Frame(np.hstack([self.synthesis, other.synthesis]), labels)

    def gram(self) -> np.ndarray:
        """M x M Gram matrix G_ij = <f_j, f_i>."""
        return self.synthesis.conj().T @ self.synthesis

    def norms_squared(self) -> np.ndarray:
        return np.sum(np.abs(self.synthesis) ** 2, axis=0)


@dataclass(frozen=True)
class FrameBounds:
    """Optimal frame bounds: extreme eigenvalues of the frame operator."""

    lower: float
    upper: float

    @property
    def is_frame(self) -> bool:
        """True if the collection spans (lower bound positive)."""
        return self.lower > 0.0

    @property
    def condition(self) -> float:
        return self.upper / self.lower if self.lower > 0.0 else float("inf")


@dataclass(frozen=True)
class DualPair:
    """A frame, its canonical dual and the diagonal <f_i, S^-1 f_i>."""

    frame: Frame
    dual: Frame
    diagonal: np.ndarray

    def reconstruct(self, x: np.ndarray) -> np.ndarray:
        """Sum_i <x, dual_i> f_i."""
        coefficients = self.dual.synthesis.conj().T @ np.asarray(x, dtype=complex)
        return self.frame.synthesis @ coefficients
