"""Finite index groups Z_{L_1} x ... x Z_{L_d} x Z_D with the wrapped max metric."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import FrameThinningError
from ..frames import Frame, Label

Element = tuple[int, ...]


class LocalizationError(FrameThinningError):
    """Raised on label mismatches, bad groups or inadmissible truncation radii."""


@dataclass(frozen=True)
class IndexGroup:
    """Product of cyclic groups with free moduli ``moduli`` and torsion ``torsion``.

    Elements are integer tuples, one entry per free coordinate plus a trailing
    torsion entry when torsion > 1. They are enumerated in row-major order.
    """

    moduli: tuple[int, ...]
    torsion: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if not self.moduli:
            raise LocalizationError("An index group needs at least one free coordinate")
        if any(m < 4 for m in self.moduli):
            raise LocalizationError(f"Free moduli must be >= 4, got {self.moduli}")
        if self.torsion < 1:
            raise LocalizationError(f"Torsion must be >= 1, got {self.torsion}")

    @classmethod
    def cyclic(cls, modulus: int, rank: int = 1, torsion: int = 1) -> IndexGroup:
        """Z_L^d x Z_D."""
        return cls(moduli=(modulus,) * rank, torsion=torsion)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.moduli + ((self.torsion,) if self.torsion > 1 else ())

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @cached_property
    def coordinates(self) -> np.ndarray:
        """(size, len(shape)) array of element coordinates, row-major."""
        grids = np.indices(self.shape).reshape(len(self.shape), -1)
        coords = grids.T.copy()
        coords.setflags(write=False)
        return coords

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(tuple(int(c) for c in row) for row in self.coordinates)

    @cached_property
    def norms(self) -> np.ndarray:
        """|g| for every element, in element order."""
        shape = np.asarray(self.shape)
        wrapped = np.minimum(self.coordinates, shape - self.coordinates)
        norms = wrapped.max(axis=1)
        norms.setflags(write=False)
        return norms

    @property
    def diameter(self) -> int:
        return int(self.norms.max())

    @property
    def max_density_radius(self) -> int:
        """Largest radius whose boxes do not wrap onto themselves: floor(min L / 4)."""
        return min(self.moduli) // 4

    def index_of(self, element: Element | Sequence[int] | int) -> int:
        coords = np.atleast_1d(np.asarray(element, dtype=int))
        if coords.size != len(self.shape):
            raise LocalizationError(f"Element {element!r} does not belong to a group of {self}")
        return int(np.ravel_multi_index(tuple(np.mod(coords, self.shape)), self.shape))

    def element_at(self, index: int) -> Element:
        return self.elements[index]

    def subtract(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Index of x - y for element-index arrays (broadcasting)."""
        shape = np.asarray(self.shape)
        diff = np.mod(self.coordinates[x] - self.coordinates[y], shape)
        return np.ravel_multi_index(tuple(np.moveaxis(diff, -1, 0)), self.shape)

    def distance(self, x: Element, y: Element) -> int:
        return int(self.norms[self.subtract(np.asarray(self.index_of(x)), self.index_of(y))])

    def box(self, center: Element | int, radius: int) -> np.ndarray:
        """Sorted element indices of B_radius(center)."""
        if radius < 0:
            raise LocalizationError(f"Box radius must be >= 0, got {radius}")
        c = center if isinstance(center, int | np.integer) else self.index_of(center)
        all_idx = np.arange(self.size)
        offsets = self.subtract(all_idx, np.full(self.size, c))
        return np.flatnonzero(self.norms[offsets] <= radius)

    def box_size(self, radius: int) -> int:
        """|B_radius(0)|, the same for every center."""
        return int(np.count_nonzero(self.norms <= radius))

    def box_sums(self, weights: np.ndarray, radius: int) -> np.ndarray:
        """Sum of ``weights`` over B_radius(k) for every center k, in element order."""
        grid = np.asarray(weights, dtype=float).reshape(self.shape)
        total = np.zeros_like(grid)
        axes = tuple(range(len(self.shape)))
        for offset in self.coordinates[self.norms <= radius]:
            total += np.roll(grid, shift=tuple(-int(o) for o in offset), axis=axes)
        return total.ravel()

    def lattice(self, spacing: int) -> np.ndarray:
        """Element indices of (spacing Z)^d x {0}.

        Raises:
            LocalizationError: If spacing does not divide every free modulus.
        """
        if spacing < 1 or any(m % spacing for m in self.moduli):
            raise LocalizationError(f"Spacing {spacing} does not divide moduli {self.moduli}")
        free = self.coordinates[:, : self.rank]
        on_lattice = np.all(free % spacing == 0, axis=1)
        if self.torsion > 1:
            on_lattice &= self.coordinates[:, -1] == 0
        return np.flatnonzero(on_lattice)

    def cell_of(self, spacing: int) -> np.ndarray:
        """Lattice-center index of the half-open cell k + [-N, N)^d x Z_D holding each element.

        ``spacing`` is 2N; cells exactly partition the group.
        """
        half = spacing // 2
        free = self.coordinates[:, : self.rank]
        centers = np.mod(np.floor_divide(free + half, spacing) * spacing, self.moduli)
        if self.torsion > 1:
            centers = np.column_stack([centers, np.zeros(self.size, dtype=int)])
        return np.ravel_multi_index(tuple(centers.T), self.shape)


@dataclass(frozen=True)
class LocalizationMap:
    """Assignment a: I -> G of frame labels to group elements."""

    labels: tuple[Label, ...]
    group: IndexGroup
    assignment: np.ndarray

    def __post_init__(self) -> None:
        assignment = np.asarray(self.assignment, dtype=int)
        if assignment.shape != (len(self.labels),):
            raise LocalizationError(
                f"Assignment has shape {assignment.shape} for {len(self.labels)} labels"
            )
        if assignment.size and (assignment.min() < 0 or assignment.max() >= self.group.size):
            raise LocalizationError("Assignment points outside the group")
        assignment.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def from_function(
        cls, labels: Iterable[Label], group: IndexGroup, fn: Callable[[Label], Element]
    ) -> LocalizationMap:
        labels = tuple(labels)
        return cls(labels, group, np.array([group.index_of(fn(lab)) for lab in labels], dtype=int))

    @classmethod
    def identity(cls, group: IndexGroup) -> LocalizationMap:
        """a = id on the labels group.elements."""
        return cls(group.elements, group, np.arange(group.size))

    @cached_property
    def _positions(self) -> dict[Label, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def check_frame(self, frame: Frame) -> None:
        if set(frame.labels) != set(self.labels) or len(frame.labels) != len(self.labels):
            raise LocalizationError("Frame labels do not match the localization map")

    def assignment_for(self, labels: Iterable[Label]) -> np.ndarray:
        """a(i) as element indices, for ``labels`` in the order given."""
        try:
            return self.assignment[[self._positions[lab] for lab in labels]].astype(int)
        except KeyError as exc:
            raise LocalizationError(f"Label {exc.args[0]!r} is not in the map") from exc

    def fiber_counts(self, subset: Iterable[Label] | None = None) -> np.ndarray:
        """|a^-1(k) & J| for every element k (J = all labels by default)."""
        points = self.assignment if subset is None else self.assignment_for(list(subset))
        return np.bincount(points, minlength=self.group.size).astype(float)
