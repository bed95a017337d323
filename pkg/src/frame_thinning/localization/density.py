"""Box-counting densities of label subsets pulled back through a localization map."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from ..frames import Label, tail_extremes
from .group import Element, LocalizationError, LocalizationMap


@dataclass(frozen=True)
class DensityRow:
    radius: int
    upper: float
    lower: float


@dataclass(frozen=True)
class DensityTable:
    """Per-radius sup/inf of |a^-1(B_N(k)) & J| / |B_N(0)| over centers k."""

    rows: tuple[DensityRow, ...]
    report_radius: int

    def at(self, radius: int) -> DensityRow:
        for row in self.rows:
            if row.radius == radius:
                return row
        raise LocalizationError(f"Radius {radius} is not in the density table")

    @property
    def upper(self) -> float:
        return self.at(self.report_radius).upper

    @property
    def lower(self) -> float:
        return self.at(self.report_radius).lower


def box_ratios(amap: LocalizationMap, subset: Iterable[Label] | None, radius: int) -> np.ndarray:
    """|a^-1(B_radius(k)) & J| / |B_radius(0)| for every center k."""
    group = amap.group
    counts = amap.fiber_counts(subset)
    return group.box_sums(counts, radius) / group.box_size(radius)


def density_table(
    amap: LocalizationMap, subset: Iterable[Label] | None = None, max_radius: int | None = None
) -> DensityTable:
    """Density table for radii 0..max_radius (default floor(L/4), the report radius)."""
    labels = None if subset is None else list(subset)
    report = amap.group.max_density_radius
    top = report if max_radius is None else max_radius
    rows = []
    for radius in range(top + 1):
        ratios = box_ratios(amap, labels, radius)
        rows.append(DensityRow(radius, float(ratios.max()), float(ratios.min())))
    return DensityTable(rows=tuple(rows), report_radius=min(report, top))


def upper_density(amap: LocalizationMap, subset: Iterable[Label] | None = None) -> float:
    """Sup over centers at the report radius N* = floor(L/4)."""
    return density_table(amap, subset).upper


def lower_density(amap: LocalizationMap, subset: Iterable[Label] | None = None) -> float:
    """Inf over centers at the report radius N* = floor(L/4)."""
    return density_table(amap, subset).lower


@dataclass(frozen=True)
class WindowedDensity:
    ratios: tuple[float, ...]
    liminf: float
    limsup: float


def windowed_density(
    amap: LocalizationMap,
    subset: Iterable[Label] | None,
    centers: Sequence[Element | int],
    radii: Sequence[int],
) -> WindowedDensity:
    """Ratios |a^-1(B_n(k_n)) & J| / |B_n(0)| along a window sequence.

    Raises:
        LocalizationError: If the sequences differ in length or are empty.
    """
    if len(centers) != len(radii) or not radii:
        raise LocalizationError("Centers and radii must be nonempty and of equal length")
    group = amap.group
    counts = amap.fiber_counts(None if subset is None else list(subset))
    ratios = []
    for center, radius in zip(centers, radii, strict=True):
        members = group.box(center, radius)
        ratios.append(float(counts[members].sum() / group.box_size(radius)))
    low, high = tail_extremes(ratios)
    return WindowedDensity(tuple(ratios), low, high)
