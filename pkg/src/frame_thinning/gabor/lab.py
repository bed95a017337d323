"""Beurling densities, reference lattices and Gabor thinning."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, replace

import numpy as np

from ..frames import Frame, frame_bounds
from ..localization import (
    DensityRow,
    DensityTable,
    IndexGroup,
    LocalizationMap,
    density_table,
)
from ..thinning import RunMonitor, ThinningConfig, ThinningResult, extract_sparse_subframe
from .systems import FiniteGaborSystem, Point, gabor_frame, label_position
from .transforms import GaborError, discrete_gaussian

logger = logging.getLogger(__name__)


def _plane(length: int) -> IndexGroup:
    return IndexGroup.cyclic(length, rank=2)


def beurling_density(
    labels: Iterable[Point],
    length: int,
    radii: Sequence[int] | None = None,
) -> DensityTable:
    """Sup/inf over centers z of |{lambda : |lambda - z| <= N}| / (2N)^2, wrapped max metric.

    Radii default to 1..floor(L/4); the report radius is the largest one.
    """
    plane = _plane(length)
    top = plane.max_density_radius
    radii = list(radii) if radii is not None else list(range(1, top + 1))
    if not radii or min(radii) < 1 or max(radii) > top:
        raise GaborError(f"Radii must lie in [1, {top}], got {radii}")
    weights = np.zeros(plane.size)
    for x, w in labels:
        weights[plane.index_of((x, w))] = 1.0
    rows = []
    for radius in radii:
        ratios = plane.box_sums(weights, radius) / (2 * radius) ** 2
        rows.append(DensityRow(radius, float(ratios.max()), float(ratios.min())))
    return DensityTable(rows=tuple(rows), report_radius=max(radii))


def reference_lattice(length: int) -> tuple[int, int]:
    """Square lattice step a = b near sqrt(L/2) with a | L, a^2 < L and L/a >= 4."""
    if length < 4:
        raise GaborError(f"Signal length must be >= 4, got {length}")
    step = max(1, math.isqrt(length // 2))
    while step > 1 and (length % step or step * step >= length or length // step < 4):
        step -= 1
    return step, step


def lattice_group(length: int, a: int, b: int) -> IndexGroup:
    """Z_{L/a} x Z_{L/b}; element (i, j) stands for the lattice point (a i, b j)."""
    if length % a or length % b:
        raise GaborError(f"Lattice steps ({a}, {b}) must divide L={length}")
    if a * b >= length:
        raise GaborError(f"Lattice ({a}, {b}) is not dense enough: ab={a * b} >= L={length}")
    return IndexGroup((length // a, length // b))


def gabor_reference(length: int, a: int, b: int) -> Frame:
    """Gaussian Gabor frame on aZ_L x bZ_L, labelled by the lattice group.

    Raises:
        GaborError: If the system fails to span.
    """
    group = lattice_group(length, a, b)
    system = FiniteGaborSystem(
        length, discrete_gaussian(length), tuple((a * i, b * j) for i, j in group.elements)
    )
    reference = Frame(gabor_frame(system).synthesis, group.elements)
    bounds = frame_bounds(reference)
    if not bounds.is_frame:
        raise GaborError(f"Reference lattice ({a}, {b}) does not give a frame at L={length}")
    logger.debug(
        "Reference lattice (%d, %d): bounds (%.4g, %.4g)", a, b, bounds.lower, bounds.upper
    )
    return reference


def gabor_map(labels: Iterable[object], length: int, a: int, b: int) -> LocalizationMap:
    """a(x, omega) = (floor(x/a), floor(omega/b)) on the lattice group."""
    group = lattice_group(length, a, b)
    labels = tuple(labels)
    return LocalizationMap.from_function(
        labels, group, lambda lab: (int(lab[-2]) // a, int(lab[-1]) // b)
    )


@dataclass(frozen=True)
class DensityRelation:
    """Both sides of D+(a; J) = (ab) D_B+(J) at matched radii."""

    group_radius: int
    plane_radius: int
    group_density: float
    beurling_density: float
    scaled_beurling: float


def density_relation(
    labels: Iterable[Point],
    length: int,
    a: int,
    b: int,
    group_radius: int | None = None,
    plane_radius: int | None = None,
) -> DensityRelation:
    """Group density of J under the lattice map next to (ab) times its Beurling density.

    The plane radius defaults to max(a, b) * group_radius; finite radii make the
    two sides agree only approximately.
    """
    points = list(labels)
    amap = gabor_map(points, length, a, b)
    n = amap.group.max_density_radius if group_radius is None else group_radius
    plane_n = max(a, b) * n if plane_radius is None else plane_radius
    group_upper = density_table(amap, points, max_radius=n).at(n).upper
    beurling_upper = beurling_density(points, length, [plane_n]).upper
    return DensityRelation(n, plane_n, group_upper, beurling_upper, a * b * beurling_upper)


def gabor_thin(
    system: FiniteGaborSystem,
    config: ThinningConfig,
    lattice: tuple[int, int] | None = None,
    monitor: RunMonitor | None = None,
) -> ThinningResult:
    """Thin a finite Gabor frame against a Gaussian reference on a coarser lattice.

    The result carries the lattice, the Beurling table of J and the density
    relation in ``extra``.
    """
    return thin_gabor_frame(gabor_frame(system), config, lattice, monitor)


def thin_gabor_frame(
    frame: Frame,
    config: ThinningConfig,
    lattice: tuple[int, int] | None = None,
    monitor: RunMonitor | None = None,
) -> ThinningResult:
    """gabor_thin for a frame on Z_L whose labels end in (x, omega).

    Union labels (tag, x, omega) are accepted; J keeps the frame's labels.
    """
    length = frame.dim
    a, b = lattice or reference_lattice(length)
    positions = [label_position(lab) for lab in frame.labels]
    reference = gabor_reference(length, a, b)
    amap = gabor_map(frame.labels, length, a, b)
    logger.info(
        "Gabor thinning: L=%d, |Lambda|=%d, lattice=(%d, %d), eps=%.3f",
        length,
        frame.size,
        a,
        b,
        config.eps,
    )
    result = extract_sparse_subframe(frame, reference, amap, config, monitor)
    chosen = set(result.selected)
    selected = [p for lab, p in zip(frame.labels, positions, strict=True) if lab in chosen]
    extra = {
        "lattice": (a, b),
        "beurling": beurling_density(set(selected), length) if selected else None,
        "relation": density_relation(set(selected), length, a, b) if selected else None,
    }
    return replace(result, extra=extra)
