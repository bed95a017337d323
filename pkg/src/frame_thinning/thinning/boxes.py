"""Lattice tiling of the index set and per-box thinning."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from ..frames import Frame, Label, frame_operator
from ..linalg import hermitian_eig, psd_rank, span_basis
from ..localization import IndexGroup, LocalizationError, LocalizationMap
from ..removal import finite_removal
from .models import BoxBranch, BoxReport

logger = logging.getLogger(__name__)


def tile_labels(amap: LocalizationMap, box_radius: int) -> dict[int, tuple[Label, ...]]:
    """Q_N(k) for every lattice center k of (2N Z)^d x {0}, empty cells included.

    Raises:
        LocalizationError: If the cells fail to partition the labels.
    """
    group = amap.group
    spacing = 2 * box_radius
    centers = group.lattice(spacing)
    cell = group.cell_of(spacing)[amap.assignment]
    tiles = {int(c): tuple(amap.labels[i] for i in np.flatnonzero(cell == c)) for c in centers}
    covered = sum(len(q) for q in tiles.values())
    if covered != len(amap.labels):
        raise LocalizationError(f"Cells cover {covered} of {len(amap.labels)} labels")
    return tiles


def _whole(
    element: tuple[int, ...],
    labels: tuple[Label, ...],
    rank: int,
    branch: BoxBranch,
    slack: float | None,
    budget: float,
    box_size: int,
) -> BoxReport:
    return BoxReport(
        center=element,
        size=len(labels),
        rank=rank,
        branch=branch,
        slack=slack,
        selected=labels,
        certified_ratio=1.0,
        achieved_ratio=1.0,
        box_ratio=len(labels) / box_size,
        budget=budget,
    )


def per_box_thin(
    truncated: Frame,
    box: Sequence[Label],
    center: int,
    group: IndexGroup,
    budget: float,
    box_size: int,
) -> BoxReport:
    """Thin one cell Q to at most ``budget`` labels.

    Cells within budget are kept whole. Larger cells are expressed in an
    orthonormal basis of span{f_{i,R} : i in Q} (rank r) and passed to
    finite_removal with slack b = budget / r - 1.
    """
    labels = tuple(box)
    element = group.element_at(center)
    if not labels:
        logger.debug("Box %s is empty", element)
        return _whole(element, (), 0, BoxBranch.KEPT, None, budget, box_size)

    sub = truncated.subframe(labels)
    labels = sub.labels
    s_q = frame_operator(sub)
    rank = psd_rank(hermitian_eig(s_q))

    if len(labels) <= budget:
        logger.debug("Box %s kept whole: %d <= %.2f", element, len(labels), budget)
        return _whole(element, labels, rank, BoxBranch.KEPT, None, budget, box_size)

    if rank == 0:
        logger.warning("Box %s has only zero truncated vectors; it contributes nothing", element)
        return BoxReport(
            element, len(labels), 0, BoxBranch.ZERO_RANK, None, (), 1.0, 1.0, 0.0, budget
        )

    slack = budget / rank - 1.0
    if slack <= 0.0:
        logger.warning(
            "Box %s: budget %.2f does not exceed rank %d; kept whole", element, budget, rank
        )
        return _whole(element, labels, rank, BoxBranch.OVERFULL, slack, budget, box_size)

    basis = span_basis(s_q)
    coordinates = Frame(basis.conj().T @ sub.synthesis, labels)
    certificate = finite_removal(coordinates, slack)
    logger.debug(
        "Box %s thinned: %d -> %d (rank %d, b=%.4f)",
        element,
        len(labels),
        certificate.size,
        rank,
        slack,
    )
    return BoxReport(
        center=element,
        size=len(labels),
        rank=rank,
        branch=BoxBranch.THINNED,
        slack=slack,
        selected=certificate.selected,
        certified_ratio=certificate.certified_ratio,
        achieved_ratio=certificate.achieved_ratio,
        box_ratio=certificate.size / box_size,
        budget=budget,
    )
