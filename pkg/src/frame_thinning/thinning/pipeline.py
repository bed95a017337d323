"""Sparse subframe extraction: truncate, tile, thin per box, merge, certify.

The Parseval pipeline runs in five stages on (F, E, a):

1. truncate F at radius R against the reference frame E;
2. tile the index group by half-open cells of the lattice (2N Z)^d x {0};
3. thin every cell with finite removal on the truncated vectors;
4. take the union J and certify lambda_min(S_J);
5. report per-box and global densities of J.

In strict mode the constants C_eps, R and N are the ones the argument needs,
and the run passes only if every inequality of the chain is verified. In
practical mode R defaults to a small radius, the per-box budget is capped so
each cell keeps at most (1 + eps)|B_N(0)| labels, and the certificate is built
from measured quantities. R grows until that certificate is positive.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ..config import get_settings
from ..frames import (
    Frame,
    FrameBounds,
    FrameError,
    Label,
    bounds_of_operator,
    frame_bounds,
    frame_operator,
    is_parseval,
    parseval_normalize,
    subframe_bounds_sandwich,
)
from ..linalg import hermitian_eig, operator_norm
from ..localization import (
    LocalizationError,
    LocalizationMap,
    build_profile,
    density_table,
    truncate_frame,
    truncation_bound,
)
from .boxes import per_box_thin, tile_labels
from .models import BoxBranch, BoxReport, ThinningConfig, ThinningMode, ThinningResult
from .monitor import RunMonitor, ThinningStage
from .sizing import resolve_sizing

logger = logging.getLogger(__name__)


def _box_budget(config: ThinningConfig, outer: int, inner: int) -> float:
    budget = (1.0 + config.eps / 2.0) * outer
    if config.mode is ThinningMode.PRACTICAL:
        budget = min(budget, (1.0 + config.eps) * inner)
    return budget


def _map_boxes(fn: Callable[[int], BoxReport], centers: list[int], workers: int) -> list[BoxReport]:
    if workers <= 1 or len(centers) <= 1:
        return [fn(c) for c in centers]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, centers))


@dataclass(frozen=True)
class _Pass:
    """One truncate-tile-thin pass at a fixed truncation radius."""

    radius: int
    budget: float
    truncated_bounds: FrameBounds
    boxes: tuple[BoxReport, ...]
    selected: tuple[Label, ...]
    achieved: float
    gap: float
    measured_certificate: float


def _thin_pass(
    frame: Frame,
    reference: Frame,
    amap: LocalizationMap,
    config: ThinningConfig,
    radius: int,
    box_radius: int,
    monitor: RunMonitor,
) -> _Pass:
    settings = get_settings()
    group = amap.group
    outer, inner = group.box_size(box_radius + radius), group.box_size(box_radius)
    budget = _box_budget(config, outer, inner)

    monitor.enter(ThinningStage.TRUNCATING, f"R={radius}")
    truncated = truncate_frame(frame, reference, amap, radius)
    truncated_bounds = bounds_of_operator(frame_operator(truncated))

    monitor.enter(ThinningStage.TILING, f"N={box_radius}")
    tiles = tile_labels(amap, box_radius)
    centers = sorted(tiles)

    monitor.enter(ThinningStage.THINNING, f"{len(centers)} boxes, budget {budget:.2f}")

    def thin(center: int) -> BoxReport:
        return per_box_thin(truncated, tiles[center], center, group, budget, inner)

    boxes = tuple(_map_boxes(thin, centers, settings.max_workers))
    for box in boxes:
        if box.size and box.branch is not BoxBranch.KEPT:
            monitor.add_event(
                ThinningStage.THINNING, f"box {box.center}: {box.branch} {box.size}->{box.kept}"
            )

    chosen = {label for box in boxes for label in box.selected}
    selected = tuple(label for label in frame.labels if label in chosen)
    if selected:
        s_j = frame_operator(frame.subframe(selected))
        s_rj = frame_operator(truncated.subframe(selected))
    else:
        s_j = s_rj = np.zeros((frame.dim, frame.dim), dtype=complex)
    achieved = max(hermitian_eig(s_j).lambda_min, 0.0)
    gap = operator_norm(s_j - s_rj)
    ratios = [b.achieved_ratio for b in boxes if b.size and b.rank]
    c_prac = min(ratios, default=1.0) if selected else 0.0
    return _Pass(
        radius=radius,
        budget=budget,
        truncated_bounds=truncated_bounds,
        boxes=boxes,
        selected=selected,
        achieved=achieved,
        gap=gap,
        measured_certificate=c_prac * truncated_bounds.lower - gap,
    )


def extract_sparse_subframe_parseval(
    frame: Frame,
    reference: Frame,
    amap: LocalizationMap,
    config: ThinningConfig,
    monitor: RunMonitor | None = None,
) -> ThinningResult:
    """Thin a Parseval frame F localized against a Parseval reference E.

    In practical mode without an R override, R grows from
    ``practical_truncation_radius`` until the measured certificate
    C_prac lambda_min(S_R) - ||S_J - S_{R,J}|| is positive. At the group
    diameter truncation is exact, so the search always ends there.

    Raises:
        FrameError: If F is not Parseval.
        LocalizationError: If E is not Parseval or labels do not match.
        SizingError: If no admissible R or N exists.
    """
    settings = get_settings()
    tol = settings.check_tol
    monitor = monitor or RunMonitor()
    eps = config.eps
    try:
        if not is_parseval(frame):
            raise FrameError("extract_sparse_subframe_parseval requires a Parseval frame F")
        if not is_parseval(reference):
            raise LocalizationError("Reference frame E must be Parseval")

        monitor.enter(ThinningStage.PROFILING, f"M={frame.size}, N={frame.dim}")
        profile = build_profile(frame, reference, amap)
        group = amap.group

        monitor.enter(ThinningStage.SIZING, f"K_a={profile.covering:.4g}, mode={config.mode}")
        sizing = resolve_sizing(config, profile, settings.practical_truncation_radius)
        box_radius = sizing.box_radius
        logger.info(
            "Sizing: R=%d, N=%d, E(R)=%.3e, log C_eps=%.2f",
            sizing.truncation_radius,
            box_radius,
            sizing.truncation_error,
            sizing.log_c_eps,
        )

        current = _thin_pass(
            frame, reference, amap, config, sizing.truncation_radius, box_radius, monitor
        )
        practical = config.mode is ThinningMode.PRACTICAL
        if practical and config.truncation_radius is None:
            while current.measured_certificate <= 0.0 and current.radius < group.diameter:
                logger.info(
                    "Measured certificate %.3e <= 0 at R=%d; growing R",
                    current.measured_certificate,
                    current.radius,
                )
                monitor.add_event(
                    ThinningStage.SIZING,
                    f"certificate {current.measured_certificate:.3e} at R={current.radius}",
                )
                current = _thin_pass(
                    frame, reference, amap, config, current.radius + 1, box_radius, monitor
                )
            if current.radius != sizing.truncation_radius:
                sizing = replace(
                    sizing,
                    truncation_radius=current.radius,
                    truncation_error=truncation_bound(profile, current.radius),
                )

        monitor.enter(ThinningStage.CERTIFYING)
        boxes, selected = current.boxes, current.selected
        achieved, gap = current.achieved, current.gap
        truncated_bounds = current.truncated_bounds
        error = sizing.truncation_error
        failures: list[str] = []
        if not selected:
            failures.append("empty selection")
        else:
            s_j = frame_operator(frame.subframe(selected))
            if hermitian_eig(s_j - frame_operator(frame)).lambda_max > tol:
                failures.append("S_J exceeds S_F")

        over_budget = [box.center for box in boxes if not box.within_budget]
        if over_budget:
            failures.append(f"boxes over budget: {over_budget}")

        if config.mode is ThinningMode.STRICT:
            c_eps = sizing.c_eps
            certified = 0.5 * c_eps
            upper_ok = truncated_bounds.upper <= 1.0 + error + tol
            if not upper_ok or truncated_bounds.lower < 1.0 - error - tol:
                failures.append("S_R outside [(1-E(R)), (1+E(R))]")
            if error > 0.0 and not (
                np.log(error) < sizing.log_c_eps - np.log(2.0 * (1.0 + c_eps))
            ):
                failures.append("E(R) not below C_eps/(2(1+C_eps))")
            weak = [b.center for b in boxes if b.size and b.certified_ratio < c_eps]
            if weak:
                failures.append(f"box certificates below C_eps: {weak}")
            if achieved < certified:
                failures.append("achieved bound below C_eps/2")
        else:
            certified = current.measured_certificate
            if achieved <= 0.0:
                failures.append("selection does not span")
            if certified <= 0.0:
                failures.append(f"measured certificate not positive at R={current.radius}")
            if achieved < certified - tol:
                failures.append("achieved bound below measured certificate")

        monitor.enter(ThinningStage.DENSITY)
        density = density_table(amap, selected)
        parent_density = density_table(amap)
        if any(box.box_ratio > 1.0 + eps + tol for box in boxes):
            failures.append("box density ratio above 1 + eps")

        passed = not failures
        monitor.enter(
            ThinningStage.DONE,
            f"|J|={len(selected)}, achieved={achieved:.3e}, passed={passed}",
        )
        logger.info(
            "Thinning kept %d of %d (achieved %.3e, certified %.3e, passed=%s)",
            len(selected),
            frame.size,
            achieved,
            certified,
            passed,
        )
        return ThinningResult(
            config=config,
            selected=selected,
            sizing=sizing,
            certified_bound=float(certified),
            achieved_bound=float(achieved),
            truncated_bounds=truncated_bounds,
            truncation_gap=float(gap),
            boxes=boxes,
            density=density,
            parent_density=parent_density,
            passed=passed,
            failures=tuple(failures),
            events=monitor.events(),
            stages=monitor.get_state()["nodes"],
        )
    except Exception as exc:
        monitor.fail(str(exc))
        raise


def extract_sparse_subframe(
    frame: Frame,
    reference: Frame,
    amap: LocalizationMap,
    config: ThinningConfig,
    monitor: RunMonitor | None = None,
) -> ThinningResult:
    """Thin any spanning frame through its canonical Parseval frame.

    The subset J found for F# = S^-1/2 F is returned for F itself; its bounds
    are transported as A A' and B B', with A, B the bounds of F and A', B' those
    certified for F#[J].

    Raises:
        FrameError: If F or E does not span.
    """
    monitor = monitor or RunMonitor()
    sharp = parseval_normalize(frame)
    sharp_reference = parseval_normalize(reference)
    result = extract_sparse_subframe_parseval(sharp, sharp_reference, amap, config, monitor)

    parent = frame_bounds(frame)
    sandwich = subframe_bounds_sandwich(frame, result.selected) if result.selected else None
    original = sandwich.computed if sandwich else FrameBounds(0.0, 0.0)
    sharp_upper = sandwich.parseval_subframe.upper if sandwich else 0.0
    transported_lower = parent.lower * result.certified_bound
    failures = list(result.failures)
    if sandwich and not sandwich.holds:
        failures.append("sandwich bounds violated")
    if original.lower < transported_lower - get_settings().check_tol * max(1.0, parent.upper):
        failures.append("transported lower bound not met")
    monitor.add_event(ThinningStage.DONE, f"transported lower bound {transported_lower:.3e}")
    return replace(
        result,
        parent_bounds=parent,
        transported_lower=transported_lower,
        transported_upper=parent.upper * sharp_upper,
        original_bounds=original,
        passed=not failures,
        failures=tuple(failures),
        events=monitor.events(),
        stages=monitor.get_state()["nodes"],
    )
