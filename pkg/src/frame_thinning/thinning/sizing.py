"""Choice of the constant C_eps, the truncation radius R and the box radius N."""

from __future__ import annotations

import logging
import math

from ..localization import IndexGroup, LocalizationProfile, r0, truncation_bound
from ..removal import RemovalError, log_g_estimate, log_g_estimate_sharp
from .models import Sizing, SizingError, ThinningConfig, ThinningMode

logger = logging.getLogger(__name__)


def c_eps_argument(eps: float, covering: float) -> float:
    """eps / (2 (2 K_a - 1))."""
    return eps / (2.0 * (2.0 * covering - 1.0))


def log_c_eps(eps: float, covering: float) -> float:
    """log C_eps = log g(eps / (2(2K_a - 1))).

    Raises:
        SizingError: If the argument leaves (0, 1).
    """
    try:
        return log_g_estimate(c_eps_argument(eps, covering))
    except RemovalError as exc:
        raise SizingError(f"C_eps undefined for eps={eps}, K_a={covering}: {exc}", "", []) from exc


def _below_threshold(error: float, log_c: float) -> bool:
    """error < C/(2(1+C)), evaluated in log space so an underflowed C still counts."""
    if error <= 0.0:
        return True
    c = math.exp(log_c)
    return math.log(error) < log_c - math.log(2.0 * (1.0 + c))


def error_table(profile: LocalizationProfile) -> tuple[tuple[int, float], ...]:
    return tuple(
        (radius, truncation_bound(profile, radius)) for radius in range(profile.group.diameter + 1)
    )


def choose_R(eps: float, profile: LocalizationProfile) -> int:  # noqa: N802
    """Smallest R <= diameter with E(R) < C_eps / (2(1 + C_eps)).

    Raises:
        SizingError: With the E(R) table when no radius qualifies.
    """
    log_c = log_c_eps(eps, profile.covering)
    table = error_table(profile)
    for radius, error in table:
        if _below_threshold(error, log_c):
            logger.info("Chose R=%d (E(R)=%.3e, log C_eps=%.2f)", radius, error, log_c)
            return radius
    raise SizingError(
        f"No R <= {profile.group.diameter} has E(R) below C_eps/(2(1+C_eps)) "
        f"(log C_eps={log_c:.2f}); the group is too small for strict mode",
        "E(R)",
        list(table),
    )


def box_growth(eps: float, radius: int, box_radius: int, group: IndexGroup) -> float:
    """(1 + eps/2) |B_{N+R}(0)| / |B_N(0)|."""
    return (1.0 + eps / 2.0) * group.box_size(box_radius + radius) / group.box_size(box_radius)


def _tiles(group: IndexGroup, box_radius: int) -> bool:
    return all(modulus % (2 * box_radius) == 0 for modulus in group.moduli)


def choose_N(eps: float, radius: int, group: IndexGroup) -> int:  # noqa: N802
    """Smallest N with R < N <= L/4, growth <= 1 + eps and 2N dividing every modulus.

    Raises:
        SizingError: With the (N, growth, tiles) table when none exists.
    """
    table = []
    for box_radius in range(radius + 1, group.max_density_radius + 1):
        growth = box_growth(eps, radius, box_radius, group)
        tiles = _tiles(group, box_radius)
        table.append((box_radius, growth, tiles))
        if growth <= 1.0 + eps and tiles:
            logger.info("Chose N=%d (growth %.4f)", box_radius, growth)
            return box_radius
    raise SizingError(
        f"No N in ({radius}, {group.max_density_radius}] satisfies the growth condition and "
        f"tiles {group.shape}; grow the group",
        "N",
        table,
    )


def practical_box_radius(eps: float, radius: int, group: IndexGroup) -> int:
    """Smallest feasible tiling radius, else the largest tiling radius above R.

    Raises:
        SizingError: If no tiling radius R < N <= L/4 exists.
    """
    try:
        return choose_N(eps, radius, group)
    except SizingError as exc:
        tiling = [row[0] for row in exc.table if row[2]]
        if not tiling:
            raise
        logger.warning(
            "Growth condition infeasible for R=%d; using largest tiling radius N=%d",
            radius,
            tiling[-1],
        )
        return tiling[-1]


def resolve_sizing(
    config: ThinningConfig, profile: LocalizationProfile, practical_radius: int
) -> Sizing:
    """Fix C_eps, R and N for a run according to its mode and overrides."""
    group = profile.group
    log_c = log_c_eps(config.eps, profile.covering)
    if config.mode is ThinningMode.STRICT:
        radius = (
            config.truncation_radius
            if config.truncation_radius is not None
            else choose_R(config.eps, profile)
        )
        box_radius = (
            config.box_radius
            if config.box_radius is not None
            else choose_N(config.eps, radius, group)
        )
    else:
        radius = (
            config.truncation_radius if config.truncation_radius is not None else practical_radius
        )
        box_radius = (
            config.box_radius
            if config.box_radius is not None
            else practical_box_radius(config.eps, radius, group)
        )
    if not _tiles(group, box_radius):
        raise SizingError(f"Box radius {box_radius} does not tile {group.shape}", "N", [])
    return Sizing(
        covering=profile.covering,
        c_eps=math.exp(log_c),
        log_c_eps=log_c,
        log_c_eps_sharp=log_g_estimate_sharp(c_eps_argument(config.eps, profile.covering)),
        truncation_radius=radius,
        box_radius=box_radius,
        truncation_error=truncation_bound(profile, radius),
        admissible_radius=r0(profile),
        error_table=error_table(profile),
    )
