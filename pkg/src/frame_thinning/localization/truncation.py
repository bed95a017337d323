"""Truncated expansions f_{i,R} and the certified truncation error check."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from ..frames import Frame, Label, is_parseval
from ..linalg import operator_norm, schur_norm_bound
from .group import LocalizationError, LocalizationMap
from .profile import LocalizationProfile, build_profile, r0, reference_synthesis

logger = logging.getLogger(__name__)


def _truncated_synthesis(
    frame: Frame, reference: Frame, amap: LocalizationMap, radius: int
) -> np.ndarray:
    group = amap.group
    e = reference_synthesis(reference, group)
    coefficients = e.conj().T @ frame.synthesis
    points = amap.assignment_for(frame.labels)
    offsets = group.subtract(points[None, :], np.arange(group.size)[:, None])
    return e @ np.where(group.norms[offsets] < radius, coefficients, 0.0)


def truncate_frame(
    frame: Frame, reference: Frame, amap: LocalizationMap, radius: int, tol: float | None = None
) -> Frame:
    """f_{i,R} = sum over |k - a(i)| < R of <f_i, e_k> e_k.

    Raises:
        LocalizationError: If E is not Parseval or labels do not match.
    """
    if not is_parseval(reference, tol):
        raise LocalizationError("Truncation requires a Parseval reference frame")
    amap.check_frame(frame)
    return Frame(_truncated_synthesis(frame, reference, amap, radius), frame.labels)


@dataclass(frozen=True)
class TruncationCheck:
    """Both sides of ||S_J - S_{R,J}|| <= E(R) and of the Schur chain behind it.

    ``bound`` equals 3 K_a Delta(R) ||s||_1 for Parseval F; otherwise it is
    K_a Delta(R) ||s||_1 (||T_J|| + ||T_{R,J}||) and ``scaled`` is set.
    """

    radius: int
    admissible_radius: int
    operator_gap: float
    bound: float
    analysis_gap: float
    schur_value: float
    chain_bound: float
    scaled: bool
    holds: bool
    chain_holds: bool

    @property
    def asserted(self) -> bool:
        return self.radius >= self.admissible_radius


def truncation_error_check(
    frame: Frame,
    reference: Frame,
    amap: LocalizationMap,
    radius: int,
    subset: Iterable[Label],
    profile: LocalizationProfile | None = None,
    require_admissible: bool = False,
) -> TruncationCheck:
    """Compare ||S_J - S_{R,J}|| with E(R) and ||T_J - T_{R,J}|| with K_a Delta(R) ||s||_1.

    Raises:
        LocalizationError: On a non-Parseval reference, or when
            ``require_admissible`` is set and R is below R0.
    """
    profile = profile or build_profile(frame, reference, amap)
    admissible = r0(profile)
    if require_admissible and radius < admissible:
        raise LocalizationError(f"Radius {radius} is below R0 = {admissible}")

    truncated = truncate_frame(frame, reference, amap, radius)
    labels = list(subset)
    e = reference_synthesis(reference, amap.group)
    chain = profile.covering * profile.tail(radius) * profile.s_l1
    slack = get_settings().check_tol
    if not labels:
        return TruncationCheck(
            radius, admissible, 0.0, 0.0, 0.0, 0.0, chain, False, True, True
        )

    idx = frame.indices_of(labels)
    phi_j = frame.synthesis[:, idx]
    phi_rj = truncated.synthesis[:, idx]
    diff = phi_j - phi_rj
    operator_gap = operator_norm(phi_j @ phi_j.conj().T - phi_rj @ phi_rj.conj().T)
    analysis_gap = operator_norm(diff)
    schur_value = schur_norm_bound(e.conj().T @ diff)

    scaled = not is_parseval(frame)
    if scaled:
        bound = chain * (operator_norm(phi_j) + operator_norm(phi_rj))
    else:
        bound = 3.0 * chain
    holds = operator_gap <= bound + slack * max(1.0, bound)
    chain_holds = analysis_gap <= schur_value + slack and schur_value <= chain + slack * max(
        1.0, chain
    )
    if radius >= admissible and not (holds and chain_holds):
        logger.warning(
            "Truncation bound violated at R=%d: gap %.3e vs E(R) %.3e", radius, operator_gap, bound
        )
    return TruncationCheck(
        radius=radius,
        admissible_radius=admissible,
        operator_gap=operator_gap,
        bound=bound,
        analysis_gap=analysis_gap,
        schur_value=schur_value,
        chain_bound=chain,
        scaled=scaled,
        holds=holds,
        chain_holds=chain_holds,
    )
