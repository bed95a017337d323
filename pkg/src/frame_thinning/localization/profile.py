"""Localization sequences r and s, tail sums and the covering constant K_a."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..frames import Frame
from .group import IndexGroup, LocalizationError, LocalizationMap

logger = logging.getLogger(__name__)


def reference_synthesis(reference: Frame, group: IndexGroup) -> np.ndarray:
    """Synthesis matrix of E with columns in group element order.

    Raises:
        LocalizationError: If E is not indexed by exactly the elements of G.
    """
    if reference.size != group.size or set(reference.labels) != set(group.elements):
        raise LocalizationError("Reference frame labels must be exactly the group elements")
    return reference.synthesis[:, reference.indices_of(group.elements)]


def _offset_sup(group: IndexGroup, values: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """sup of values[i, k] over pairs with rows[i] - k = g, per offset g."""
    columns = np.arange(group.size)
    offsets = group.subtract(rows[:, None], columns[None, :])
    sup = np.zeros(group.size)
    np.maximum.at(sup, offsets.ravel(), values.ravel())
    return sup


def localization_sequence(frame: Frame, amap: LocalizationMap, reference: Frame) -> np.ndarray:
    """r(g) = max |<f_i, e_k>| over a(i) - k = g, indexed by group element.

    Raises:
        LocalizationError: On label mismatches between F, a and E.
    """
    amap.check_frame(frame)
    e = reference_synthesis(reference, amap.group)
    cross = np.abs(frame.synthesis.conj().T @ e)
    return _offset_sup(amap.group, cross, amap.assignment_for(frame.labels))


def self_localization_sequence(reference: Frame, group: IndexGroup) -> np.ndarray:
    """s(g) = max |<e_k, e_l>| over k - l = g; s(0) = max ||e_k||^2."""
    e = reference_synthesis(reference, group)
    gram = np.abs(e.conj().T @ e)
    return _offset_sup(group, gram, np.arange(group.size))


def tail_sum(r: np.ndarray, group: IndexGroup, radius: int) -> float:
    """Delta(R) = sum of r(g) over |g| >= R."""
    return float(np.sum(np.asarray(r)[group.norms >= radius]))


def covering_constant(amap: LocalizationMap) -> float:
    """Smallest K >= 1 with |a^-1(B_N(k))| <= K |B_N(0)| for all k and 0 <= N <= diameter."""
    group = amap.group
    counts = amap.fiber_counts()
    worst = 1.0
    for radius in range(group.diameter + 1):
        ratio = group.box_sums(counts, radius).max() / group.box_size(radius)
        worst = max(worst, float(ratio))
    return worst


@dataclass(frozen=True)
class LocalizationProfile:
    group: IndexGroup
    amap: LocalizationMap
    r: np.ndarray
    s: np.ndarray
    covering: float

    @property
    def r_l1(self) -> float:
        return float(self.r.sum())

    @property
    def s_l1(self) -> float:
        return float(self.s.sum())

    def tail(self, radius: int) -> float:
        return tail_sum(self.r, self.group, radius)


def build_profile(frame: Frame, reference: Frame, amap: LocalizationMap) -> LocalizationProfile:
    """Bundle r, s and K_a for (F, E, a)."""
    r = localization_sequence(frame, amap, reference)
    s = self_localization_sequence(reference, amap.group)
    covering = covering_constant(amap)
    logger.info(
        "Localization profile on %s: |r|_1=%.4g, |s|_1=%.4g, K_a=%.4g",
        amap.group.shape,
        r.sum(),
        s.sum(),
        covering,
    )
    return LocalizationProfile(amap.group, amap, r, s, covering)


def truncation_bound(profile: LocalizationProfile, radius: int) -> float:
    """E(R) = 3 K_a Delta(R) ||s||_1."""
    return 3.0 * profile.covering * profile.tail(radius) * profile.s_l1


def r0(profile: LocalizationProfile) -> int:
    """Smallest R with Delta(R) <= 1 / (K_a ||s||_1); at most diameter + 1."""
    threshold = 1.0 / (profile.covering * profile.s_l1) if profile.s_l1 > 0.0 else np.inf
    for radius in range(profile.group.diameter + 2):
        if profile.tail(radius) <= threshold:
            return radius
    return profile.group.diameter + 1
