"""Randomised property suites behind ``frame-thinning verify``.

Every suite is deterministic for a given seed: trial t draws from PCG64(seed + t).
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..config import get_settings
from ..frames import (
    Frame,
    canonical_dual,
    frame_operator,
    naimark_complement,
    naimark_energy_gap,
    subframe_bounds_sandwich,
)
from ..gabor import FiniteGaborSystem, gabor_frame
from ..localization import (
    IndexGroup,
    LocalizationMap,
    box_ratios,
    build_profile,
    r0,
    truncation_error_check,
)
from .generators import (
    localized_configuration,
    make_rng,
    make_window,
    random_frame,
    random_matrix,
    random_parseval_frame,
)

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    seed: int
    columns: tuple[str, ...]
    rows: list[tuple[Any, ...]] = field(default_factory=list)
    outcomes: list[bool] = field(default_factory=list)

    def record(self, passed: bool, *row: Any) -> None:
        self.outcomes.append(bool(passed))
        self.rows.append((*row, bool(passed)))

    @property
    def total(self) -> int:
        return len(self.outcomes)

    @property
    def passed_count(self) -> int:
        return sum(self.outcomes)

    @property
    def passed(self) -> bool:
        return self.total > 0 and all(self.outcomes)


def _dims(rng: np.random.Generator, low: int = 2, high: int = 6) -> tuple[int, int]:
    n = int(rng.integers(low, high + 1))
    m = int(rng.integers(n + 1, 3 * n + 1))
    return n, m


def naimark_suite(seed: int, trials: int = 100, vectors: int = 100) -> SuiteResult:
    """||Phi c||^2 + ||Phi' c||^2 = ||c||^2 for random Parseval frames."""
    tol = get_settings().check_tol
    result = SuiteResult("naimark", seed, ("trial", "N", "M", "worst_gap", "passed"))
    for t in range(trials):
        rng = make_rng(seed + t)
        n, m = _dims(rng)
        frame = random_parseval_frame(n, m, seed + t)
        complement = naimark_complement(frame)
        coefficients = random_matrix(rng, vectors, m)
        worst = max(
            naimark_energy_gap(frame, complement, c) / max(1.0, float(np.linalg.norm(c)) ** 2)
            for c in coefficients
        )
        result.record(worst <= tol, t, n, m, worst)
    return result


def truncation_suite(seed: int, trials: int = 50) -> SuiteResult:
    """||S_J - S_{R,J}|| <= E(R) and the Schur chain, for every R >= R0 on Z_32 and Z_64.

    Trials alternate between the standard basis and a banded redundant reference.
    """
    result = SuiteResult(
        "truncation",
        seed,
        (
            "trial",
            "L",
            "reference",
            "multiplicity",
            "decay",
            "s_l1",
            "R0",
            "radii",
            "worst_margin",
            "passed",
        ),
    )
    for t in range(trials):
        rng = make_rng(seed + t)
        modulus = 32 if (t // 2) % 2 == 0 else 64
        kind = "banded" if t % 2 else "basis"
        multiplicity = int(rng.integers(1, 3))
        decay = float(rng.uniform(0.5, 2.0))
        frame, reference, amap = localized_configuration(
            modulus, multiplicity, decay, seed + t, reference=kind
        )
        profile = build_profile(frame, reference, amap)
        mask = rng.random(frame.size) < 0.5
        subset = [lab for lab, keep in zip(frame.labels, mask, strict=True) if keep]
        admissible = r0(profile)
        checks = [
            truncation_error_check(frame, reference, amap, radius, subset, profile=profile)
            for radius in range(admissible, profile.group.diameter + 1)
        ]
        margin = min((c.bound - c.operator_gap for c in checks), default=float("inf"))
        ok = all(c.holds and c.chain_holds for c in checks)
        result.record(
            ok,
            t,
            modulus,
            kind,
            multiplicity,
            decay,
            profile.s_l1,
            admissible,
            len(checks),
            margin,
        )
    return result


def sandwich_suite(seed: int, trials: int = 100) -> SuiteResult:
    """A A' <= lambda_min(S_{F[J]}) and lambda_max(S_{F[J]}) <= B B' on random (F, J)."""
    result = SuiteResult(
        "sandwich", seed, ("trial", "N", "M", "J", "lower_slack", "upper_slack", "passed")
    )
    for t in range(trials):
        rng = make_rng(seed + t)
        n, m = _dims(rng)
        frame = random_frame(n, m, seed + t)
        size = int(rng.integers(n, m + 1))
        subset = sorted(int(i) for i in rng.choice(m, size=size, replace=False))
        report = subframe_bounds_sandwich(frame, [frame.labels[i] for i in subset])
        lower_slack = report.computed.lower - report.predicted_lower
        upper_slack = report.predicted_upper - report.computed.upper
        result.record(report.holds, t, n, m, size, lower_slack, upper_slack)
    return result


def densities_suite(seed: int, trials: int = 20) -> SuiteResult:
    """Exact box counts: even residues on Z_64, union additivity, the trace identity."""
    tol = get_settings().check_tol
    result = SuiteResult("densities", seed, ("case", "detail", "value", "passed"))

    group = IndexGroup.cyclic(64)
    amap = LocalizationMap.identity(group)
    evens = [e for e in group.elements if e[0] % 2 == 0]
    ratios = box_ratios(amap, evens, 16)
    allowed = (16 / 33, 17 / 33)
    ok = all(min(abs(r - a) for a in allowed) <= 1e-15 for r in ratios)
    result.record(ok, "even-residues", "Z_64 N=16", float(ratios.max()))

    for t in range(trials):
        rng = make_rng(seed + t)
        modulus = int(rng.choice([16, 32]))
        target = IndexGroup.cyclic(modulus)
        sizes = rng.integers(1, 2 * modulus, size=2)
        maps = [
            LocalizationMap(tuple(range(s)), target, rng.integers(0, modulus, size=s))
            for s in sizes
        ]
        labels = tuple((tag, lab) for tag, part in enumerate(maps) for lab in part.labels)
        union = LocalizationMap(labels, target, np.concatenate([p.assignment for p in maps]))
        radius = int(rng.integers(0, target.max_density_radius + 1))
        joint = box_ratios(union, None, radius) * target.box_size(radius)
        parts = sum(box_ratios(p, None, radius) * target.box_size(radius) for p in maps)
        gap = float(np.max(np.abs(joint - parts)))
        result.record(gap <= tol, "union-additivity", f"Z_{modulus} N={radius}", gap)

        n, m = _dims(rng)
        pair = canonical_dual(random_frame(n, m, seed + t))
        trace_gap = abs(float(np.sum(pair.diagonal).real) - n)
        result.record(trace_gap <= m * tol, "trace-identity", f"N={n} M={m}", trace_gap)
    return result


def gabor_tight_suite(
    seed: int, trials: int = 5, lengths: tuple[int, ...] = (8, 12, 16)
) -> SuiteResult:
    """Full-grid Gabor frame operators equal L ||g||^2 I for the Gaussian and random windows."""
    tol = get_settings().check_tol
    result = SuiteResult("gabor-tight", seed, ("L", "window", "deviation", "redundancy", "passed"))
    for length in lengths:
        windows = [("gaussian", make_window(length, "gaussian", seed))]
        windows += [
            (f"random-{t}", make_window(length, "random", seed + t)) for t in range(trials)
        ]
        for name, g in windows:
            frame: Frame = gabor_frame(FiniteGaborSystem.full(g))
            target = length * float(np.linalg.norm(g)) ** 2
            deviation = float(
                np.max(np.abs(frame_operator(frame) - target * np.eye(length))) / target
            )
            redundancy = frame.redundancy
            ok = deviation <= tol and redundancy == length
            result.record(ok, length, name, deviation, redundancy)
    return result


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "naimark": naimark_suite,
    "truncation": truncation_suite,
    "sandwich": sandwich_suite,
    "densities": densities_suite,
    "gabor-tight": gabor_tight_suite,
}


def run_suite(name: str, seed: int | None = None, trials: int | None = None) -> SuiteResult:
    """Run a named suite; ``trials`` overrides its default size."""
    if name not in SUITES:
        raise KeyError(f"Unknown suite {name!r}; choose from {sorted(SUITES)}")
    seed = get_settings().default_seed if seed is None else seed
    kwargs = {} if trials is None else {"trials": trials}
    result = SUITES[name](seed, **kwargs)
    logger.info("Suite %s: %d/%d passed (seed %d)", name, result.passed_count, result.total, seed)
    return result
