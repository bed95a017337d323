"""Riesz subset selection and the exhaustive test oracle.

The greedy selector grows a linearly independent subset one vector at a time,
always adding the candidate whose bordered Gram matrix has the largest smallest
eigenvalue. Candidates are scored through the secular equation of the bordered
matrix in the eigenbasis of the current Gram matrix, so one step costs a single
eigendecomposition plus a vectorised bisection over all candidates.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from ..frames import Frame, Label, is_parseval
from ..linalg import hermitian_eig
from .estimates import RemovalError, g_estimate

logger = logging.getLogger(__name__)

_BISECTION_STEPS = 80


@dataclass(frozen=True)
class RieszSelection:
    """Outcome of riesz_subset_select on a Parseval frame."""

    indices: tuple[int, ...]
    labels: tuple[Label, ...]
    target_size: int
    riesz_bound: float
    estimate: float
    delta: float

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def estimate_met(self) -> bool:
        return self.riesz_bound >= self.estimate


def _bordered_lambda_min(
    values: np.ndarray, weights: np.ndarray, diagonal: np.ndarray
) -> np.ndarray:
    """Smallest eigenvalue of [[diag(values), z], [z*, c]] for many (z, c) at once.

    Args:
        values: Eigenvalues of the current Gram matrix, ascending, shape (k,).
        weights: |z|^2 per candidate in that eigenbasis, shape (C, k).
        diagonal: Squared candidate norms c, shape (C,).
    """
    if values.size == 0:
        return diagonal.copy()
    hi = np.minimum(values[0], diagonal)
    lo = hi - np.sqrt(weights.sum(axis=1)) - 1e-15
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        gaps = values[None, :] - mid[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            secular = diagonal - mid - np.sum(np.where(gaps > 0.0, weights / gaps, np.inf), axis=1)
        above = secular > 0.0
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return lo


def _check_hypothesis(frame: Frame, tol: float | None) -> None:
    if not is_parseval(frame, tol):
        raise RemovalError("riesz_subset_select requires a Parseval frame")
    norms = frame.norms_squared()
    if np.any(norms < 0.5 - get_settings().check_tol):
        worst = int(np.argmin(norms))
        raise RemovalError(
            f"Vector {frame.labels[worst]!r} has squared norm {norms[worst]:.6g} < 1/2"
        )


def riesz_subset_select(frame: Frame, delta: float, tol: float | None = None) -> RieszSelection:
    """Greedy Riesz basic sequence of size ceil((1 - delta) * dim).

    Ties go to the smallest index. The reported Riesz bound is lambda_min of
    the final Gram matrix; a bound below g_estimate(delta) is reported, not
    raised.

    Raises:
        RemovalError: If delta is outside (0, 1), the frame is not Parseval, or
            some vector has squared norm below 1/2.
    """
    if not 0.0 < delta < 1.0:
        raise RemovalError(f"delta must lie in (0, 1), got {delta}")
    _check_hypothesis(frame, tol)

    phi = frame.synthesis
    norms = np.real(frame.norms_squared())
    target = min(frame.dim, math.ceil((1.0 - delta) * frame.dim - 1e-12))
    chosen: list[int] = []
    available = np.ones(frame.size, dtype=bool)

    for step in range(target):
        candidates = np.flatnonzero(available)
        if chosen:
            basis = phi[:, chosen]
            # scoring only; the reported bound below goes through hermitian_eig
            values, vectors = np.linalg.eigh(basis.conj().T @ basis)
            projected = vectors.conj().T @ (basis.conj().T @ phi[:, candidates])
            scores = _bordered_lambda_min(values, np.abs(projected.T) ** 2, norms[candidates])
        else:
            scores = norms[candidates].copy()
        best = int(candidates[int(np.argmax(scores))])
        logger.debug("Greedy step %d: index %d, score %.3e", step, best, float(scores.max()))
        chosen.append(best)
        available[best] = False

    if chosen:
        basis = phi[:, chosen]
        bound = max(hermitian_eig(basis.conj().T @ basis).lambda_min, 0.0)
    else:
        bound = 1.0
    estimate = g_estimate(delta)
    selection = RieszSelection(
        indices=tuple(sorted(chosen)),
        labels=tuple(frame.labels[i] for i in sorted(chosen)),
        target_size=target,
        riesz_bound=float(bound),
        estimate=estimate,
        delta=delta,
    )
    if not selection.estimate_met:
        logger.warning(
            "Greedy Riesz bound %.3e below estimate g(%.4f)=%.3e", bound, delta, estimate
        )
    return selection


@dataclass(frozen=True)
class OracleResult:
    indices: tuple[int, ...]
    labels: tuple[Label, ...]
    lambda_min: float
    candidates: int


def _duplicate_classes(frame: Frame) -> list[list[int]]:
    """Column indices grouped by identical vectors, in order of first appearance."""
    classes: dict[bytes, list[int]] = {}
    for i in range(frame.size):
        classes.setdefault(np.ascontiguousarray(frame.synthesis[:, i]).tobytes(), []).append(i)
    return list(classes.values())


def _count_multiplicities(sizes: list[int], total: int) -> int:
    ways = [1] + [0] * total
    for size in sizes:
        ways = [sum(ways[t - m] for m in range(0, min(size, t) + 1)) for t in range(total + 1)]
    return ways[total]


def _multiplicities(sizes: list[int], total: int) -> Iterator[tuple[int, ...]]:
    if not sizes:
        if total == 0:
            yield ()
        return
    rest = sum(sizes[1:])
    for m in range(max(0, total - rest), min(sizes[0], total) + 1):
        for tail in _multiplicities(sizes[1:], total - m):
            yield (m, *tail)


def exhaustive_oracle(frame: Frame, cap: int, chunk: int = 4096) -> OracleResult:
    """Exact maximiser of lambda_min(S_J) over |J| <= cap.

    lambda_min is monotone under adding vectors, so only sets of size
    min(cap, M) are enumerated. Identical vectors are grouped and enumerated by
    multiplicity; within a class the lowest indices are taken. Ties (within
    1e-12 relative) go to the lexicographically smallest index set.

    Raises:
        RemovalError: If the number of candidates exceeds oracle_max_subsets.
    """
    size = min(max(cap, 0), frame.size)
    if size == 0:
        return OracleResult((), (), 0.0, 1)
    classes = _duplicate_classes(frame)
    sizes = [len(c) for c in classes]
    count = _count_multiplicities(sizes, size)
    limit = get_settings().oracle_max_subsets
    if count > limit:
        raise RemovalError(f"Oracle would enumerate {count} subsets (limit {limit})")

    phi = frame.synthesis
    projectors = np.stack([np.outer(phi[:, c[0]], phi[:, c[0]].conj()) for c in classes])

    def index_set(mult: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted(i for c, m in zip(classes, mult, strict=True) for i in c[:m]))

    best_value = -np.inf
    best_set: tuple[int, ...] = ()
    pending: list[tuple[int, ...]] = []

    def flush() -> None:
        nonlocal best_value, best_set
        weights = np.array(pending, dtype=float)
        operators = np.tensordot(weights, projectors, axes=(1, 0))
        values = np.linalg.eigvalsh(operators)[:, 0]
        for mult, value in zip(pending, values, strict=True):
            slack = 1e-12 * max(1.0, abs(best_value) if np.isfinite(best_value) else 1.0)
            if value > best_value + slack:
                best_value = float(value)
                best_set = index_set(mult)
            elif value >= best_value - slack:
                best_set = min(best_set, index_set(mult))
        pending.clear()

    for mult in _multiplicities(sizes, size):
        pending.append(mult)
        if len(pending) >= chunk:
            flush()
    if pending:
        flush()

    best = best_set
    logger.debug("Oracle enumerated %d subsets; best lambda_min %.6g", count, best_value)
    return OracleResult(
        indices=best,
        labels=tuple(frame.labels[i] for i in best),
        lambda_min=max(float(best_value), 0.0),
        candidates=count,
    )
