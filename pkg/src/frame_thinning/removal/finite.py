"""Finite removal: keep at most (1 + eps) N vectors with a certified lower bound.

Three layers, each reducing to the previous one:

* ``remove_parseval_smallnorm``: Parseval frames whose vectors all have
  squared norm <= 1/2. Runs Riesz selection on the Naimark complement and keeps
  the indices it did not select.
* ``remove_parseval``: any Parseval frame, by halving and duplicating each
  vector, then merging the two copies back.
* ``finite_removal``: any spanning frame, through its canonical Parseval frame.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from ..frames import (
    Frame,
    FrameError,
    Label,
    frame_operator,
    is_parseval,
    naimark_complement,
    parseval_normalize,
    relative_lower_ratio,
)
from ..linalg import hermitian_eig
from .estimates import RemovalError
from .selection import riesz_subset_select

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RemovalCertificate:
    """Selected subset J with S_J >= certified_ratio * S_F.

    ``certified_ratio`` is g_estimate(delta) when the selection met the
    estimate, otherwise the achieved Riesz bound. ``achieved_ratio`` is
    lambda_min(S_F^-1/2 S_J S_F^-1/2).
    """

    selected: tuple[Label, ...]
    eps: float
    delta: float
    cardinality_bound: float
    certified_ratio: float
    achieved_ratio: float
    riesz_bound: float
    estimate_met: bool
    naimark_residual: float = 0.0

    @property
    def size(self) -> int:
        return len(self.selected)

    @property
    def size_cap(self) -> int:
        return math.ceil(self.cardinality_bound - get_settings().check_tol)


def _check_eps(frame: Frame, eps: float) -> None:
    limit = frame.size / frame.dim - 1.0 if frame.dim else float("inf")
    if not 0.0 < eps < limit:
        raise RemovalError(f"eps must lie in (0, M/N - 1) = (0, {limit:.6g}), got {eps}")


def remove_parseval_smallnorm(
    frame: Frame, eps: float, delta: float | None = None, tol: float | None = None
) -> RemovalCertificate:
    """Removal for a Parseval frame with every ||f_i||^2 <= 1/2.

    Args:
        frame: Parseval frame, M >= 2N by the norm condition.
        eps: Slack, 0 < eps < M/N - 1.
        delta: Selection slack; defaults to eps / (2M/N - 1).

    Raises:
        RemovalError: On a non-Parseval frame, a large vector or eps out of range.
    """
    if not is_parseval(frame, tol):
        raise RemovalError("remove_parseval_smallnorm requires a Parseval frame")
    norms = frame.norms_squared()
    if np.any(norms > 0.5 + get_settings().check_tol):
        raise RemovalError(f"Vectors must have squared norm <= 1/2, max is {norms.max():.6g}")
    _check_eps(frame, eps)
    n, m = frame.dim, frame.size
    if delta is None:
        delta = eps / (2.0 * m / n - 1.0)

    complement = naimark_complement(frame, tol)
    selection = riesz_subset_select(complement, delta, tol)
    kept = np.setdiff1d(np.arange(m), np.asarray(selection.indices, dtype=int))

    s_j = frame_operator(frame.take(kept))
    s_sigma = (
        frame_operator(frame.take(selection.indices))
        if selection.indices
        else np.zeros((n, n), dtype=complex)
    )
    residual = float(np.linalg.norm(s_j + s_sigma - np.eye(n), ord=2))
    achieved = max(hermitian_eig(s_j).lambda_min, 0.0)
    certified = (
        selection.estimate if selection.estimate_met else min(selection.riesz_bound, achieved)
    )
    logger.debug(
        "Small-norm removal: kept %d of %d (delta=%.4f, riesz=%.3e)",
        kept.size,
        m,
        delta,
        selection.riesz_bound,
    )
    return RemovalCertificate(
        selected=tuple(frame.labels[i] for i in kept),
        eps=eps,
        delta=delta,
        cardinality_bound=(1.0 + delta * (m / n - 1.0)) * n,
        certified_ratio=certified,
        achieved_ratio=min(achieved, 1.0),
        riesz_bound=selection.riesz_bound,
        estimate_met=selection.estimate_met,
        naimark_residual=residual,
    )


def remove_parseval(frame: Frame, eps: float, tol: float | None = None) -> RemovalCertificate:
    """Removal for any Parseval frame via its halved duplicate.

    Raises:
        RemovalError: On a non-Parseval frame or eps out of (0, M/N - 1).
    """
    if not is_parseval(frame, tol):
        raise RemovalError("remove_parseval requires a Parseval frame")
    _check_eps(frame, eps)
    n, m = frame.dim, frame.size
    half = frame.synthesis / np.sqrt(2.0)
    doubled = Frame(np.hstack([half, half]))
    delta = eps / (2.0 * m / n - 1.0)
    inner = remove_parseval_smallnorm(doubled, eps, delta=delta, tol=tol)

    merged = sorted({int(i) % m for i in inner.selected})
    s_j = frame_operator(frame.take(merged))
    achieved = max(hermitian_eig(s_j).lambda_min, 0.0)
    return RemovalCertificate(
        selected=tuple(frame.labels[i] for i in merged),
        eps=eps,
        delta=delta,
        cardinality_bound=(1.0 + eps) * n,
        certified_ratio=inner.certified_ratio,
        achieved_ratio=min(achieved, 1.0),
        riesz_bound=inner.riesz_bound,
        estimate_met=inner.estimate_met,
        naimark_residual=inner.naimark_residual,
    )


def finite_removal(frame: Frame, eps: float, tol: float | None = None) -> RemovalCertificate:
    """Removal for any spanning frame: S_J >= certified_ratio * S_F with |J| <= (1+eps)N.

    Raises:
        RemovalError: On a non-spanning frame or eps out of (0, M/N - 1).
    """
    _check_eps(frame, eps)
    try:
        sharp = parseval_normalize(frame)
    except FrameError as exc:
        raise RemovalError(f"finite_removal needs a spanning frame: {exc}") from exc
    certificate = remove_parseval(sharp, eps, tol)
    achieved = relative_lower_ratio(frame, certificate.selected)
    logger.info(
        "Finite removal kept %d of %d vectors (N=%d, eps=%.4f, achieved=%.3e)",
        certificate.size,
        frame.size,
        frame.dim,
        eps,
        achieved,
    )
    return RemovalCertificate(
        selected=certificate.selected,
        eps=eps,
        delta=certificate.delta,
        cardinality_bound=certificate.cardinality_bound,
        certified_ratio=certificate.certified_ratio,
        achieved_ratio=min(achieved, 1.0),
        riesz_bound=certificate.riesz_bound,
        estimate_met=certificate.estimate_met,
        naimark_residual=certificate.naimark_residual,
    )
