"""Frame operator, bounds, canonical dual, Parseval normalisation, sandwich bounds."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from ..linalg import LinalgError, hermitian_eig, spectral_function
from .models import DualPair, Frame, FrameBounds, FrameError, Label

logger = logging.getLogger(__name__)


def frame_operator(frame: Frame) -> np.ndarray:
    """S = sum_i f_i f_i*, as an explicit Gram product of the synthesis matrix."""
    phi = frame.synthesis
    return phi @ phi.conj().T


def bounds_of_operator(s: np.ndarray) -> FrameBounds:
    """Frame bounds read off a frame operator; lower is 0 below the rank threshold."""
    if s.shape[0] == 0:
        return FrameBounds(lower=0.0, upper=0.0)
    spectrum = hermitian_eig(s)
    upper = max(spectrum.lambda_max, 0.0)
    lower = spectrum.lambda_min
    if lower <= get_settings().rank_tol * upper:
        lower = 0.0
    return FrameBounds(lower=float(lower), upper=float(upper))


def frame_bounds(frame: Frame) -> FrameBounds:
    """(lambda_min, lambda_max) of the frame operator."""
    return bounds_of_operator(frame_operator(frame))


def is_parseval(frame: Frame, tol: float | None = None) -> bool:
    tol = get_settings().parseval_tol if tol is None else tol
    s = frame_operator(frame)
    return bool(np.linalg.norm(s - np.eye(frame.dim), ord=2) <= tol)


def _require_spanning(frame: Frame, what: str) -> np.ndarray:
    s = frame_operator(frame)
    if frame.dim == 0 or not bounds_of_operator(s).is_frame:
        raise FrameError(f"{what} requires a spanning frame")
    return s


def canonical_dual(frame: Frame) -> DualPair:
    """Canonical dual f~_i = S^-1 f_i and the diagonal <f_i, f~_i>.

    Raises:
        FrameError: If the frame does not span.
    """
    s = _require_spanning(frame, "canonical_dual")
    try:
        s_inv = spectral_function(s, -1.0)
    except LinalgError as exc:
        raise FrameError(f"Frame operator is not invertible: {exc}") from exc
    dual = Frame(s_inv @ frame.synthesis, frame.labels)
    diagonal = np.real(np.sum(frame.synthesis * dual.synthesis.conj(), axis=0))
    return DualPair(frame=frame, dual=dual, diagonal=diagonal)


def parseval_normalize(frame: Frame) -> Frame:
    """Canonical Parseval frame f#_i = S^-1/2 f_i.

    Raises:
        FrameError: If the frame does not span.
    """
    s = _require_spanning(frame, "parseval_normalize")
    try:
        s_half_inv = spectral_function(s, -0.5)
    except LinalgError as exc:
        raise FrameError(f"Frame operator is not invertible: {exc}") from exc
    return Frame(s_half_inv @ frame.synthesis, frame.labels)


@dataclass(frozen=True)
class SandwichReport:
    """Computed bounds of F[J] against the interval [A*A', B*B'] they must lie in."""

    computed: FrameBounds
    parent: FrameBounds
    parseval_subframe: FrameBounds
    predicted_lower: float
    predicted_upper: float
    holds: bool


def subframe_bounds_sandwich(frame: Frame, subset: Iterable[Label]) -> SandwichReport:
    """Check A*A' <= lambda_min(S_F[J]) and lambda_max(S_F[J]) <= B*B'.

    A, B are the bounds of F; A', B' those of F#[J] with F# the canonical
    Parseval frame of F. A non-spanning F#[J] gives A' = 0.
    """
    labels = list(subset)
    parent = frame_bounds(frame)
    if not labels:
        zero = FrameBounds(0.0, 0.0)
        return SandwichReport(zero, parent, zero, 0.0, 0.0, True)
    sharp = parseval_normalize(frame)
    inner = frame_bounds(sharp.subframe(labels))
    computed = frame_bounds(frame.subframe(labels))
    predicted_lower = parent.lower * inner.lower
    predicted_upper = parent.upper * inner.upper
    slack = get_settings().check_tol * max(1.0, predicted_upper)
    holds = predicted_lower <= computed.lower + slack and computed.upper <= predicted_upper + slack
    if not holds:
        logger.warning(
            "Sandwich bounds violated: [%.3e, %.3e] vs computed (%.3e, %.3e)",
            predicted_lower,
            predicted_upper,
            computed.lower,
            computed.upper,
        )
    return SandwichReport(computed, parent, inner, predicted_lower, predicted_upper, holds)


def relative_lower_ratio(frame: Frame, subset: Iterable[Label]) -> float:
    """lambda_min(S_F^-1/2 S_J S_F^-1/2) for a spanning F; 0 when J is empty."""
    labels = list(subset)
    if not labels:
        return 0.0
    s = _require_spanning(frame, "relative_lower_ratio")
    root = spectral_function(s, -0.5)
    s_j = frame_operator(frame.subframe(labels))
    return max(hermitian_eig(root @ s_j @ root).lambda_min, 0.0)


@dataclass(frozen=True)
class CorollaryBound:
    """S_F[J] >= (c * A / B) S_F with c the relative lower ratio of J."""

    ratio: float
    parent: FrameBounds
    relative_constant: float
    absolute_lower: float
    holds: bool


def frame_bound_corollary(frame: Frame, subset: Iterable[Label]) -> CorollaryBound:
    """Relative certificate for a subframe, scaled by the parent's A/B.

    F[J] has lower frame bound A*c and S_F[J] >= c*(A/B)*S_F, where
    c = lambda_min(S_F^-1/2 S_J S_F^-1/2).
    """
    labels = list(subset)
    parent = frame_bounds(frame)
    ratio = relative_lower_ratio(frame, labels)
    constant = ratio * parent.lower / parent.upper if parent.upper > 0.0 else 0.0
    s_j = frame_operator(frame.subframe(labels)) if labels else np.zeros((frame.dim,) * 2)
    gap = hermitian_eig(s_j - constant * frame_operator(frame)).lambda_min
    holds = gap >= -get_settings().check_tol * max(1.0, parent.upper)
    return CorollaryBound(ratio, parent, constant, ratio * parent.lower, holds)
