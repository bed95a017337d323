"""Closed-form lower estimates for the removal constant g(eps)."""

from __future__ import annotations

import math

from ..errors import FrameThinningError


class RemovalError(FrameThinningError):
    """Raised when a removal or selection precondition is violated."""


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise RemovalError(f"eps must lie in (0, 1), got {eps}")


def log_g_estimate(eps: float) -> float:
    """Natural log of g_estimate(eps); finite where the value itself underflows."""
    _check_eps(eps)
    exponent = 1.0 + (4.0 / eps**2) * math.log(1.0 / eps)
    return exponent * math.log(eps**2 / 8.0)


def g_estimate(eps: float) -> float:
    """(eps^2/8) ** (1 + (4/eps^2) ln(1/eps)).

    Increasing in eps with values in (0, 1). Tiny: g(0.5) is about 6.3e-19 and
    g(0.05) already underflows to 0.0.
    """
    return math.exp(log_g_estimate(eps))


def log_g_estimate_sharp(eps: float) -> float:
    """Natural log of g_estimate_sharp(eps); finite where the value underflows."""
    _check_eps(eps)
    exponent = 2.0 + math.log(eps) / math.log1p(-(eps**2) / 8.0)
    return exponent * math.log(eps / (2.0 * math.sqrt(2.0)))


def g_estimate_sharp(eps: float) -> float:
    """(eps/(2 sqrt 2)) ** (2 + ln(eps)/ln(1 - eps^2/8)).

    Intermediate form that g_estimate relaxes; always >= g_estimate(eps).
    Reported only, never used to certify. Underflows to 0.0 below eps ~ 0.13.
    """
    return math.exp(log_g_estimate_sharp(eps))
