"""Window averages of <f_i, f~_i> and the redundancy they define."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from .models import Frame, FrameError, Label
from .operators import canonical_dual


def tail_extremes(values: Sequence[float], fraction: float | None = None) -> tuple[float, float]:
    """(min, max) over the trailing ``fraction`` of a finite sequence.

    Finite stand-in for liminf/limsup along a window sequence; at least the last
    element is always included.
    """
    if not len(values):
        raise ValueError("Empty sequence has no tail")
    fraction = get_settings().tail_fraction if fraction is None else fraction
    count = max(1, int(np.ceil(fraction * len(values))))
    tail = list(values)[-count:]
    return float(min(tail)), float(max(tail))


@dataclass(frozen=True)
class RedundancyRow:
    window_size: int
    average: float
    redundancy: float


@dataclass(frozen=True)
class RedundancyProfile:
    rows: tuple[RedundancyRow, ...]
    liminf: float
    limsup: float

    @property
    def final(self) -> RedundancyRow:
        return self.rows[-1]


def redundancy_profile(
    frame: Frame, windows: Iterable[Iterable[Label]] | None = None
) -> RedundancyProfile:
    """Per-window average of <f_i, f~_i> and its reciprocal.

    Args:
        frame: Spanning frame.
        windows: Nested, nonempty label subsets I_0 c I_1 c ...; defaults to the
            single full window, whose redundancy is M/N by the trace identity.

    Raises:
        FrameError: On a non-spanning frame, empty or non-nested windows.
    """
    pair = canonical_dual(frame)
    window_list = [list(w) for w in windows] if windows is not None else [list(frame.labels)]
    if not window_list:
        raise FrameError("At least one window is required")

    rows: list[RedundancyRow] = []
    previous: set[Label] = set()
    for window in window_list:
        if not window:
            raise FrameError("Windows must be nonempty")
        current = set(window)
        if not previous <= current:
            raise FrameError("Windows must be nested")
        previous = current
        average = float(np.mean(pair.diagonal[frame.indices_of(current)]))
        redundancy = 1.0 / average if average > 0.0 else float("inf")
        rows.append(RedundancyRow(len(current), average, redundancy))

    low, high = tail_extremes([row.redundancy for row in rows])
    return RedundancyProfile(rows=tuple(rows), liminf=low, limsup=high)
