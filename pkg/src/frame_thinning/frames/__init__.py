from .models import DualPair, Frame, FrameBounds, FrameError, Label
from .naimark import naimark_complement, naimark_energy_gap
from .operators import (
    CorollaryBound,
    SandwichReport,
    bounds_of_operator,
    canonical_dual,
    frame_bound_corollary,
    frame_bounds,
    frame_operator,
    is_parseval,
    parseval_normalize,
    relative_lower_ratio,
    subframe_bounds_sandwich,
)
from .redundancy import RedundancyProfile, RedundancyRow, redundancy_profile, tail_extremes

__all__ = [
    "CorollaryBound",
    "DualPair",
    "Frame",
    "FrameBounds",
    "FrameError",
    "Label",
    "RedundancyProfile",
    "RedundancyRow",
    "SandwichReport",
    "bounds_of_operator",
    "canonical_dual",
    "frame_bound_corollary",
    "frame_bounds",
    "frame_operator",
    "is_parseval",
    "naimark_complement",
    "naimark_energy_gap",
    "parseval_normalize",
    "redundancy_profile",
    "relative_lower_ratio",
    "subframe_bounds_sandwich",
    "tail_extremes",
]
