from .density import (
    DensityRow,
    DensityTable,
    WindowedDensity,
    box_ratios,
    density_table,
    lower_density,
    upper_density,
    windowed_density,
)
from .group import Element, IndexGroup, LocalizationError, LocalizationMap
from .profile import (
    LocalizationProfile,
    build_profile,
    covering_constant,
    localization_sequence,
    r0,
    reference_synthesis,
    self_localization_sequence,
    tail_sum,
    truncation_bound,
)
from .truncation import TruncationCheck, truncate_frame, truncation_error_check

__all__ = [
    "DensityRow",
    "DensityTable",
    "Element",
    "IndexGroup",
    "LocalizationError",
    "LocalizationMap",
    "LocalizationProfile",
    "TruncationCheck",
    "WindowedDensity",
    "box_ratios",
    "build_profile",
    "covering_constant",
    "density_table",
    "localization_sequence",
    "lower_density",
    "r0",
    "reference_synthesis",
    "self_localization_sequence",
    "tail_sum",
    "truncate_frame",
    "truncation_bound",
    "truncation_error_check",
    "upper_density",
    "windowed_density",
]
