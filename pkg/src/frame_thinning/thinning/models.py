"""Run configuration and result types for the thinning pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from ..config import get_settings
from ..errors import FrameThinningError
from ..frames import FrameBounds, Label
from ..localization import DensityTable, Element


class ThinningMode(StrEnum):
    STRICT = "strict"
    PRACTICAL = "practical"


class ThinningConfig(BaseModel):
    """Per-run parameters, echoed verbatim into reports."""

    model_config = ConfigDict(frozen=True)

    eps: float = Field(..., gt=0.0, description="Target density slack")
    mode: ThinningMode = Field(
        default=ThinningMode.STRICT,
        description="strict follows the constants exactly; practical certifies what it measures",
    )
    truncation_radius: int | None = Field(
        default=None, ge=0, description="Override for the truncation radius R"
    )
    box_radius: int | None = Field(default=None, ge=1, description="Override for the box radius N")


class SizingError(FrameThinningError):
    """No admissible R or N; ``table`` holds the rows that were scanned."""

    def __init__(self, message: str, table_name: str, table: list[tuple[Any, ...]]) -> None:
        super().__init__(message)
        self.table_name = table_name
        self.table = table


class BoxBranch(StrEnum):
    KEPT = "kept"
    THINNED = "thinned"
    ZERO_RANK = "zero-rank"
    OVERFULL = "overfull"


@dataclass(frozen=True)
class BoxReport:
    """Diagnostics of one lattice cell Q_N(k)."""

    center: Element
    size: int
    rank: int
    branch: BoxBranch
    slack: float | None
    selected: tuple[Label, ...]
    certified_ratio: float
    achieved_ratio: float
    box_ratio: float
    budget: float

    @property
    def kept(self) -> int:
        return len(self.selected)

    @property
    def within_budget(self) -> bool:
        return self.kept <= self.budget + get_settings().check_tol


@dataclass(frozen=True)
class Sizing:
    """Resolved constants of a run."""

    covering: float
    c_eps: float
    log_c_eps: float
    log_c_eps_sharp: float
    truncation_radius: int
    box_radius: int
    truncation_error: float
    admissible_radius: int
    error_table: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class ThinningResult:
    """Selected subset J with its certificates and diagnostics.

    ``certified_bound`` is the lower frame bound the run claims for F[J]
    (for the general case: of the Parseval run, before transport);
    ``achieved_bound`` is the measured lambda_min(S_J).
    """

    config: ThinningConfig
    selected: tuple[Label, ...]
    sizing: Sizing
    certified_bound: float
    achieved_bound: float
    truncated_bounds: FrameBounds
    truncation_gap: float
    boxes: tuple[BoxReport, ...]
    density: DensityTable
    parent_density: DensityTable
    passed: bool
    failures: tuple[str, ...] = ()
    events: tuple[dict[str, Any], ...] = ()
    stages: dict[str, dict[str, Any]] = field(default_factory=dict)
    parent_bounds: FrameBounds | None = None
    transported_lower: float | None = None
    transported_upper: float | None = None
    original_bounds: FrameBounds | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.selected)

    @property
    def max_box_ratio(self) -> float:
        return max((box.box_ratio for box in self.boxes), default=0.0)
