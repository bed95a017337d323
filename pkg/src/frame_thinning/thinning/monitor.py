"""Run monitoring for the thinning pipeline.

Tracks the active pipeline stage and keeps a bounded, timestamped event log
that is attached to every ThinningResult.
"""

from dataclasses import asdict, dataclass
from datetime import UTC, datetime
from enum import StrEnum
from typing import Any


class ThinningStage(StrEnum):
    """Thinning pipeline stages."""

    PROFILING = "profiling"
    SIZING = "sizing"
    TRUNCATING = "truncating"
    TILING = "tiling"
    THINNING = "thinning"
    CERTIFYING = "certifying"
    DENSITY = "density"
    DONE = "done"
    ERROR = "error"


@dataclass
class StageNode:
    """Represents a single stage of a thinning run."""

    active: bool = False
    last_active: str | None = None
    message: str = ""


class RunMonitor:
    """Stage tracker with a bounded event log for one pipeline run.

    Not shared between runs; per-box workers only read from it.
    """

    def __init__(self, max_events: int = 200) -> None:
        """Initialise the monitor.

        Args:
            max_events: Maximum number of events to retain in the log.
        """
        self.max_events = max_events
        self.current_stage: ThinningStage | None = None
        self.nodes: dict[ThinningStage, StageNode] = {stage: StageNode() for stage in ThinningStage}
        self.event_log: list[dict[str, Any]] = []

    def enter(self, stage: ThinningStage | str, message: str = "") -> bool:
        """Activate ``stage`` and log the transition.

        Returns:
            True if the stage was recognised, False otherwise.
        """
        if isinstance(stage, str):
            try:
                stage = ThinningStage(stage)
            except ValueError:
                return False

        if self.current_stage and self.current_stage != stage:
            self.nodes[self.current_stage].active = False

        node = self.nodes[stage]
        node.active = True
        node.last_active = self._timestamp()
        node.message = message[:200]
        self.current_stage = stage
        self.add_event(stage, message)
        return True

    def add_event(self, stage: ThinningStage | str, message: str) -> None:
        """Append an event to the bounded event log (message truncated to 200 chars)."""
        event = {
            "timestamp": self._timestamp(),
            "stage": stage.value if isinstance(stage, ThinningStage) else str(stage),
            "message": message[:200],
        }
        self.event_log.append(event)
        if len(self.event_log) > self.max_events:
            self.event_log = self.event_log[-self.max_events :]

    def fail(self, message: str) -> None:
        self.enter(ThinningStage.ERROR, message)

    def get_state(self) -> dict[str, Any]:
        """Return a JSON-serialisable snapshot."""
        return {
            "current_stage": self.current_stage.value if self.current_stage else None,
            "nodes": {stage.value: asdict(node) for stage, node in self.nodes.items()},
            "event_log": list(self.event_log),
        }

    def events(self) -> tuple[dict[str, Any], ...]:
        return tuple(dict(event) for event in self.event_log)

    @staticmethod
    def _timestamp() -> str:
        return datetime.now(UTC).isoformat()
