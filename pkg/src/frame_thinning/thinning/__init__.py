from .boxes import per_box_thin, tile_labels
from .models import (
    BoxBranch,
    BoxReport,
    Sizing,
    SizingError,
    ThinningConfig,
    ThinningMode,
    ThinningResult,
)
from .monitor import RunMonitor, ThinningStage
from .pipeline import extract_sparse_subframe, extract_sparse_subframe_parseval
from .sizing import (
    box_growth,
    c_eps_argument,
    choose_N,
    choose_R,
    error_table,
    log_c_eps,
    practical_box_radius,
    resolve_sizing,
)

__all__ = [
    "BoxBranch",
    "BoxReport",
    "RunMonitor",
    "Sizing",
    "SizingError",
    "ThinningConfig",
    "ThinningMode",
    "ThinningResult",
    "ThinningStage",
    "box_growth",
    "c_eps_argument",
    "choose_N",
    "choose_R",
    "error_table",
    "extract_sparse_subframe",
    "extract_sparse_subframe_parseval",
    "log_c_eps",
    "per_box_thin",
    "practical_box_radius",
    "resolve_sizing",
    "tile_labels",
]
