"""Sub-command implementations. Each returns a process exit code."""

from __future__ import annotations

import argparse
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np
from pydantic import ValidationError

from ..config import get_settings
from ..errors import FrameThinningError
from ..frames import Frame, FrameError, canonical_dual, frame_bounds, is_parseval
from ..gabor import gabor_thin, thin_gabor_frame
from ..localization import IndexGroup, LocalizationMap
from ..thinning import (
    SizingError,
    ThinningConfig,
    ThinningMode,
    ThinningResult,
    extract_sparse_subframe,
)
from .frame_file import FrameFileError, format_frame, read_frame_file, write_frame_file
from .generators import (
    gabor_grid_frame,
    gabor_system,
    onb_frame,
    random_parseval_frame,
    repeated_tail_frame,
)
from .report import Report
from .suites import run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def parse_pair(text: str) -> tuple[int, int]:
    """'a,b' -> (a, b)."""
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Expected 'a,b', got {text!r}") from exc
    return a, b


def parse_grid(text: str, kind: type = float) -> list[Any]:
    """Comma-separated values; an empty string gives an empty grid."""
    try:
        return [kind(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Bad grid {text!r}") from exc


def parse_group(text: str) -> IndexGroup:
    """'64', '8x8' or '8x8/2' (moduli, optional torsion)."""
    moduli_text, _, torsion_text = text.partition("/")
    try:
        moduli = tuple(int(v) for v in moduli_text.split("x"))
        torsion = int(torsion_text) if torsion_text else 1
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"Bad group {text!r}; use e.g. 64, 8x8 or 8x8/2"
        ) from exc
    return IndexGroup(moduli, torsion)


def _element_of(label: Any, group: IndexGroup) -> tuple[int, ...]:
    coords = label if isinstance(label, tuple) else (label,)
    width = len(group.shape)
    if len(coords) < width:
        raise FrameFileError(f"Label {label!r} has fewer than {width} coordinates")
    return tuple(int(v) for v in coords[-width:])


def build_map(frame: Frame, group: IndexGroup, how: str) -> LocalizationMap:
    """``label``: trailing label coordinates; ``index``: column i -> element floor(i |G| / M)."""
    if how == "label":
        return LocalizationMap.from_function(
            frame.labels, group, lambda lab: _element_of(lab, group)
        )
    assignment = np.arange(frame.size) * group.size // frame.size
    return LocalizationMap(frame.labels, group, assignment)


def _emit_frame(frame: Frame, path: str | None) -> None:
    if path is None or path == "-":
        print(format_frame(frame), end="")
    else:
        write_frame_file(frame, path)


def cmd_gen(args: argparse.Namespace) -> int:
    seed = get_settings().default_seed if args.seed is None else args.seed
    if args.kind == "onb":
        frame = onb_frame(args.N)
    elif args.kind == "random-parseval":
        frame = random_parseval_frame(args.N, args.M, seed)
    elif args.kind == "example31":
        frame = repeated_tail_frame(args.N)
    else:
        frame = gabor_grid_frame(args.L, args.window, args.lattice, seed)
    logger.info("Generated %s: M=%d, N=%d (seed %d)", args.kind, frame.size, frame.dim, seed)
    _emit_frame(frame, args.out)
    return EXIT_OK


def analyze_frame(frame: Frame, source: str = "") -> Report:
    report = Report()
    report.meta("command", "analyze")
    report.meta("input", source)
    bounds = frame_bounds(frame)
    report.meta("M", frame.size)
    report.meta("N", frame.dim)
    report.meta("lower_bound", bounds.lower)
    report.meta("upper_bound", bounds.upper)
    report.meta("is_frame", bounds.is_frame)
    report.meta("parseval", is_parseval(frame))
    report.meta("redundancy", frame.redundancy)
    try:
        pair = canonical_dual(frame)
    except FrameError as exc:
        logger.warning("%s is not a frame: %s", source or "input", exc)
        report.meta("status", "not a frame")
        diagonal = None
    else:
        diagonal = pair.diagonal.real
        report.meta("status", "frame")
        report.meta("trace_sum", float(np.sum(diagonal)))
        report.meta("trace_redundancy", frame.size / float(np.sum(diagonal)))
    norms = frame.norms_squared()
    table = report.table("vectors", ("index", "label", "norm_squared", "dual_diagonal"))
    for i, label in enumerate(frame.labels):
        table.add(i, label, float(norms[i]), None if diagonal is None else float(diagonal[i]))
    return report


def cmd_analyze(args: argparse.Namespace) -> int:
    frame = read_frame_file(args.frame)
    analyze_frame(frame, args.frame).write(args.report)
    return EXIT_OK


def _events_rows(result: ThinningResult) -> list[tuple[Any, ...]]:
    return [
        (e["timestamp"], e["stage"], str(e["message"]).replace(",", ";")) for e in result.events
    ]


def thinning_report(result: ThinningResult, frame: Frame, source: str = "") -> Report:
    """Report of a thinning run; every number is recomputable from the input and config."""
    report = Report()
    sizing = result.sizing
    report.meta("command", "thin")
    report.meta("input", source)
    report.meta("config", result.config)
    report.meta("M", frame.size)
    report.meta("N", frame.dim)
    report.meta("selected", result.size)
    report.meta("truncation_radius", sizing.truncation_radius)
    report.meta("box_radius", sizing.box_radius)
    report.meta("admissible_radius", sizing.admissible_radius)
    report.meta("covering", sizing.covering)
    report.meta("log_c_eps", sizing.log_c_eps)
    report.meta("c_eps", sizing.c_eps)
    report.meta("log_c_eps_sharp", sizing.log_c_eps_sharp)
    report.meta("truncation_error", sizing.truncation_error)
    report.meta("truncated_lower", result.truncated_bounds.lower)
    report.meta("truncated_upper", result.truncated_bounds.upper)
    report.meta("truncation_gap", result.truncation_gap)
    report.meta("certified_bound", result.certified_bound)
    report.meta("achieved_bound", result.achieved_bound)
    report.meta("max_box_ratio", result.max_box_ratio)
    report.meta("density_upper", result.density.upper)
    report.meta("density_lower", result.density.lower)
    if result.parent_bounds is not None:
        report.meta("parent_lower", result.parent_bounds.lower)
        report.meta("parent_upper", result.parent_bounds.upper)
        report.meta("transported_lower", result.transported_lower)
        report.meta("transported_upper", result.transported_upper)
    if result.original_bounds is not None:
        report.meta("subframe_lower", result.original_bounds.lower)
        report.meta("subframe_upper", result.original_bounds.upper)
    if "lattice" in result.extra:
        report.meta("lattice", result.extra["lattice"])
    relation = result.extra.get("relation")
    if relation is not None:
        report.meta("group_density", relation.group_density)
        report.meta("beurling_density", relation.beurling_density)
        report.meta("scaled_beurling_density", relation.scaled_beurling)
    report.meta("failures", list(result.failures))
    report.meta("passed", result.passed)

    report.table(
        "boxes",
        (
            "center",
            "size",
            "rank",
            "branch",
            "slack",
            "kept",
            "budget",
            "certified_ratio",
            "achieved_ratio",
            "box_ratio",
        ),
        (
            (
                b.center,
                b.size,
                b.rank,
                b.branch.value,
                b.slack,
                b.kept,
                b.budget,
                b.certified_ratio,
                b.achieved_ratio,
                b.box_ratio,
            )
            for b in result.boxes
        ),
    )
    report.table(
        "density",
        ("radius", "upper", "lower"),
        ((r.radius, r.upper, r.lower) for r in result.density.rows),
    )
    report.table(
        "parent density",
        ("radius", "upper", "lower"),
        ((r.radius, r.upper, r.lower) for r in result.parent_density.rows),
    )
    beurling = result.extra.get("beurling")
    if beurling is not None:
        report.table(
            "beurling",
            ("radius", "upper", "lower"),
            ((r.radius, r.upper, r.lower) for r in beurling.rows),
        )
    report.table("E(R)", ("radius", "error"), sizing.error_table)
    report.table(
        "stages",
        ("stage", "active", "last_active", "message"),
        (
            (stage, node["active"], node["last_active"], str(node["message"]).replace(",", ";"))
            for stage, node in result.stages.items()
        ),
    )
    report.table("events", ("timestamp", "stage", "message"), _events_rows(result))
    return report


def sizing_failure_report(exc: SizingError, config: ThinningConfig, source: str) -> Report:
    report = Report()
    report.meta("command", "thin")
    report.meta("input", source)
    report.meta("config", config)
    report.meta("error", str(exc).replace("\n", " "))
    report.meta("passed", False)
    if exc.table_name == "E(R)":
        report.table("E(R)", ("radius", "error"), exc.table)
    elif exc.table_name == "N":
        report.table("N", ("box_radius", "growth", "tiles"), exc.table)
    return report


def cmd_thin(args: argparse.Namespace) -> int:
    config = ThinningConfig(
        eps=args.eps,
        mode=ThinningMode(args.mode),
        truncation_radius=args.R,
        box_radius=args.N,
    )
    frame = read_frame_file(args.frame)
    try:
        if args.gabor_auto:
            result = thin_gabor_frame(frame, config, args.lattice)
        else:
            if args.reference is None or args.group is None:
                logger.error("thin needs --gabor-auto or both --reference and --group")
                return EXIT_USAGE
            group = args.group
            reference = read_frame_file(args.reference)
            if reference.size != group.size:
                raise FrameFileError(
                    f"Reference has {reference.size} vectors for a group of size {group.size}"
                )
            reference = Frame(reference.synthesis, group.elements)
            amap = build_map(frame, group, args.map)
            result = extract_sparse_subframe(frame, reference, amap, config)
    except SizingError as exc:
        logger.error("Sizing failed: %s", exc)
        sizing_failure_report(exc, config, args.frame).write(args.report)
        return EXIT_FAILED

    thinning_report(result, frame, args.frame).write(args.report)
    if args.out and result.selected:
        write_frame_file(frame.subframe(result.selected), args.out)
    if not result.passed:
        logger.warning("Thinning not certified: %s", "; ".join(result.failures))
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    seed = get_settings().default_seed if args.seed is None else args.seed
    result = run_suite(args.suite, seed, args.trials)
    report = Report()
    report.meta("command", "verify")
    report.meta("suite", result.name)
    report.meta("seed", seed)
    report.meta("total", result.total)
    report.meta("passed_count", result.passed_count)
    report.meta("passed", result.passed)
    report.table(result.name, result.columns, result.rows)
    report.write(args.report)
    return EXIT_OK if result.passed else EXIT_FAILED


SWEEP_COLUMNS = (
    "eps",
    "L",
    "M",
    "selected",
    "max_box_ratio",
    "density_upper",
    "achieved_bound",
    "certified_bound",
    "passed",
    "runtime",
    "error",
)


def sweep_cell(eps: float, length: int, mode: ThinningMode, window: str, seed: int) -> tuple:
    """One sweep row: full Gabor grid on Z_L thinned at eps; errors land in the row."""
    started = time.perf_counter()
    try:
        system = gabor_system(length, window, None, seed)
        result = gabor_thin(system, ThinningConfig(eps=eps, mode=mode))
    except (FrameThinningError, ValidationError) as exc:
        logger.warning("Sweep cell eps=%s L=%d failed: %s", eps, length, exc)
        message = str(exc).replace(",", ";").replace("\n", " ")
        elapsed = time.perf_counter() - started
        return (eps, length, length * length, None, None, None, None, None, False, elapsed, message)
    elapsed = time.perf_counter() - started
    return (
        eps,
        length,
        system.size,
        result.size,
        result.max_box_ratio,
        result.density.upper,
        result.achieved_bound,
        result.certified_bound,
        result.passed,
        elapsed,
        None,
    )


def cmd_sweep(args: argparse.Namespace) -> int:
    eps_grid = parse_grid(args.eps_grid, float)
    length_grid = parse_grid(args.L_grid, int)
    if not eps_grid or not length_grid:
        logger.error("sweep needs nonempty --eps-grid and --L-grid")
        return EXIT_USAGE
    settings = get_settings()
    seed = settings.default_seed if args.seed is None else args.seed
    mode = ThinningMode(args.mode)
    cells = [(eps, length) for eps in eps_grid for length in length_grid]
    workers = args.workers or settings.max_workers

    def run(cell: tuple[float, int]) -> tuple:
        return sweep_cell(cell[0], cell[1], mode, args.window, seed)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(run, cells))
    else:
        rows = [run(c) for c in cells]

    report = Report()
    report.meta("command", "sweep")
    report.meta("mode", mode.value)
    report.meta("window", args.window)
    report.meta("seed", seed)
    report.meta("eps_grid", eps_grid)
    report.meta("L_grid", length_grid)
    errors = sum(1 for row in rows if row[-1] is not None)
    report.meta("errors", errors)
    report.table("sweep", SWEEP_COLUMNS, rows)
    report.write(args.report)
    return EXIT_OK if errors == 0 else EXIT_FAILED
