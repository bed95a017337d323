"""frame-thinning: generate, analyze, thin and verify finite frames.

Exit codes: 0 success, 1 verification or certification failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from pydantic import ValidationError

from ..config import get_settings
from ..errors import FrameThinningError
from .commands import (
    EXIT_FAILED,
    EXIT_USAGE,
    cmd_analyze,
    cmd_gen,
    cmd_sweep,
    cmd_thin,
    cmd_verify,
    parse_group,
    parse_pair,
)
from .frame_file import FrameFileError
from .suites import SUITES

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frame-thinning", description=__doc__)
    parser.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Write a generated frame file")
    gen.add_argument("kind", choices=("onb", "random-parseval", "example31", "gabor"))
    gen.add_argument("--N", type=int, default=4, help="Dimension (not gabor)")
    gen.add_argument("--M", type=int, default=8, help="Number of vectors (random-parseval)")
    gen.add_argument("--L", type=int, default=16, help="Signal length (gabor)")
    gen.add_argument("--window", choices=("gaussian", "random", "impulse"), default="gaussian")
    gen.add_argument("--lattice", type=parse_pair, default=None, help="a,b (default full grid)")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default=None, help="Output path (default stdout)")
    gen.set_defaults(handler=cmd_gen)

    analyze = sub.add_parser("analyze", help="Frame bounds, redundancy and dual diagonal")
    analyze.add_argument("frame")
    analyze.add_argument("--report", default=None, help="Report path (default stdout)")
    analyze.set_defaults(handler=cmd_analyze)

    thin = sub.add_parser("thin", help="Extract a density-(1+eps) subframe")
    thin.add_argument("frame")
    source = thin.add_mutually_exclusive_group(required=True)
    source.add_argument("--gabor-auto", action="store_true", help="Gaussian reference lattice")
    source.add_argument(
        "--reference", default=None, help="Reference frame file, one vector per group element"
    )
    thin.add_argument("--group", type=parse_group, default=None, help="64, 8x8 or 8x8/2")
    thin.add_argument("--map", choices=("label", "index"), default="label")
    thin.add_argument("--lattice", type=parse_pair, default=None, help="a,b for --gabor-auto")
    thin.add_argument("--eps", type=float, required=True)
    thin.add_argument("--mode", choices=("strict", "practical"), default="strict")
    thin.add_argument("--R", type=int, default=None, help="Truncation radius override")
    thin.add_argument("--N", type=int, default=None, help="Box radius override")
    thin.add_argument("--report", default=None, help="Report path (default stdout)")
    thin.add_argument("--out", default=None, help="Frame file for F[J]")
    thin.set_defaults(handler=cmd_thin)

    verify = sub.add_parser("verify", help="Run a property suite")
    verify.add_argument("suite", choices=sorted(SUITES))
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--report", default=None)
    verify.set_defaults(handler=cmd_verify)

    sweep = sub.add_parser("sweep", help="Gabor thinning over an eps x L grid")
    sweep.add_argument("--eps-grid", required=True, help="Comma-separated eps values")
    sweep.add_argument("--L-grid", dest="L_grid", required=True, help="Comma-separated lengths")
    sweep.add_argument("--mode", choices=("strict", "practical"), default="practical")
    sweep.add_argument("--window", choices=("gaussian", "random", "impulse"), default="gaussian")
    sweep.add_argument("--seed", type=int, default=None)
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--report", default=None)
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0

    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except (FrameFileError, ValidationError, argparse.ArgumentTypeError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except FrameThinningError as exc:
        logger.error("%s failed: %s", args.command, exc)
        return EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
