from .frame_file import (
    FrameFileError,
    FrameHeader,
    format_frame,
    parse_frame,
    read_frame_file,
    write_frame_file,
)
from .report import Report, Table, format_value, parse_report
from .suites import SUITES, SuiteResult, run_suite

__all__ = [
    "SUITES",
    "FrameFileError",
    "FrameHeader",
    "Report",
    "SuiteResult",
    "Table",
    "format_frame",
    "format_value",
    "parse_frame",
    "parse_report",
    "read_frame_file",
    "run_suite",
    "write_frame_file",
]
