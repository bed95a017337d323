"""Plain-text frame files.

Layout::

    # comments and blank lines are ignored
    FRAME 1 <M> <N> complex|real [labels]
    <floats> [| <label ints, comma-separated>]      (one line per vector)

A complex vector is written as N interleaved (re, im) pairs, a real one as N
floats. Floats use the shortest round-trip decimal, so parsing a written file
gives back the same values bit for bit. Labels are ints or flat tuples of
ints; nested tuples are flattened on write.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from ..errors import FrameThinningError
from ..frames import Frame, FrameError, Label

logger = logging.getLogger(__name__)

FORMAT_TAG = "FRAME"
FORMAT_VERSION = 1


class FrameFileError(FrameThinningError):
    """Malformed frame file; ``line`` is 1-based (0 when the file as a whole is at fault)."""

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class FrameHeader(BaseModel):
    tag: Literal["FRAME"] = FORMAT_TAG
    version: Literal[1] = FORMAT_VERSION
    size: int = Field(..., ge=1, description="Number of vectors M")
    dim: int = Field(..., ge=1, description="Dimension N")
    scalars: Literal["complex", "real"] = "complex"
    labelled: bool = False

    def render(self) -> str:
        parts = [self.tag, str(self.version), str(self.size), str(self.dim), self.scalars]
        if self.labelled:
            parts.append("labels")
        return " ".join(parts)


def _flatten(label: Label) -> tuple[int, ...]:
    if isinstance(label, bool):
        raise FrameFileError(f"Label {label!r} is not an int or a tuple of ints")
    if isinstance(label, int | np.integer):
        return (int(label),)
    if isinstance(label, tuple):
        return tuple(v for part in label for v in _flatten(part))
    raise FrameFileError(f"Label {label!r} is not an int or a tuple of ints")


def format_label(label: Label, sep: str = ",") -> str:
    return sep.join(str(v) for v in _flatten(label))


def parse_label(text: str, line: int = 0) -> Label:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise FrameFileError(f"Bad label {text.strip()!r}", line) from exc
    return values[0] if len(values) == 1 else values


def _is_default_labels(labels: tuple[Label, ...]) -> bool:
    return labels == tuple(range(len(labels)))


def format_frame(frame: Frame, real: bool | None = None) -> str:
    """Serialise ``frame``; ``real`` defaults to True when every imaginary part is 0."""
    matrix = frame.synthesis
    if real is None:
        real = not np.any(matrix.imag)
    elif real and np.any(matrix.imag):
        raise FrameFileError("Cannot write a complex frame as real")
    labelled = not _is_default_labels(frame.labels)
    header = FrameHeader(
        size=frame.size, dim=frame.dim, scalars="real" if real else "complex", labelled=labelled
    )
    lines = [header.render()]
    for i in range(frame.size):
        column = matrix[:, i]
        if real:
            values = [repr(float(v)) for v in column.real]
        else:
            values = [repr(float(p)) for z in column for p in (z.real, z.imag)]
        text = " ".join(values)
        if labelled:
            text += " | " + format_label(frame.labels[i])
        lines.append(text)
    return "\n".join(lines) + "\n"


def write_frame_file(frame: Frame, path: str | Path, real: bool | None = None) -> None:
    Path(path).write_text(format_frame(frame, real), encoding="utf-8")
    logger.info("Wrote %d vectors in dimension %d to %s", frame.size, frame.dim, path)


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped


def _parse_header(line: str, number: int) -> FrameHeader:
    parts = line.split()
    if len(parts) not in (5, 6) or (len(parts) == 6 and parts[5] != "labels"):
        raise FrameFileError(
            f"Expected 'FRAME 1 <M> <N> complex|real [labels]', got {line!r}", number
        )
    try:
        return FrameHeader(
            tag=parts[0],
            version=int(parts[1]),
            size=int(parts[2]),
            dim=int(parts[3]),
            scalars=parts[4],
            labelled=len(parts) == 6,
        )
    except (ValueError, ValidationError) as exc:
        raise FrameFileError(f"Invalid header {line!r}: {exc}", number) from exc


def parse_frame(text: str) -> Frame:
    """Parse frame-file text.

    Raises:
        FrameFileError: With the offending line number.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise FrameFileError("Empty frame file")
    header = _parse_header(lines[0][1], lines[0][0])
    body = lines[1:]
    if len(body) != header.size:
        last = body[-1][0] if body else lines[0][0]
        raise FrameFileError(f"Header announces {header.size} vectors, found {len(body)}", last)

    width = header.dim * (2 if header.scalars == "complex" else 1)
    vectors, labels = [], []
    for number, line in body:
        values_text, sep, label_text = line.partition("|")
        if bool(sep) != header.labelled:
            raise FrameFileError(
                "Label missing" if header.labelled else "Unexpected label on unlabelled frame",
                number,
            )
        try:
            values = [float(v) for v in values_text.split()]
        except ValueError as exc:
            raise FrameFileError(f"Non-numeric entry: {exc}", number) from exc
        if len(values) != width:
            raise FrameFileError(f"Expected {width} floats, got {len(values)}", number)
        if header.scalars == "complex":
            pairs = zip(values[::2], values[1::2], strict=True)
            vectors.append([complex(re, im) for re, im in pairs])
        else:
            vectors.append(values)
        if header.labelled:
            labels.append(parse_label(label_text.strip(), number))

    try:
        return Frame.from_vectors(vectors, labels if header.labelled else None)
    except FrameError as exc:
        raise FrameFileError(str(exc)) from exc


def read_frame_file(path: str | Path) -> Frame:
    """Read a frame file.

    Raises:
        FrameFileError: On unreadable or malformed files.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FrameFileError(f"Cannot read {path}: {exc}") from exc
    frame = parse_frame(text)
    logger.debug("Read %s: M=%d, N=%d", path, frame.size, frame.dim)
    return frame
