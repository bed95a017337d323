"""Report files: ``# key: value`` metadata followed by CSV tables.

::

    # command: thin
    # config: {"box_radius": null, "eps": 0.5, ...}
    # passed: true

    [table boxes]
    center,size,rank,...
    0:0,64,16,...

Floats are written with the shortest round-trip decimal, booleans as
``true``/``false``, missing values as an empty field and group elements or
labels as ``:``-joined ints, so no cell ever needs quoting.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel

from .frame_file import format_label


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool | np.bool_):
        return "true" if value else "false"
    if isinstance(value, int | np.integer):
        return str(int(value))
    if isinstance(value, float | np.floating):
        number = float(value)
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return repr(number)
    if isinstance(value, tuple):
        return format_label(value, sep=":")
    if isinstance(value, BaseModel):
        return json.dumps(value.model_dump(mode="json"), sort_keys=True)
    if isinstance(value, dict | list):
        return json.dumps(value, sort_keys=True, default=str)
    return str(value)


@dataclass
class Table:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple[str, ...]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"Table {self.name}: {len(values)} values for {len(self.columns)} columns"
            )
        self.rows.append(tuple(format_value(v) for v in values))

    def column(self, name: str) -> list[str]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]


@dataclass
class Report:
    """Ordered metadata plus named tables, rendered as text."""

    metadata: dict[str, str] = field(default_factory=dict)
    tables: dict[str, Table] = field(default_factory=dict)

    def meta(self, key: str, value: Any) -> None:
        self.metadata[key] = format_value(value)

    def table(self, name: str, columns: Sequence[str], rows: Iterable[Sequence[Any]] = ()) -> Table:
        table = Table(name, tuple(columns))
        for row in rows:
            table.add(*row)
        self.tables[name] = table
        return table

    @property
    def passed(self) -> bool | None:
        flag = self.metadata.get("passed")
        return None if flag is None else flag == "true"

    def render(self) -> str:
        out = io.StringIO()
        for key, value in self.metadata.items():
            out.write(f"# {key}: {value}\n")
        writer = csv.writer(out, lineterminator="\n")
        for table in self.tables.values():
            out.write(f"\n[table {table.name}]\n")
            writer.writerow(table.columns)
            writer.writerows(table.rows)
        return out.getvalue()

    def write(self, path: str | Path | None) -> None:
        """Write to ``path``, or to stdout when it is None or '-'."""
        text = self.render()
        if path is None or str(path) == "-":
            print(text, end="")
        else:
            Path(path).write_text(text, encoding="utf-8")


def parse_report(text: str) -> Report:
    """Inverse of Report.render."""
    report = Report()
    current: Table | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if current is None and line.startswith("# "):
            key, _, value = line[2:].partition(":")
            report.metadata[key.strip()] = value.strip()
        elif line.startswith("[table ") and line.endswith("]"):
            name = line[len("[table ") : -1]
            report.tables[name] = Table(name, ())
            current = report.tables[name]
        elif current is not None:
            cells = tuple(next(csv.reader([line])))
            if not current.columns:
                current.columns = cells
            else:
                current.rows.append(cells)
    return report
