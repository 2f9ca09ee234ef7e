"""Uniform tabular results: typed columns, rows, per-row provenance."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Column:
    name: str
    type: str  # "number" | "text"

    def __post_init__(self):
        if self.type not in ("number", "text"):
            raise ValueError(f"bad column type {self.type!r}")


@dataclass
class ResultSet:
    """Rows of number/text/null cells; provenance holds one source id per row."""

    columns: list[Column]
    rows: list[list]
    provenance: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.provenance:
            self.provenance = [""] * len(self.rows)
        if len(self.provenance) != len(self.rows):
            raise ValueError("provenance must have one entry per row")
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(f"row width {len(row)} != column count {width}")
            for i, cell in enumerate(row):
                if isinstance(cell, bool):
                    raise ValueError("boolean cells are not supported")
                if isinstance(cell, int):
                    row[i] = float(cell)
                elif not (cell is None or isinstance(cell, (float, str))):
                    raise ValueError(f"bad cell {cell!r}")
                if self.columns[i].type == "number" and isinstance(row[i], str):
                    raise ValueError(
                        f"text in numeric column '{self.columns[i].name}'")

    def column_index(self, name: str) -> int:
        for i, col in enumerate(self.columns):
            if col.name == name:
                return i
        raise KeyError(name)

    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def sorted_canonical(self) -> "ResultSet":
        """Rows ordered column by column: nulls first, then numbers, then text."""
        order = sorted(range(len(self.rows)),
                       key=lambda i: row_sort_key(self.rows[i]))
        return ResultSet(list(self.columns),
                         [list(self.rows[i]) for i in order],
                         [self.provenance[i] for i in order])


def row_sort_key(row) -> tuple:
    return tuple(cell_sort_key(cell) for cell in row)


def cell_sort_key(cell) -> tuple:
    if cell is None:
        return (0, "")
    if isinstance(cell, (int, float)):
        return (1, cell)
    return (2, cell)


def render_number(value: float) -> str:
    """Minimal decimal representation; integers print without a fraction."""
    value = float(value)
    if value.is_integer():
        return str(int(value))
    return repr(value)


def render_cell(cell) -> str:
    if cell is None:
        return ""
    if isinstance(cell, (int, float)):
        return render_number(cell)
    return cell


def render_table(rs: ResultSet) -> str:
    """Header line plus one `|`-separated line per row."""
    lines = ["|".join(rs.column_names())]
    lines.extend("|".join(render_cell(cell) for cell in row) for row in rs.rows)
    return "\n".join(lines)


def render_csv(rs: ResultSet) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(rs.column_names())
    for row in rs.rows:
        writer.writerow([render_cell(cell) for cell in row])
    return buffer.getvalue().rstrip("\n")
