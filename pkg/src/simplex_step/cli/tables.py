"""
Machine-readable tables for command output.

Floats are written with ``repr``, the shortest decimal string that parses
back to the same double, so tables round-trip exactly and identical runs
produce identical bytes.
"""

import csv
import io
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

from ..harness.models import MetricsRow, RunSummary
from ..harness.sweep import RegionRow, SweepRow

STDOUT = "-"

SWEEP_HEADER = ("x", "eta_max", "b_entropy", "eta_ce")
REGION_HEADER = ("x", "eta", "eta_ce", "admissible")
SUMMARY_HEADER = (
    "strategy",
    "final_kl",
    "converged_step",
    "collapsed",
    "max_ratio",
    "admissible_fraction",
)

Cell = str | int | float | bool | None


class TableFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class OutputFormat:
    """Table encoding plus destination; path None means standard output."""

    kind: TableFormat = TableFormat.CSV
    path: Path | None = None

    @classmethod
    def parse(cls, kind: str, path: str | None) -> "OutputFormat":
        dest = None if path in (None, STDOUT) else Path(path)
        return cls(kind=TableFormat(kind), path=dest)


def format_cell(value: Cell) -> str:
    """CSV text for one cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Cell]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def render_json(records: Any) -> str:
    return json.dumps(records, indent=2) + "\n"


def render_table(header: Sequence[str], rows: Sequence[Sequence[Cell]], kind: TableFormat) -> str:
    """CSV text, or a JSON list with one object per row keyed by header."""
    if kind is TableFormat.CSV:
        return render_csv(header, rows)
    return render_json([dict(zip(header, row)) for row in rows])


def emit(text: str, path: Path | None) -> None:
    """Write text to path (creating parent directories) or to stdout."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def write_table(header: Sequence[str], rows: Sequence[Sequence[Cell]], out: OutputFormat) -> None:
    emit(render_table(header, rows, out.kind), out.path)


def read_csv_table(source: Path | str) -> tuple[list[str], list[list[str]]]:
    """
    Parse a CSV table written by this module.

    Args:
        source: a Path to read, or the CSV text itself

    Returns:
        (header, rows) with every cell as its raw string
    """
    text = source.read_text() if isinstance(source, Path) else source
    reader = csv.reader(io.StringIO(text))
    header = next(reader, [])
    return header, [row for row in reader if row]


# ============================================================================
# Per-command tables
# ============================================================================


def experiment_header(c_classes: int, with_admissible: bool = False) -> tuple[str, ...]:
    """t,p_0,...,p_{C-1},kl_to_target,b_entropy,eta_eff,eta_max,ratio"""
    header = (
        "t",
        *(f"p_{i}" for i in range(c_classes)),
        "kl_to_target",
        "b_entropy",
        "eta_eff",
        "eta_max",
        "ratio",
    )
    return (*header, "admissible") if with_admissible else header


def experiment_rows(rows: Sequence[MetricsRow], with_admissible: bool = False) -> list[tuple[Cell, ...]]:
    out = []
    for row in rows:
        cells: tuple[Cell, ...] = (
            row.t,
            *row.probs,
            row.kl_to_target,
            row.b_entropy,
            row.eta_eff,
            row.eta_max,
            row.ratio,
        )
        out.append((*cells, row.admissible) if with_admissible else cells)
    return out


def write_experiment_table(rows: Sequence[MetricsRow], c_classes: int, out: OutputFormat) -> None:
    # The CSV header is fixed; the admissibility flag rides along in JSON only.
    with_admissible = out.kind is TableFormat.JSON
    write_table(experiment_header(c_classes, with_admissible), experiment_rows(rows, with_admissible), out)


def summary_rows(summaries: dict[str, RunSummary]) -> list[tuple[Cell, ...]]:
    return [
        (
            name,
            s.final_kl,
            s.converged_step,
            s.collapsed,
            s.max_ratio,
            s.admissible_fraction,
        )
        for name, s in summaries.items()
    ]


def sweep_rows(rows: Sequence[SweepRow]) -> list[tuple[Cell, ...]]:
    return [tuple(r) for r in rows]


def region_rows(rows: Sequence[RegionRow]) -> list[tuple[Cell, ...]]:
    return [tuple(r) for r in rows]
