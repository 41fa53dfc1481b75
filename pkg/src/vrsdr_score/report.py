"""Score reports and their table / json / csv renderings.

The json form is lossless (full-precision fractions plus the integer
numerator and denominator); the table mirrors the benchmark layout with
percentages at one decimal, or two when the hundredths digit is non-zero.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .metrics import aggregate_avg

REPORT_SCHEMA = "vrsdr-score-report"
REPORT_VERSION = 1

TASK_ORDER = ("sr", "sv", "sl", "si", "vrsdr")
METRIC_ORDER = ("wer", "error", "miss_rate", "sa_wer", "ier", "cp_wer", "der")
SUBSET_ORDER = ("easy", "hard", "none")

# (header, task, metric, subset) for the seven averaged columns
AVG_COLUMNS = (
    ("SR", "sr", "wer", "easy"),
    ("SV", "sv", "error", "easy"),
    ("SL", "sl", "miss_rate", "easy"),
    ("SI-easy", "si", "error", "easy"),
    ("SI-hard", "si", "error", "hard"),
    ("What", "vrsdr", "sa_wer", "hard"),
    ("When", "vrsdr", "ier", "hard"),
)

Number = Union[Fraction, float]


@dataclass
class ScoreReport:
    task: str
    metric: str
    value: Optional[Number]
    subset: str = "none"
    count: int = 0
    errors: Optional[int] = None
    total: Optional[int] = None
    details: list[dict] = field(default_factory=list)

    def sort_key(self):
        return (
            TASK_ORDER.index(self.task) if self.task in TASK_ORDER else len(TASK_ORDER),
            self.task,
            METRIC_ORDER.index(self.metric) if self.metric in METRIC_ORDER else len(METRIC_ORDER),
            self.metric,
            SUBSET_ORDER.index(self.subset) if self.subset in SUBSET_ORDER else len(SUBSET_ORDER),
        )

    def to_json(self) -> dict:
        return {
            "task": self.task,
            "metric": self.metric,
            "subset": self.subset,
            "count": self.count,
            "value": None if self.value is None else float(self.value),
            "errors": self.errors,
            "total": self.total,
            "details": self.details,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ScoreReport":
        errors, total = obj.get("errors"), obj.get("total")
        if errors is not None and total:
            value: Optional[Number] = Fraction(errors, total)
        else:
            value = obj.get("value")
        return cls(obj["task"], obj["metric"], value, obj.get("subset", "none"), obj.get("count", 0),
                   errors, total, list(obj.get("details", [])))


def sort_reports(reports: Iterable[ScoreReport]) -> list[ScoreReport]:
    return sorted(reports, key=ScoreReport.sort_key)


def format_percent(value: Number) -> str:
    pct = float(value) * 100
    two = f"{pct:.2f}"
    return two if not two.endswith("0") else f"{pct:.1f}"


def _lookup(reports: Sequence[ScoreReport], task: str, metric: str, subset: str) -> Optional[ScoreReport]:
    exact = fallback = None
    for rep in reports:
        if rep.task == task and rep.metric == metric and rep.value is not None:
            if rep.subset == subset:
                exact = rep
            elif rep.subset == "none":
                fallback = rep
    return exact or fallback


def avg_columns(reports: Sequence[ScoreReport]) -> Optional[list[float]]:
    """The seven column values in percent, or None if any is missing."""
    values = []
    for _, task, metric, subset in AVG_COLUMNS:
        rep = _lookup(reports, task, metric, subset)
        if rep is None:
            return None
        values.append(float(rep.value) * 100)
    return values


def compute_avg(reports: Sequence[ScoreReport]) -> Optional[float]:
    cols = avg_columns(reports)
    return None if cols is None else aggregate_avg(cols)


def render_table(reports: Sequence[ScoreReport]) -> str:
    reports = sort_reports(reports)
    rows = [("task", "metric", "subset", "n", "value(%)")]
    for rep in reports:
        value = "-" if rep.value is None else format_percent(rep.value)
        rows.append((rep.task, rep.metric, rep.subset, str(rep.count), value))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    cols = avg_columns(reports)
    if cols is not None:
        header = [c[0] for c in AVG_COLUMNS] + ["AVG"]
        cells = [format_percent(v / 100) for v in cols] + [format_percent(aggregate_avg(cols) / 100)]
        w = [max(len(h), len(c)) for h, c in zip(header, cells)]
        lines.append("")
        lines.append(" | ".join(h.rjust(x) for h, x in zip(header, w)))
        lines.append(" | ".join(c.rjust(x) for c, x in zip(cells, w)))
    return "\n".join(lines) + "\n"


def render_json(reports: Sequence[ScoreReport], options: Optional[dict] = None) -> str:
    reports = sort_reports(reports)
    cols = avg_columns(reports)
    doc = {
        "schema": REPORT_SCHEMA,
        "version": REPORT_VERSION,
        "options": options or {},
        "reports": [rep.to_json() for rep in reports],
        "avg": None
        if cols is None
        else {"columns": [c[0] for c in AVG_COLUMNS], "values": cols, "value": aggregate_avg(cols)},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_report_json(text: str) -> list[ScoreReport]:
    doc = json.loads(text)
    if doc.get("schema") != REPORT_SCHEMA or doc.get("version") != REPORT_VERSION:
        raise ValueError("not a version-1 score report")
    return [ScoreReport.from_json(obj) for obj in doc["reports"]]


def render_csv(reports: Sequence[ScoreReport]) -> str:
    reports = sort_reports(reports)
    metrics = [m for m in METRIC_ORDER if any(r.metric == m for r in reports)]
    metrics += sorted({r.metric for r in reports} - set(metrics))
    rows: dict[tuple[str, str], dict] = {}
    for rep in reports:
        row = rows.setdefault((rep.task, rep.subset), {"task": rep.task, "subset": rep.subset, "count": 0})
        row["count"] = max(row["count"], rep.count)
        row[rep.metric] = "" if rep.value is None else repr(float(rep.value))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["task", "subset", "count", *metrics], restval="", lineterminator="\n")
    writer.writeheader()
    for row in rows.values():
        writer.writerow(row)
    return buf.getvalue()


def emit_report(
    reports: Sequence[ScoreReport],
    format: str = "table",
    path: Optional[Union[str, Path]] = None,
    options: Optional[dict] = None,
) -> str:
    """Render ``reports`` and write them to ``path`` (stdout when None)."""
    if not reports:
        raise ValueError("no reports to emit")
    if format == "table":
        text = render_table(reports)
    elif format == "json":
        text = render_json(reports, options)
    elif format == "csv":
        text = render_csv(reports)
    else:
        raise ValueError(f"unknown report format {format!r}")
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
