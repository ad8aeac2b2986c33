"""CSV rendering of run reports."""
from __future__ import annotations

import csv
import io

from dynst.harness.runner import RunReport

VERSION = "dynst-report-v1"
COLUMNS = ["index", "op", "v", "terminals", "cost", "replacements", "oracle_ops",
           "baseline", "ratio", "bound", "status"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def report_columns(report: RunReport) -> list[str]:
    cols = list(COLUMNS)
    if report.config.differential:
        cols.append("ref_cost")
    if report.config.timing:
        cols.append("wall_ms")
    return cols


def to_csv(report: RunReport) -> str:
    """Header, one row per op, then warning and summary lines.

    Wall time is written only when the config asks for it, so equal inputs
    give byte-identical reports.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = report_columns(report)
    w.writerow([VERSION] + cols)
    for row in report.rows:
        w.writerow(["row"] + [_fmt(row.get(c)) for c in cols])
    for index, msg in report.warnings:
        w.writerow(["warning", index, msg])
    for msg in report.failures:
        w.writerow(["failure", msg])
    cfg = report.config
    for key in ("engine", "backend", "eps", "tau", "l", "seed", "baseline", "scheme", "msf"):
        w.writerow(["config", key, _fmt(getattr(cfg, key))])
    for key, val in report.summary.items():
        w.writerow(["summary", key, _fmt(val)])
    return buf.getvalue()


def parse_csv(text: str) -> tuple[list[dict], dict[str, str]]:
    """Rows (as column -> string) and summary values of a rendered report."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if not header or header[0] != VERSION:
        raise ValueError("not a dynst report")
    cols = header[1:]
    rows, summary = [], {}
    for rec in reader:
        if rec[0] == "row":
            rows.append(dict(zip(cols, rec[1:])))
        elif rec[0] == "summary":
            summary[rec[1]] = rec[2]
    return rows, summary
