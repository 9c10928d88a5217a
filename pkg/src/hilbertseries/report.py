"""Experiment reports: one JSON document plus a flat CSV of the trace.

Every experiment produces the same document shape: experiment name, the
parameters it ran with (with headline outcomes under params["outcome"]), a
trace of (parameter, estimate, slack) points, the sandwich fields, and the
wall-clock runtime. Reports are byte-deterministic except runtime_seconds.
Writes are atomic (temp file in the target directory, then rename), so a
crash never leaves a half-written report behind.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass

from .errors import ConfigError
from .normest import TracePoint

__all__ = [
    "ExperimentReport",
    "report_to_dict",
    "trace_csv_text",
    "atomic_write_text",
    "write_report",
]

_CSV_HEADER = "parameter,estimate,slack,cumulative_max"


@dataclass(frozen=True)
class ExperimentReport:
    experiment: str
    params: dict
    trace: list
    lower: float | None = None
    upper: float | None = None
    slack: float | None = None
    extrapolated: float | None = None
    runtime_seconds: float = 0.0


def _sane(value):
    """JSON-safe copy: non-finite floats become strings, keys stay sorted."""
    if isinstance(value, float):
        if math.isfinite(value):
            return value
        return repr(value)  # 'inf', '-inf', 'nan'
    if isinstance(value, dict):
        return {str(k): _sane(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [_sane(v) for v in value]
    if hasattr(value, "item") and callable(value.item) and not isinstance(value, (str, bytes)):
        try:
            return _sane(value.item())
        except (TypeError, ValueError):
            return str(value)
    return value


def _trace_rows(trace) -> list[dict]:
    rows = []
    running = -math.inf
    for pt in trace:
        if isinstance(pt, TracePoint):
            parameter, estimate, slack, detail = pt.parameter, pt.estimate, pt.slack, pt.detail
        else:
            parameter, estimate, slack, detail = pt
        running = max(running, estimate)
        row = {
            "parameter": parameter,
            "estimate": estimate,
            "slack": slack,
            "cumulative_max": running,
        }
        for key, val in (detail or {}).items():
            if key not in row:
                row[key] = val
        rows.append(row)
    return rows


def report_to_dict(report: ExperimentReport) -> dict:
    return {
        "experiment": report.experiment,
        "params": _sane(report.params),
        "trace": [_sane(r) for r in _trace_rows(report.trace)],
        "lower": _sane(report.lower),
        "upper": _sane(report.upper),
        "slack": _sane(report.slack),
        "extrapolated": _sane(report.extrapolated),
        "runtime_seconds": report.runtime_seconds,
    }


def trace_csv_text(report: ExperimentReport) -> str:
    lines = [_CSV_HEADER]
    for row in _trace_rows(report.trace):
        lines.append(
            ",".join(
                repr(float(row[col]))
                for col in ("parameter", "estimate", "slack", "cumulative_max")
            )
        )
    return "\n".join(lines) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report(report: ExperimentReport, path: str, fmt: str = "json") -> dict:
    """Write the report at path in the requested format, plus its sibling.

    fmt="json": the JSON document goes to path and the CSV trace to
    <path minus extension>.trace.csv. fmt="csv": the CSV goes to path and
    the JSON document to path + ".json". Returns {"json": ..., "csv": ...}
    with the paths written.
    """
    doc = json.dumps(report_to_dict(report), indent=2, sort_keys=False)
    csv_text = trace_csv_text(report)
    if fmt == "json":
        stem, _ = os.path.splitext(path)
        csv_path = stem + ".trace.csv"
        atomic_write_text(path, doc + "\n")
        atomic_write_text(csv_path, csv_text)
        return {"json": path, "csv": csv_path}
    if fmt == "csv":
        json_path = path + ".json"
        atomic_write_text(path, csv_text)
        atomic_write_text(json_path, doc + "\n")
        return {"json": json_path, "csv": path}
    raise ConfigError(f"unknown report format {fmt!r}")
