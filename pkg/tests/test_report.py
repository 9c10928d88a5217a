"""Report serialization, CSV traces, identity batteries, figure rendering."""

import json
import math
import os

import pytest

from hilbertseries.errors import ConfigError
from hilbertseries.figures import render_report_figure
from hilbertseries.identities import identity_suite
from hilbertseries.normest import TracePoint
from hilbertseries.report import (
    ExperimentReport,
    report_to_dict,
    trace_csv_text,
    write_report,
)


def sample_report():
    trace = [
        TracePoint(parameter=1.0, estimate=0.5, slack=0.1),
        TracePoint(parameter=2.0, estimate=0.4, slack=0.0, detail={"kind": "x"}),
        TracePoint(parameter=3.0, estimate=0.9, slack=math.inf),
    ]
    return ExperimentReport(
        experiment="demo",
        params={"a": 1, "outcome": {"verdict": True}},
        trace=trace,
        lower=0.9,
        upper=math.pi,
        slack=0.0,
        runtime_seconds=1.23,
    )


def test_trace_csv_running_max():
    text = trace_csv_text(sample_report())
    lines = text.strip().splitlines()
    assert lines[0] == "parameter,estimate,slack,cumulative_max"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[3] for r in rows] == ["0.5", "0.5", "0.9"]
    assert rows[2][2] == "inf"


def test_report_dict_sanitizes_nonfinite():
    doc = report_to_dict(sample_report())
    assert doc["trace"][2]["slack"] == "inf"
    assert doc["upper"] == math.pi
    json.dumps(doc)  # must be serializable as-is


def test_write_report_json_and_csv(tmp_path):
    report = sample_report()
    out = write_report(report, str(tmp_path / "r.json"), "json")
    assert os.path.exists(out["json"]) and os.path.exists(out["csv"])
    doc = json.load(open(out["json"]))
    assert doc["experiment"] == "demo"
    assert doc["params"]["outcome"]["verdict"] is True
    out2 = write_report(report, str(tmp_path / "r2.csv"), "csv")
    assert out2["csv"].endswith("r2.csv")
    with pytest.raises(ConfigError):
        write_report(report, str(tmp_path / "r3.x"), "yaml")


def test_write_report_atomic_leaves_no_partials(tmp_path):
    report = sample_report()
    write_report(report, str(tmp_path / "r.json"), "json")
    leftovers = [p for p in os.listdir(tmp_path) if p.startswith("tmp")]
    assert leftovers == []


def test_identity_suite_all_green():
    rows, summary = identity_suite(trials=50, seed=1)
    assert summary["all_within_tolerance"] is True
    suites = {row.detail["kind"] for row in rows}
    assert suites == {
        "beta_reflection",
        "stirling_envelope",
        "gamma_recurrence",
        "moment_tail_identity",
    }


def test_identity_suite_deterministic():
    _, s1 = identity_suite(trials=30, seed=9)
    _, s2 = identity_suite(trials=30, seed=9)
    assert s1 == s2


def test_render_report_figure(tmp_path):
    path = str(tmp_path / "fig.png")
    got = render_report_figure(report_to_dict(sample_report()), path)
    assert got == path
    assert os.path.getsize(path) > 1000


def test_render_report_figure_empty_trace(tmp_path):
    report = ExperimentReport(experiment="empty", params={}, trace=[])
    got = render_report_figure(report_to_dict(report), str(tmp_path / "f.png"))
    assert got is None
