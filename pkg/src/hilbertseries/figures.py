"""Trace figures rendered next to the delimited outputs.

One figure per report: estimates against the schedule parameter, the
running max, and the upper bound when the experiment has one. Matplotlib is
imported lazily with the Agg backend so headless runs never touch a
display.
"""

from __future__ import annotations

import math
import os
import tempfile

__all__ = ["render_report_figure"]


def render_report_figure(report_dict: dict, path: str) -> str | None:
    """Render the trace of a serialized report to a PNG at path.

    Returns the path, or None when the trace is empty. Written atomically
    like the text outputs.
    """
    trace = report_dict.get("trace") or []
    points = [
        (row["parameter"], row["estimate"], row["cumulative_max"])
        for row in trace
        if isinstance(row.get("parameter"), (int, float))
        and isinstance(row.get("estimate"), (int, float))
    ]
    if not points:
        return None

    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    cm = [p[2] for p in points]

    fig, ax = plt.subplots(figsize=(7.0, 4.4), dpi=130)
    ax.plot(xs, ys, "o", markersize=4, label="estimate", color="#1f77b4")
    ax.plot(xs, cm, drawstyle="steps-post", linewidth=1.2, label="running max", color="#2ca02c")
    upper = report_dict.get("upper")
    if isinstance(upper, (int, float)) and math.isfinite(upper):
        ax.axhline(upper, linestyle="--", linewidth=1.0, color="#d62728", label="upper bound")
    positive = all(x > 0 for x in xs)
    if positive and max(xs) / min(xs) > 100.0:
        ax.set_xscale("log")
    if all(y > 0 for y in ys) and max(ys) / max(min(ys), 1e-300) > 1e4:
        ax.set_yscale("log")
    ax.set_xlabel("parameter")
    ax.set_ylabel("estimate")
    label = report_dict.get("params", {}).get("measure", {})
    title = report_dict.get("experiment", "experiment")
    if isinstance(label, dict) and label.get("label"):
        title = f"{title} ({label['label']})"
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()

    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".png")
    os.close(fd)
    try:
        fig.savefig(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    finally:
        plt.close(fig)
    return path
