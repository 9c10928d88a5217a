"""Cross-identity verification suites.

Four families of checks, each pairing two independent computations of the
same quantity: the Beta/cosecant reflection identity on a fixed grid, the
Stirling remainder against its envelope, the Gamma recurrence at seeded
random points, and the moment/tail integration-by-parts identity across the
standard measure battery. Each row records the observed deviation as the
estimate and the tolerance it must stay under as the slack, so a trace
whose estimates all sit below their slacks is a clean pass.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .measures import (
    Measure,
    OneMinusTPowerDensity,
    dirac_measure,
    lebesgue_measure,
    moment_via_tail,
)
from .normest import TracePoint
from .specfun import beta, gamma, pi_csc, stirling_remainder

__all__ = ["battery_measures", "identity_suite"]

_BETA_CSC_TOL = 1e-10
_RECURRENCE_TOL = 1e-12
_MOMENT_TAIL_ABS = 1e-9
_MOMENT_TAIL_REL = 1e-8
_STIRLING_POINTS = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0)


def battery_measures() -> list[Measure]:
    """The standard four-measure battery used across the verification suites."""
    return [
        lebesgue_measure(),
        dirac_measure(0.5),
        Measure(density=OneMinusTPowerDensity(2.0), label="one_minus_t:2"),
        Measure(density=OneMinusTPowerDensity(0.5), label="one_minus_t:0.5"),
    ]


def identity_suite(trials: int = 200, seed: int = 0) -> tuple[list[TracePoint], dict]:
    """Run all four suites; returns trace rows and a per-suite summary."""
    if trials < 1:
        raise DomainError("identity suite needs trials >= 1")
    rows: list[TracePoint] = []
    summary: dict = {}

    worst = 0.0
    for k in range(1, 100):
        s = k / 100.0
        reference = pi_csc(s)
        deviation = abs(beta(s, 1.0 - s) - reference) / reference
        worst = max(worst, deviation)
        rows.append(
            TracePoint(
                parameter=s,
                estimate=deviation,
                slack=_BETA_CSC_TOL,
                detail={"kind": "beta_reflection"},
            )
        )
    summary["beta_reflection"] = {"count": 99, "max_deviation": worst, "tol": _BETA_CSC_TOL}

    worst = 0.0
    violations = 0
    for x in _STIRLING_POINTS:
        remainder, bound = stirling_remainder(x)
        ratio = abs(remainder) / bound
        worst = max(worst, ratio)
        if abs(remainder) > bound:
            violations += 1
        rows.append(
            TracePoint(
                parameter=x,
                estimate=abs(remainder),
                slack=bound,
                detail={"kind": "stirling_envelope"},
            )
        )
    summary["stirling_envelope"] = {
        "count": len(_STIRLING_POINTS),
        "max_ratio_to_bound": worst,
        "violations": violations,
    }

    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.5, 50.0, size=trials)
    worst = 0.0
    for x in xs:
        x = float(x)
        lhs = gamma(x + 1.0)
        deviation = abs(lhs - x * gamma(x)) / lhs
        worst = max(worst, deviation)
        rows.append(
            TracePoint(
                parameter=x,
                estimate=deviation,
                slack=_RECURRENCE_TOL,
                detail={"kind": "gamma_recurrence"},
            )
        )
    summary["gamma_recurrence"] = {
        "count": trials,
        "max_deviation": worst,
        "tol": _RECURRENCE_TOL,
    }

    worst = 0.0
    count = 0
    for measure in battery_measures():
        for n in range(2, 51):
            direct = measure.moment(n)
            via_tail = moment_via_tail(measure, n)
            tol = _MOMENT_TAIL_ABS + _MOMENT_TAIL_REL * abs(direct)
            deviation = abs(via_tail - direct)
            worst = max(worst, deviation / tol)
            count += 1
            rows.append(
                TracePoint(
                    parameter=float(n),
                    estimate=deviation,
                    slack=tol,
                    detail={"kind": "moment_tail_identity", "measure": measure.label},
                )
            )
    summary["moment_tail_identity"] = {"count": count, "max_ratio_to_tol": worst}

    summary["all_within_tolerance"] = all(
        row.estimate <= row.slack for row in rows
    )
    return rows, summary
