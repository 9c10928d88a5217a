"""Gauss-Legendre quadrature with certified error accounting.

Two entry points. `adaptive_quad` is plain bisection for integrands that are
smooth on the closed interval. `power_endpoint_quad` handles integrands with
an algebraic factor u^(s-1) at the left endpoint: it lays a geometric dyadic
mesh toward u = 0, where every cell excludes the singularity and the fixed
rule converges at machine precision, and closes with an analytic stub bound.
Integrating singular factors in the variable measured from the singular
endpoint is mandatory; bisecting toward t = 1 in the original variable makes
the quadrature nodes round onto the singularity once the cell width reaches
a few ulps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, PrecisionCapError

__all__ = ["QuadResult", "adaptive_quad", "power_endpoint_quad"]


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_bound: float
    cells: int

    def __float__(self) -> float:
        return self.value


@lru_cache(maxsize=None)
def _gl_rule(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


def _gl_cell(f, a: float, b: float, n: int = 15) -> float:
    nodes, weights = _gl_rule(n)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.dot(weights, f(mid + half * nodes)))


def adaptive_quad(
    f,
    a: float,
    b: float,
    abs_tol: float = 1e-13,
    rel_tol: float = 1e-11,
    max_depth: int = 48,
) -> QuadResult:
    """Bisection quadrature for integrands smooth on [a, b].

    The per-cell error estimate is the difference between the 15-point value
    and its two-halves refinement; a cell is accepted when the estimate fits
    its width-proportional share of abs_tol or the relative budget. Raises
    PrecisionCapError when a cell at max_depth still fails its budget.
    """
    if not b > a:
        raise DomainError("adaptive_quad needs b > a")
    whole = _gl_cell(f, a, b)
    stack = [(a, b, whole, 0)]
    total = 0.0
    err = 0.0
    cells = 0
    while stack:
        lo, hi, coarse, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gl_cell(f, lo, mid)
        right = _gl_cell(f, mid, hi)
        fine = left + right
        est = abs(fine - coarse)
        share = abs_tol * (hi - lo) / (b - a)
        budget = max(share, rel_tol * abs(whole))
        if est <= budget or not np.isfinite(est):
            if not np.isfinite(fine):
                raise DomainError("integrand not finite inside the interval")
            total += fine
            err += est
            cells += 1
            continue
        if depth >= max_depth:
            raise PrecisionCapError(
                f"adaptive_quad: cell [{lo}, {hi}] still off budget at depth {depth}"
            )
        stack.append((lo, mid, left, depth + 1))
        stack.append((mid, hi, right, depth + 1))
    return QuadResult(total, err, cells)


def power_endpoint_quad(
    f_smooth,
    s: float,
    upper: float,
    f_bound: float,
    fprime_bound: float | None = None,
    abs_tol: float = 1e-13,
    rel_tol: float = 1e-11,
    max_cells: int = 4000,
) -> QuadResult:
    """integral_0^upper u^(s-1) f_smooth(u) du with s > 0.

    f_smooth must be finite on [0, upper]; f_bound is a caller-certified
    bound for |f_smooth| there, and fprime_bound (optional) one for its
    derivative near 0. Cells [h/2, h] shrink geometrically; the remaining
    stub [0, h] is closed either by the crude bound f_bound * h^s / s or,
    when fprime_bound is given, by the first-order value
    f_smooth(0) h^s / s with error fprime_bound * h^(s+1) / (s+1).
    """
    if s <= 0:
        raise DomainError("power_endpoint_quad needs s > 0")
    if upper <= 0:
        raise DomainError("power_endpoint_quad needs upper > 0")

    def g(u):
        u = np.asarray(u, dtype=float)
        return u ** (s - 1.0) * f_smooth(u)

    total = 0.0
    h = float(upper)
    cells = 0
    f0 = float(f_smooth(np.array([0.0]))[0]) if fprime_bound is not None else 0.0
    while True:
        crude = f_bound * h**s / s
        budget = max(abs_tol, rel_tol * abs(total)) * 0.5
        if crude <= budget:
            return QuadResult(total, crude, cells)
        if fprime_bound is not None:
            first_order_err = fprime_bound * h ** (s + 1.0) / (s + 1.0)
            if first_order_err <= budget:
                return QuadResult(total + f0 * h**s / s, first_order_err, cells)
        if cells >= max_cells:
            raise PrecisionCapError(
                f"power_endpoint_quad: stub bound {crude:.3e} above budget "
                f"after {cells} cells (s = {s})"
            )
        total += _gl_cell(g, h / 2.0, h)
        h /= 2.0
        cells += 1
