"""Compensated and closed-form summation helpers.

Everything downstream that claims a certified digit count funnels through
here: norms use exact (Shewchuk) summation, dense matvecs use a vectorized
Neumaier sweep, and very long power sums use Euler-Maclaurin with explicit
derivative corrections instead of term-by-term addition.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "compensated_sum",
    "neumaier_accumulate",
    "partial_power_sum",
]


def compensated_sum(values) -> float:
    """Exactly rounded sum of a 1-d array (Shewchuk via math.fsum)."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("compensated_sum expects a 1-d array")
    return math.fsum(arr.tolist())


class neumaier_accumulate:
    """Running Neumaier sum over same-shape vectors.

    Used by the dense matvec: one `add` per input column keeps the error of
    each output entry at a few ulps independent of the number of columns.
    """

    def __init__(self, shape):
        self.total = np.zeros(shape)
        self._comp = np.zeros(shape)

    def add(self, vec: np.ndarray) -> None:
        t = self.total + vec
        big = np.abs(self.total) >= np.abs(vec)
        # lost low-order bits, branch on which operand dominated
        self._comp += np.where(big, (self.total - t) + vec, (vec - t) + self.total)
        self.total = t

    def value(self) -> np.ndarray:
        return self.total + self._comp


# Crossover below which the sum is done term by term with fsum. Large enough
# that the asymptotic corrections are far into their regime above it.
_EXACT_HEAD = 10_000

# Bernoulli-number coefficients B2/2! and B4/4! of the Euler-Maclaurin tail.
_B2_OVER_2F = 1.0 / 12.0
_B4_OVER_4F = -1.0 / 720.0


def partial_power_sum(s: float, m: int) -> float:
    """sum_{k=1}^{m} k^(-s) for real s, huge m allowed.

    Exact below the crossover; above it, Euler-Maclaurin from the crossover
    point with B2 and B4 corrections. The first neglected term is of order
    K^(-s-5) relative to the head, which is below double precision for the
    crossover used here. s = 1 is fine (the integral term becomes log).
    """
    if m < 1:
        raise ValueError("partial_power_sum needs m >= 1")
    m = int(m)
    if m <= _EXACT_HEAD:
        k = np.arange(1, m + 1, dtype=float)
        return math.fsum(np.power(k, -s).tolist())

    kk = float(_EXACT_HEAD)
    mm = float(m)
    head = partial_power_sum(s, _EXACT_HEAD)

    if s == 1.0:
        integral = math.log(mm) - math.log(kk)
    else:
        integral = (mm ** (1.0 - s) - kk ** (1.0 - s)) / (1.0 - s)

    def f(x: float) -> float:
        return x ** (-s)

    def df(x: float) -> float:
        return -s * x ** (-s - 1.0)

    def d3f(x: float) -> float:
        return -s * (s + 1.0) * (s + 2.0) * x ** (-s - 3.0)

    tail = integral + 0.5 * (f(kk) + f(mm))
    tail += _B2_OVER_2F * (df(mm) - df(kk))
    tail += _B4_OVER_4F * (d3f(mm) - d3f(kk))
    # head already counts f(K); the trapezoid endpoint would double it
    return head + tail - f(kk)
