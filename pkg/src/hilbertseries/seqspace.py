"""Weighted sequence spaces and the extremal test families.

The norm is ||a|| = (sum_n n^alpha |a_n|^p)^(1/p) over n >= 1. Sequences are
stored 0-based (values[i] is a_{i+1}) with an optional generator record so
that tail sums beyond the stored horizon keep closed-form upper bounds; a
sequence without a generator is treated as finitely supported and has zero
tails.

Families:
  epsilon  a_n = (eps/(1+eps))^(1/p) n^(-(1+alpha+eps)/p), norm^p <= 1
  b        a_n = (1-b^2)^(1/p) n^(-alpha/p) b^(2n/p), norm^p = b^2 - b^(2(M+1))
  tau      a_n = 0 for n <= N, (tau N^tau)^(1/p) n^(-(1+alpha+tau)/p) after
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, HypothesisRangeError, PrecisionCapError
from .summation import compensated_sum

__all__ = [
    "WeightParams",
    "GeneratorInfo",
    "Seq",
    "weighted_norm",
    "make_epsilon_family",
    "make_b_family",
    "make_tau_family",
    "norm_tail_bound",
    "abs_tail_bound",
    "power_series_sum",
]

_B_FAMILY_MAX_LEN = 1 << 26


@dataclass(frozen=True)
class WeightParams:
    """Exponent p and weight exponents for input (alpha) and output (beta)."""

    p: float
    alpha: float
    beta: float | None = None

    def __post_init__(self):
        if not self.p > 1.0:
            raise DomainError(f"p must exceed 1, got {self.p!r}")
        if self.beta is None:
            object.__setattr__(self, "beta", self.alpha)

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)

    def in_theorem_range(self) -> bool:
        return (-1.0 < self.alpha < self.p - 1.0) and (-1.0 < self.beta < self.p - 1.0)

    def require_theorem_range(self) -> None:
        if not self.in_theorem_range():
            raise HypothesisRangeError(
                f"weight exponents alpha={self.alpha}, beta={self.beta} outside "
                f"(-1, p-1) = (-1, {self.p - 1})"
            )


@dataclass(frozen=True)
class GeneratorInfo:
    family: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Seq:
    values: np.ndarray = field(repr=False)
    generator: GeneratorInfo | None = None
    # per-entry upper bounds for contributions an operator could not see,
    # attached by apply() under the bounding tail policy
    tail_upper: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("a sequence needs a nonempty 1-d value array")
        if not np.all(np.isfinite(arr)):
            raise DomainError("sequence values must be finite")
        object.__setattr__(self, "values", arr)

    @property
    def M(self) -> int:
        return int(self.values.size)


def _weight_exponent(w: WeightParams, use_beta: bool) -> float:
    return float(w.beta if use_beta else w.alpha)


def weighted_norm(a: Seq | np.ndarray, w: WeightParams, use_beta: bool = False) -> float:
    """(sum n^e |a_n|^p)^(1/p), exactly rounded accumulation."""
    values = a.values if isinstance(a, Seq) else np.asarray(a, dtype=float)
    n = np.arange(1, values.size + 1, dtype=float)
    e = _weight_exponent(w, use_beta)
    terms = n**e * np.abs(values) ** w.p
    return compensated_sum(terms) ** (1.0 / w.p)


def make_epsilon_family(w: WeightParams, eps: float, M: int) -> Seq:
    if not eps > 0:
        raise DomainError("epsilon family needs eps > 0")
    if M < 1:
        raise DomainError("family horizon must be >= 1")
    n = np.arange(1, M + 1, dtype=float)
    scale = (eps / (1.0 + eps)) ** (1.0 / w.p)
    values = scale * n ** (-(1.0 + w.alpha + eps) / w.p)
    return Seq(values, GeneratorInfo("epsilon", {"eps": float(eps)}))


def make_b_family(w: WeightParams, b: float, M: int | None = None) -> Seq:
    """Geometric family; when M is omitted it extends until the dropped tail
    is below 1e-16 of the norm, raising PrecisionCapError past the length cap."""
    if not 0.0 < b < 1.0:
        raise DomainError("b family needs 0 < b < 1")
    if M is None:
        # b^(2M) <= 1e-16  <=>  M >= -8 ln 10 / ln b
        needed = math.ceil(-8.0 * math.log(10.0) / math.log(b))
        M = max(needed, 8)
        if M > _B_FAMILY_MAX_LEN:
            raise PrecisionCapError(
                f"b family with b={b!r} needs {M} terms to certify its tail; "
                f"cap is {_B_FAMILY_MAX_LEN}"
            )
    if M < 1:
        raise DomainError("family horizon must be >= 1")
    n = np.arange(1, M + 1, dtype=float)
    log_vals = (
        math.log1p(-b * b) / w.p
        + (-w.alpha / w.p) * np.log(n)
        + (2.0 * math.log(b) / w.p) * n
    )
    return Seq(np.exp(log_vals), GeneratorInfo("b", {"b": float(b)}))


def make_tau_family(w: WeightParams, tau: float, N: int, M: int) -> Seq:
    if not tau > 0:
        raise DomainError("tau family needs tau > 0")
    if N < 1:
        raise DomainError("tau family needs cutoff N >= 1")
    if M <= N:
        raise DomainError(f"family horizon M={M} must exceed the cutoff N={N}")
    n = np.arange(1, M + 1, dtype=float)
    scale = (tau * float(N) ** tau) ** (1.0 / w.p)
    values = scale * n ** (-(1.0 + w.alpha + tau) / w.p)
    values[: N] = 0.0
    return Seq(values, GeneratorInfo("tau", {"tau": float(tau), "N": int(N)}))


def _family_decay(a: Seq, w: WeightParams):
    """(scale, gamma) of the power-law part a_n = scale * n^(-gamma), or None."""
    if a.generator is None:
        return None
    fam, params = a.generator.family, a.generator.params
    if fam == "epsilon":
        eps = params["eps"]
        return (eps / (1.0 + eps)) ** (1.0 / w.p), (1.0 + w.alpha + eps) / w.p
    if fam == "tau":
        tau, N = params["tau"], params["N"]
        return (tau * float(N) ** tau) ** (1.0 / w.p), (1.0 + w.alpha + tau) / w.p
    return None


def norm_tail_bound(a: Seq, w: WeightParams, use_beta: bool = False) -> float:
    """Upper bound for sum_{n > M} n^e a_n^p beyond the stored horizon.

    Closed forms per family (integral comparison for power laws, geometric
    ratio for the b family); inf when the tail genuinely diverges for the
    requested weight, 0.0 for finitely supported sequences.
    """
    if a.generator is None or a.generator.family == "custom":
        return 0.0
    e = _weight_exponent(w, use_beta)
    M = float(a.M)
    fam, params = a.generator.family, a.generator.params
    if fam in ("epsilon", "tau"):
        if fam == "epsilon":
            eps = params["eps"]
            coef = eps / (1.0 + eps)
        else:
            tau = params["tau"]
            eps = tau
            coef = tau * float(params["N"]) ** tau
        # sum n^(e - alpha - 1 - eps) beyond M
        drop = eps - (e - w.alpha)
        if drop <= 0:
            return float("inf")
        return coef * M ** (-drop) / drop
    if fam == "b":
        b = params["b"]
        growth = max(0.0, e - w.alpha)
        ratio = b * b * (1.0 + 1.0 / (M + 1.0)) ** growth
        if ratio >= 1.0:
            return float("inf")
        lead = (1.0 - b * b) * (M + 1.0) ** (e - w.alpha) * b ** (2.0 * (M + 1.0))
        return lead / (1.0 - ratio)
    return 0.0


def abs_tail_bound(a: Seq, w: WeightParams) -> float:
    """Upper bound for sum_{n > M} a_n (unweighted), inf when divergent."""
    if a.generator is None or a.generator.family == "custom":
        return 0.0
    fam = a.generator.family
    M = float(a.M)
    decay = _family_decay(a, w)
    if decay is not None:
        scale, gamma = decay
        if gamma <= 1.0:
            return float("inf")
        return scale * M ** (1.0 - gamma) / (gamma - 1.0)
    if fam == "b":
        b = a.generator.params["b"]
        growth = max(0.0, -w.alpha) / w.p
        ratio = (1.0 + 1.0 / (M + 1.0)) ** growth * b ** (2.0 / w.p)
        if ratio >= 1.0:
            return float("inf")
        first = (
            (1.0 - b * b) ** (1.0 / w.p)
            * (M + 1.0) ** (-w.alpha / w.p)
            * b ** (2.0 * (M + 1.0) / w.p)
        )
        return first / (1.0 - ratio)
    return 0.0


_POWER_SERIES_MAX_TERMS = 1 << 26
_POWER_SERIES_CHUNK = 1 << 18


def power_series_sum(c: float, t: float, rel_tol: float = 1e-14) -> float:
    """sum_{n >= 1} n^(c-1) t^(2n), certified to rel_tol by a geometric tail.

    After the partial sum the remaining terms are dominated by the geometric
    series with ratio ((n+1)/n)^(c-1) t^2 < 1, so the cutoff is chosen where
    that bound drops below rel_tol of the partial sum. Raises
    PrecisionCapError if the cap on the number of terms is hit first (t too
    close to 1).
    """
    if not c > 0:
        raise DomainError("power_series_sum needs c > 0")
    if not 0.0 <= t < 1.0:
        raise DomainError("power_series_sum needs 0 <= t < 1")
    if t == 0.0:
        return 0.0
    t2 = t * t
    log_t2 = 2.0 * math.log(t)
    partials = []
    start = 1
    while start <= _POWER_SERIES_MAX_TERMS:
        stop = min(start + _POWER_SERIES_CHUNK, _POWER_SERIES_MAX_TERMS + 1)
        n = np.arange(start, stop, dtype=float)
        # log-domain per term: n^(c-1) t^(2n) overflows neither way
        partials.append(float(np.sum(np.exp((c - 1.0) * np.log(n) + log_t2 * n))))
        total = math.fsum(partials)
        last = float(stop - 1)
        ratio = (1.0 + 1.0 / last) ** max(c - 1.0, 0.0) * t2
        if ratio < 1.0:
            next_term = math.exp((c - 1.0) * math.log(last + 1.0) + log_t2 * (last + 1.0))
            bound = next_term / (1.0 - ratio)
            if bound <= rel_tol * abs(total):
                return total
        start = stop
    raise PrecisionCapError(
        f"power_series_sum: tail bound above {rel_tol:g} of the partial sum "
        f"after {_POWER_SERIES_MAX_TERMS} terms (t = {t!r})"
    )
