"""Compensated sums, tail-exact power sums, and the two quadrature routes."""

import math

import numpy as np
import pytest

from hilbertseries.errors import DomainError, PrecisionCapError
from hilbertseries.quadrature import adaptive_quad, power_endpoint_quad
from hilbertseries.specfun import beta
from hilbertseries.summation import (
    compensated_sum,
    neumaier_accumulate,
    partial_power_sum,
)


def test_compensated_sum_matches_fsum():
    rng = np.random.default_rng(7)
    x = rng.normal(scale=[1e-8, 1.0, 1e8][1], size=1000) * np.logspace(-8, 8, 1000)
    assert compensated_sum(x) == math.fsum(x.tolist())


def test_compensated_sum_rejects_matrix():
    with pytest.raises(ValueError):
        compensated_sum(np.ones((3, 3)))


def test_neumaier_accumulate_matches_fsum_columnwise():
    rng = np.random.default_rng(11)
    rows = rng.uniform(-1, 1, size=(200, 16)) * np.logspace(-6, 6, 200)[:, None]
    acc = neumaier_accumulate(16)
    for row in rows:
        acc.add(row)
    got = acc.value()
    want = np.array([math.fsum(rows[:, j].tolist()) for j in range(16)])
    assert np.allclose(got, want, rtol=1e-15, atol=1e-300)


def test_partial_power_sum_small_m_is_exact_head():
    for s in (0.3, 1.0, 2.5):
        want = math.fsum(k ** (-s) for k in range(1, 501))
        assert partial_power_sum(s, 500) == want


@pytest.mark.parametrize("s", [0.2, 0.5, 1.0, 1.3, 2.0])
def test_partial_power_sum_euler_maclaurin_at_crossover(s):
    # just past the exact-head cutoff the closed form must agree with brute
    m = 10_050
    want = math.fsum(k ** (-s) for k in range(1, m + 1))
    got = partial_power_sum(s, m)
    assert math.isclose(got, want, rel_tol=1e-13), s


def test_partial_power_sum_huge_horizon_monotone():
    # closed form keeps working far beyond anything summable directly
    vals = [partial_power_sum(0.7, 10**k) for k in (8, 10, 12)]
    assert vals[0] < vals[1] < vals[2]
    # leading term M^(1-s)/(1-s)
    want = (10**12) ** 0.3 / 0.3
    assert math.isclose(vals[2], want, rel_tol=1e-3)


def test_adaptive_quad_smooth():
    # integrands take ndarray batches
    got = adaptive_quad(np.cos, 0.0, 1.0)
    assert math.isclose(float(got), math.sin(1.0), rel_tol=1e-13)
    assert got.error_bound < 1e-10


def test_adaptive_quad_rejects_nonfinite():
    with pytest.raises(DomainError):
        adaptive_quad(lambda u: np.full_like(u, np.nan), 0.0, 1.0)


def test_adaptive_quad_caps_on_endpoint_singularity():
    # 1/t never evaluates at 0 (interior nodes) but can never settle either;
    # singular endpoints belong to power_endpoint_quad instead
    with pytest.raises(PrecisionCapError):
        adaptive_quad(lambda u: 1.0 / u, 0.0, 1.0)


@pytest.mark.parametrize("n", [1, 3, 10, 50, 200])
@pytest.mark.parametrize("s", [0.25, 0.5, 0.9, 1.5])
def test_power_endpoint_quad_beta_closed_form(n, s):
    # int_0^1 u^(s-1) (1-u)^(n-1) du = B(s, n)
    want = beta(s, float(n))
    res = power_endpoint_quad(
        lambda u: (1.0 - u) ** (n - 1),
        s=s,
        upper=1.0,
        f_bound=1.0,
        fprime_bound=float(max(n - 1, 1)),
        abs_tol=1e-16,
        rel_tol=1e-13,
    )
    assert math.isclose(float(res), want, rel_tol=1e-11), (n, s)
    # certification: the reported bound covers the actual error, up to the
    # oracle's own last-digit noise
    assert abs(float(res) - want) <= res.error_bound + 1e-12 * want + 1e-15


def test_power_endpoint_quad_tiny_exponent():
    # s = 1e-3 puts nearly all mass at the stub; first-order stub must cope
    res = power_endpoint_quad(
        lambda u: 1.0 / (1.0 + u),
        s=1e-3,
        upper=1.0,
        f_bound=1.0,
        fprime_bound=1.0,
    )
    # sum_k (-1)^k/(s+k) = (psi((s+1)/2) - psi(s/2))/2 at s = 1e-3
    want = 999.3076743858769
    assert math.isclose(float(res), want, rel_tol=1e-9)


def test_power_endpoint_quad_cell_cap():
    with pytest.raises(PrecisionCapError):
        power_endpoint_quad(
            lambda u: 1.0,
            s=0.5,
            upper=1.0,
            f_bound=1.0,
            abs_tol=1e-30,
            rel_tol=1e-30,
            max_cells=8,
        )
