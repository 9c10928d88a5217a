"""Special functions against closed forms and a high-precision oracle."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbertseries.errors import DomainError
from hilbertseries.specfun import (
    beta,
    gamma,
    gamma_eval,
    log_beta,
    log_gamma,
    pi_csc,
    stirling_remainder,
)

mpmath.mp.dps = 40


def test_gamma_classic_values():
    assert math.isclose(gamma(1.0), 1.0, rel_tol=1e-13)
    assert math.isclose(gamma(2.0), 1.0, rel_tol=1e-13)
    assert math.isclose(gamma(5.0), 24.0, rel_tol=1e-13)
    assert math.isclose(gamma(0.5), math.sqrt(math.pi), rel_tol=1e-13)
    # printed half-integer values differ from sqrt(pi) composites by ~1 ulp,
    # so everything is compared with a relative tolerance, never by string
    assert math.isclose(gamma(1.5), 0.5 * math.sqrt(math.pi), rel_tol=1e-13)


def test_gamma_against_mpmath_grid():
    xs = [1e-3, 0.01, 0.1, 0.37, 0.5, 0.99, 1.0, 1.46, 2.5, 7.0, 33.3, 100.0, 170.0]
    for x in xs:
        want = float(mpmath.gamma(x))
        assert math.isclose(gamma(x), want, rel_tol=1e-12), x


def test_log_gamma_against_mpmath():
    for x in [1e-3, 0.2, 1.0, 10.0, 250.0, 1e4]:
        want = float(mpmath.loggamma(x))
        assert math.isclose(log_gamma(x), want, rel_tol=1e-12, abs_tol=1e-12), x


def test_gamma_domain_and_overflow():
    with pytest.raises(DomainError):
        gamma(0.0)
    with pytest.raises(DomainError):
        gamma(-1.5)
    with pytest.raises(OverflowError):
        gamma(200.0)


def test_gamma_eval_consistency():
    ev = gamma_eval(12.7)
    assert math.isclose(ev.value, math.exp(ev.log_value), rel_tol=1e-13)
    assert ev.x == 12.7


def test_gamma_recurrence_seeded():
    import random

    rng = random.Random(20240817)
    for _ in range(200):
        x = rng.uniform(0.5, 50.0)
        assert math.isclose(gamma(x + 1.0), x * gamma(x), rel_tol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.5, max_value=60.0, allow_nan=False))
def test_gamma_recurrence_property(x):
    assert math.isclose(gamma(x + 1.0), x * gamma(x), rel_tol=1e-11)


def test_beta_values():
    assert math.isclose(beta(2.0, 3.0), 1.0 / 12.0, rel_tol=1e-13)
    assert math.isclose(beta(0.75, 0.5), 2.3962804694711846, rel_tol=1e-13)
    assert math.isclose(beta(1.0, 1.0), 1.0, rel_tol=1e-13)


def test_beta_symmetric_bit_identical():
    pairs = [(0.75, 0.5), (2.0, 3.0), (0.1, 7.3), (40.0, 80.0)]
    for a, b in pairs:
        assert beta(a, b) == beta(b, a)


def test_beta_log_domain_against_mpmath():
    # a + b > 100 goes through the log route
    for a, b in [(80.0, 30.0), (150.0, 2.5), (60.0, 60.0)]:
        want = float(mpmath.beta(a, b))
        assert math.isclose(beta(a, b), want, rel_tol=1e-11), (a, b)
        want_log = float(mpmath.log(mpmath.beta(a, b)))
        assert math.isclose(log_beta(a, b), want_log, rel_tol=1e-12, abs_tol=1e-12)


def test_beta_domain():
    with pytest.raises(DomainError):
        beta(0.0, 1.0)
    with pytest.raises(DomainError):
        beta(1.0, -2.0)


def test_pi_csc_values():
    assert pi_csc(0.5) == math.pi
    assert math.isclose(pi_csc(0.25), 4.442882938158366, rel_tol=1e-13)
    assert math.isclose(pi_csc(0.25), math.pi * math.sqrt(2.0), rel_tol=1e-13)
    with pytest.raises(DomainError):
        pi_csc(0.0)
    with pytest.raises(DomainError):
        pi_csc(1.0)


def test_pi_csc_matches_beta_reflection():
    # B(s, 1-s) = pi / sin(pi s) across a fine grid
    for k in range(1, 100):
        s = k / 100.0
        assert math.isclose(beta(s, 1.0 - s), pi_csc(s), rel_tol=1e-10), s


def test_stirling_remainder_frozen():
    # remainder log Gamma(x) - log Stirling(x), next to its envelope 1/(12x)
    frozen = {
        1.0: (8.443755141923e-02, 8.690404952123e-02),
        2.0: (4.220712081667e-02, 4.254690518999e-02),
        5.0: (1.678398582781e-02, 1.680633038626e-02),
        10.0: (8.365359132400e-03, 8.368152207447e-03),
        20.0: (4.175010867765e-03, 4.175359291119e-03),
        50.0: (1.668034070735e-03, 1.668056327482e-03),
    }
    for x, (rem_want, bound_want) in frozen.items():
        rem, bound = stirling_remainder(x)
        assert math.isclose(rem, rem_want, rel_tol=1e-9), x
        assert math.isclose(bound, bound_want, rel_tol=1e-9), x
        assert 0.0 < rem <= bound


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1.0, max_value=500.0, allow_nan=False))
def test_stirling_remainder_positive_below_envelope(x):
    rem, bound = stirling_remainder(x)
    assert 0.0 < rem <= bound
