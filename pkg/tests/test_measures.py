"""Measures: moments, tails, Carleson ratios, decay heuristics, persistence."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbertseries.errors import ConfigError, DomainError
from hilbertseries.measures import (
    Atom,
    ConstantDensity,
    Measure,
    MonomialDensity,
    OneMinusTPowerDensity,
    PiecewisePolyDensity,
    carleson_sup,
    dirac_measure,
    lebesgue_measure,
    load_moment_table,
    moment_decay_check,
    moment_table,
    moment_via_tail,
    save_moment_table,
)
from hilbertseries.specfun import beta


def battery():
    return [
        lebesgue_measure(),
        dirac_measure(0.5),
        Measure(density=OneMinusTPowerDensity(2.0), label="one_minus_t:2"),
        Measure(density=OneMinusTPowerDensity(0.5), label="one_minus_t:0.5"),
    ]


def test_validation_errors():
    with pytest.raises(DomainError):
        Atom(t=1.0, mass=1.0)
    with pytest.raises(DomainError):
        Atom(t=0.5, mass=0.0)
    with pytest.raises(DomainError):
        Measure(atoms=(Atom(0.3, 1.0), Atom(0.3, 2.0)))
    with pytest.raises(DomainError):
        OneMinusTPowerDensity(0.0)
    with pytest.raises(DomainError):
        Measure()  # nothing in it


def test_lebesgue_moments():
    mu = lebesgue_measure().moments(10)
    for n in range(1, 11):
        assert math.isclose(mu[n], 1.0 / n, rel_tol=1e-15)


def test_dirac_moments():
    d = dirac_measure(0.5)
    assert d.moment(4) == 0.125
    assert d.moment(1) == 1.0
    at_zero = dirac_measure(0.0)
    mu = at_zero.moments(5)
    assert mu[1] == 1.0 and mu[2] == 0.0  # 0^0 = 1 convention


def test_one_minus_t_power_moment_closed_form():
    # density (1-t)^(s-1) has moments B(n, s)
    m = Measure(density=OneMinusTPowerDensity(2.0))
    assert math.isclose(m.moment(3), beta(3.0, 2.0), rel_tol=1e-13)
    assert math.isclose(m.moment(3), 1.0 / 12.0, rel_tol=1e-13)


def test_monomial_moments():
    # density t^k: moment n is 1/(n+k)
    m = Measure(density=MonomialDensity(2.0))
    for n in (1, 2, 7):
        assert math.isclose(m.moment(n), 1.0 / (n + 2.0), rel_tol=1e-14)


def test_piecewise_poly_matches_monomial():
    # t^2 as an explicit piecewise polynomial
    pw = Measure(
        density=PiecewisePolyDensity(pieces=((0.0, 1.0, (0.0, 0.0, 1.0)),))
    )
    mono = Measure(density=MonomialDensity(2.0))
    for n in (1, 3, 9):
        assert math.isclose(pw.moment(n), mono.moment(n), rel_tol=1e-13)


def test_moment_via_tail_agrees_with_direct():
    # independent route: mu[n] = (n-1) int_0^1 (1-u)^(n-2) tailmass(u) du
    for m in battery():
        for n in (2, 5, 17, 50):
            direct = m.moment(n)
            via = moment_via_tail(m, n)
            assert math.isclose(via, direct, rel_tol=1e-8, abs_tol=1e-9), (m.label, n)


def test_tail_mass_deep_cancellation():
    # tail of t^k density at u = 1e-9 must keep full precision
    m = Measure(density=MonomialDensity(3.0))
    u = 1e-9
    # integral of t^3 over [1-u, 1): 4u/4 - O(u^2) scaled; exact via expm1
    want = -math.expm1(4.0 * math.log1p(-u)) / 4.0
    got = m.tail_mass_u(np.array([u]))[0]
    assert math.isclose(got, want, rel_tol=1e-12)
    assert got > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=200))
def test_moments_nonincreasing_and_mass(n):
    for m in battery():
        mu = m.moments(n + 1)
        assert mu[1] == pytest.approx(m.total_mass(), rel=1e-12)
        assert mu[n] >= mu[n + 1] - 1e-15


def test_moment_table_decay_fit():
    tbl = moment_table(Measure(density=OneMinusTPowerDensity(2.0), label="b32"), 4096)
    assert tbl.decay_fit is not None
    slope = tbl.decay_fit[0]
    assert -2.01 <= slope <= -1.99


def test_moment_table_save_load_roundtrip(tmp_path):
    tbl = moment_table(lebesgue_measure(), 64)
    path = tmp_path / "tbl.txt"
    save_moment_table(tbl, str(path))
    back = load_moment_table(str(path))
    assert back.label == tbl.label
    assert back.n_max == 64
    assert np.array_equal(back.values[1:], tbl.values[1:])


def test_carleson_lebesgue_boundary():
    res = carleson_sup(lebesgue_measure(), 1.0)
    assert res.is_finite
    assert math.isclose(res.sup_ratio, 1.0, rel_tol=1e-12)


def test_carleson_lebesgue_supercritical():
    res = carleson_sup(lebesgue_measure(), 1.5)
    assert not res.is_finite


def test_carleson_dirac():
    res = carleson_sup(dirac_measure(0.5), 1.0)
    assert res.is_finite
    assert math.isclose(res.sup_ratio, 2.0, rel_tol=1e-12)
    assert res.argmax_t == 0.5


def test_carleson_one_minus_t_half_divergent():
    # tail ~ u^(1/2), so ratio to u^1 blows up
    m = Measure(density=OneMinusTPowerDensity(0.5))
    assert not carleson_sup(m, 1.0).is_finite
    assert carleson_sup(m, 0.5).is_finite


def test_moment_decay_check():
    # weighted moments n^s mu[n]: bounded verdict iff decay at least n^(-s)
    leb = moment_table(lebesgue_measure(), 4096)
    assert moment_decay_check(leb, 1.0).bounded
    assert not moment_decay_check(leb, 1.5).bounded
    d = moment_table(dirac_measure(0.5), 4096)
    assert moment_decay_check(d, 3.0).bounded  # geometric beats any power


def test_descriptor_roundtrip():
    for m in battery():
        back = Measure.from_descriptor(m.descriptor())
        assert back.descriptor() == m.descriptor()
        assert math.isclose(back.moment(7), m.moment(7), rel_tol=1e-14)


def test_descriptor_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        Measure.from_descriptor({"density": {"kind": "constant", "params": {"c": 1.0}}, "bogus": 1})
    with pytest.raises(ConfigError):
        Measure.from_descriptor({"density": {"kind": "nope", "params": {}}})


def test_scaled_measure():
    m = lebesgue_measure().scaled(3.0)
    assert math.isclose(m.moment(2), 1.5, rel_tol=1e-14)
    assert math.isclose(m.total_mass(), 3.0, rel_tol=1e-14)
