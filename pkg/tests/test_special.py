from __future__ import annotations

import mpmath
import pytest

from anzb.errors import DomainError
from anzb.numerics.interval import Interval
from anzb.special import (
    EulerMaclaurinConfig,
    e1_interval,
    re_digamma,
    stirling_budget,
    zeta_1line,
    zeta_logderiv_1line,
    zeta_pair_1line,
)


@pytest.mark.parametrize("t", [1.0, 14.134725, 100.0, 1000.0, -37.5])
def test_zeta_on_one_line_encloses_mpmath(t):
    z = zeta_1line(t)
    with mpmath.workdps(30):
        ref = mpmath.zeta(mpmath.mpc(1, t))
    assert z.contains(complex(ref))
    assert z.err <= 1e-6


@pytest.mark.parametrize("t", [50.0, 1000.0])
def test_zeta_derivative_and_logderiv_enclose_mpmath(t):
    p = zeta_pair_1line(t)
    with mpmath.workdps(30):
        s = mpmath.mpc(1, t)
        z, dz = mpmath.zeta(s), mpmath.zeta(s, derivative=1)
    assert p.dzeta.contains(complex(dz))
    assert zeta_logderiv_1line(t).contains(complex(dz / z))


def test_zeta_budget_tightens_with_target():
    loose = zeta_pair_1line(200.0)
    tight = zeta_pair_1line(200.0, EulerMaclaurinConfig(target_abs_err=1e-9))
    assert tight.zeta.err <= loose.zeta.err <= 1e-6
    assert tight.remainder <= 5e-10


def test_zeta_rejects_small_heights():
    with pytest.raises(DomainError):
        zeta_1line(0.5)


@pytest.mark.parametrize("z", [0.5, 3 + 4j, 0.25 + 100j, -2.5, 10 + 0.1j])
def test_re_digamma_exact_encloses_mpmath(z):
    e = re_digamma(z)
    with mpmath.workdps(50):
        ref = mpmath.re(mpmath.digamma(mpmath.mpc(z)))
        assert abs(e.value - ref) <= e.err
    assert e.err < 1e-20


@pytest.mark.parametrize("z", [0.25 + 3j, 0.75 + 10j, 1 + 1j, 0.25 + 1000j])
def test_stirling_budget_covers_exact_value(z):
    b = stirling_budget(z)
    with mpmath.workdps(30):
        ref = float(mpmath.re(mpmath.digamma(mpmath.mpc(z))))
    assert abs(ref - b.main) <= b.err


def test_digamma_pole_is_rejected():
    with pytest.raises(DomainError):
        re_digamma(-3)
    with pytest.raises(DomainError):
        stirling_budget(-1 + 1j)


@pytest.mark.parametrize("z, terms", [("0.01", 80), ("1", 80), ("4.5", 80), ("19.9", 140)])
def test_e1_series_encloses_mpmath(z, terms):
    enc = e1_interval(Interval(z, prec=128), terms)
    with mpmath.workdps(50):
        ref = mpmath.e1(mpmath.mpf(z))
        assert enc.lo <= ref <= enc.hi
    assert enc.width() < 1e-25


def test_e1_domain():
    with pytest.raises(DomainError):
        e1_interval(Interval(25))
