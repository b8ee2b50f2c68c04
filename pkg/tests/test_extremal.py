from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest

from anzb import extremal as ex
from anzb.errors import DomainError, VerificationFailed
from anzb.numerics.interval import Interval

DELTAS = [0.5, 0.699, 1.0, 2.0]


def _h_oracle(delta: float, sign: str, x: float) -> float:
    """Direct retyping of the extremal functions at 50 digits."""
    with mpmath.workdps(50):
        d, x = mpmath.mpf(delta), mpmath.mpf(x)
        a = mpmath.pi * d
        c = (mpmath.exp(a / 2) - (1 if sign == "+" else -1) * mpmath.exp(-a / 2)) ** 2
        hx = mpmath.mpf(1) / 2 / (mpmath.mpf(1) / 4 + x * x)
        return float(hx * (mpmath.exp(a) + mpmath.exp(-a) - 2 * mpmath.cos(2 * a * x)) / c)


@pytest.mark.parametrize("delta", DELTAS)
@pytest.mark.parametrize("sign", ["+", "-"])
def test_ratio_and_product_forms_agree_with_oracle(delta, sign):
    p = ex.ExtremalParams(delta, sign)
    for x in (0.0, 0.3, 1.7, 12.25, -40.0):
        ref = _h_oracle(delta, sign, x)
        assert float(ex.h_extremal(p, x)) == pytest.approx(ref, rel=1e-12, abs=1e-300)
        assert complex(ex.h_extremal(p, complex(x), form="product")).real == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("delta", DELTAS)
def test_sandwich_and_node_tangency(delta):
    rep = ex.sandwich_selftest(ex.ExtremalParams(delta), grid_size=800, span=20.0)
    assert rep.passed
    assert max(rep.node_gaps.values()) < 1e-14
    assert min(rep.between_gaps.values()) > 0


def test_sandwich_detects_a_broken_majorant():
    p = ex.ExtremalParams(1.0)
    bad = lambda x: ex.h_extremal(ex.ExtremalParams(Interval(1.0, prec=96)), x) * Interval("0.99", prec=96)
    with pytest.raises(VerificationFailed):
        ex.sandwich_selftest(p, grid_size=200, span=10.0, majorant=bad)


@pytest.mark.parametrize("delta", DELTAS)
@pytest.mark.parametrize("sign", ["+", "-"])
def test_fourier_transform_closed_form_matches_quadrature(delta, sign):
    items = ex.ft_selftest(ex.ExtremalParams(delta, sign), [0.0, delta / 3, delta / 2, 0.9 * delta])
    assert all(it.passed for it in items)


@pytest.mark.parametrize("delta", DELTAS)
def test_fourier_transform_support(delta):
    for sign in "+-":
        p = ex.ExtremalParams(delta, sign)
        assert float(ex.ft_extremal(p, 1.01 * delta)) == 0.0
        assert float(ex.ft_extremal(p, 0.0)) == pytest.approx(float(ex.ft_at_zero_closed(p)), rel=1e-12)


def test_sinh_ratio_closed_form():
    for d in DELTAS:
        for s in "+-":
            assert float(ex.sinh_ratio(d, s)) == pytest.approx(float(ex.sinh_ratio_closed(d, s)), rel=1e-12)


def test_pole_pair_bound_at_sampled_points():
    rng = np.random.default_rng(20240601)
    deltas = rng.uniform(0.5, 5.0, 100)
    ts = np.exp(rng.uniform(0.0, math.log(1000.0), 100))
    worst = max(
        ex.pole_pair_value(ex.ExtremalParams(float(d), s), float(t)) * t * t
        for d, t in zip(deltas, ts) for s in "+-"
    )
    assert worst <= 3.4


def test_parameter_validation():
    with pytest.raises(DomainError):
        ex.ExtremalParams(0.0)
    with pytest.raises(DomainError):
        ex.ExtremalParams(1.0, "x")
    with pytest.raises(DomainError):
        ex.h_extremal(ex.ExtremalParams(1.0), 0.5j)
