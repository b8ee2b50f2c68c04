from __future__ import annotations

import math

import mpmath
import pytest

from anzb.errors import DomainError
from anzb.numerics import elementary as el
from anzb.numerics.certify import (
    CertificateRequest,
    Status,
    certified_min,
    certified_sup,
    verify_monotone,
    verify_nonneg,
)
from anzb.numerics.dual import Dual, centered, derivative
from anzb.numerics.enclosure import Enclosure
from anzb.numerics.interval import Interval


def _contains(iv: Interval, exact) -> bool:
    return iv.lo <= exact <= iv.hi


def test_interval_constants_enclose_high_precision_values():
    with mpmath.workdps(60):
        assert _contains(Interval.pi(64), mpmath.pi)
        assert _contains(Interval.euler(64), mpmath.euler)
        assert _contains(Interval.log2(64), mpmath.log(2))


def test_interval_decimal_input_is_outward_rounded():
    x = Interval("0.1", prec=64)
    with mpmath.workdps(50):
        assert _contains(x, mpmath.mpf("0.1"))
    assert x.width() > 0


@pytest.mark.parametrize("name", ["exp", "log", "sqrt", "sin", "cos", "sinh", "cosh", "tanh", "atan"])
def test_elementary_functions_enclose_mpmath(name):
    box = Interval("1.25", "1.5", prec=80)
    img = getattr(box, name)()
    with mpmath.workdps(50):
        for k in range(11):
            x = mpmath.mpf("1.25") + mpmath.mpf("0.025") * k
            assert _contains(img, getattr(mpmath, name)(x))


def test_interval_arithmetic_and_comparisons():
    a = Interval(1, 2)
    b = Interval(3, 4)
    assert (a + b).lo == 4 and (a + b).hi == 6
    assert (a - b).lo == -3 and (a - b).hi == -1
    assert (a * b).lo == 3 and (a * b).hi == 8
    assert a.certainly_lt(b) and not b.certainly_le(a)
    assert (b / a).contains(mpmath.mpf("2.5"))


def test_interval_rejects_empty_and_low_precision():
    with pytest.raises(DomainError):
        Interval(2, 1)
    with pytest.raises(DomainError):
        Interval(1, prec=8)


def test_elementary_dispatch_is_polymorphic():
    assert el.exp(1.0) == pytest.approx(math.e)
    with mpmath.workdps(60):
        assert _contains(el.exp(Interval(1)), mpmath.e)
    assert el.pi_like(0.0) == pytest.approx(math.pi)
    assert isinstance(el.pi_like(Interval(1)), Interval)


def test_enclosure_arithmetic_tracks_errors():
    a = Enclosure(1.0, 1e-3)
    b = Enclosure(2.0, 2e-3)
    s = a + b
    assert s.value == 3.0 and s.err >= 3e-3
    q = a / b
    assert q.contains(0.5) and q.err >= 0
    with pytest.raises(DomainError):
        Enclosure(1.0, -1.0)


def test_dual_derivatives_match_closed_forms():
    f = lambda x: el.sin(x) * el.exp(x)
    d1 = derivative(f)
    d2 = derivative(f, 2)
    x = 0.7
    assert d1(x) == pytest.approx(math.exp(x) * (math.sin(x) + math.cos(x)), rel=1e-14)
    assert d2(x) == pytest.approx(2 * math.exp(x) * math.cos(x), rel=1e-14)


def test_dual_derivative_over_intervals_encloses_truth():
    f = lambda x: el.log(x) / x
    box = Interval("2", "2.001", prec=96)
    dbox = derivative(f)(box)
    with mpmath.workdps(40):
        for x in (mpmath.mpf(2), mpmath.mpf("2.0005"), mpmath.mpf("2.001")):
            assert _contains(dbox, (1 - mpmath.log(x)) / x**2)


def test_dual_variable_and_constants():
    x = Dual.variable(3.0)
    y = x * x + 2 * x + 1
    assert y.v == 16.0 and y.d == 8.0
    assert el.pi_like(x).d == 0


def test_centered_form_is_no_wider_than_natural_extension():
    f = lambda x: x * x - 2 * x
    box = Interval("0.9", "1.1")
    plain = f(box)
    tight = centered(f)(box)
    assert tight.width() <= plain.width()
    assert _contains(tight, mpmath.mpf(-1))


def test_certified_min_and_sup_enclose_known_extrema():
    req = CertificateRequest(Interval(0, 3), 1e-10)
    lo = certified_min(lambda x: (x - 1) ** 2 + Interval("0.5"), req)
    assert _contains(lo, mpmath.mpf("0.5"))
    hi = certified_sup(lambda x: el.sin(x), req)
    assert _contains(hi, 1)
    assert hi.width() < 1e-8


def test_verify_nonneg_verifies_and_refutes():
    ok = verify_nonneg(centered(lambda x: x * x - x + Interval("0.25")), Interval(-2, 2), floor=-1e-12)
    assert ok.status is Status.VERIFIED
    bad = verify_nonneg(lambda x: x * x - Interval("0.01"), Interval(-1, 1))
    assert bad.refuted and abs(float(bad.witness[0])) < 0.1


def test_verify_monotone_needs_a_derivative():
    f = lambda x: -x * x
    dom = Interval(1, 2)
    assert verify_monotone(f, dom, "decreasing").status is Status.INCONCLUSIVE
    v = verify_monotone(f, dom, "decreasing", derivative=derivative(f))
    assert v.verified
    r = verify_monotone(lambda x: x * x, Interval(-1, 1), "decreasing", derivative=lambda x: 2 * x)
    assert r.refuted
