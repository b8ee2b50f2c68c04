from __future__ import annotations

import io
import math

import mpmath
import pytest

from anzb import extremal as ex
from anzb.errors import DataError, DomainError
from anzb.explicit import (
    archimedean_closed_form,
    archimedean_integral,
    gw_reconcile,
    lemma21_check,
    load_zeros,
    poisson_kernel,
    zero_sum,
    zeros_path_from_env,
)
from anzb.primes import b_constant


def test_bundled_table_matches_mpmath_zeros(zero_table):
    assert len(zero_table) == 100_000
    assert zero_table.count_below(100) == 29
    with mpmath.workdps(20):
        for n in (1, 2, 29, 1000, 54321):
            ref = float(mpmath.zetazero(n).imag)
            assert abs(zero_table.ordinates[n - 1] - ref) <= 2e-9


def test_load_zeros_parses_comments_and_rejects_garbage():
    t = load_zeros(io.StringIO("# header\n14.134725141734695\n\n21.022039638771556\n"))
    assert len(t) == 2
    with pytest.raises(DataError):
        load_zeros(io.StringIO("14.1\nabc\n"))
    with pytest.raises(DataError):
        load_zeros(io.StringIO("21.0\n14.1\n"))
    with pytest.raises(DataError):
        load_zeros(io.StringIO("# nothing\n"))
    with pytest.raises(DataError):
        load_zeros("/nonexistent/zeros.txt")


def test_zeros_path_from_env(monkeypatch):
    monkeypatch.setenv("ANZB_ZEROS", "/tmp/z.txt")
    assert zeros_path_from_env() == "/tmp/z.txt"
    monkeypatch.delenv("ANZB_ZEROS")
    assert zeros_path_from_env() is None


def test_zero_sum_at_origin_contains_two_abs_b(zero_table):
    zs = zero_sum(poisson_kernel(), 0.0, zero_table)
    two_b = 2 * abs(b_constant())
    assert abs(2 * zs.value - two_b) <= 2 * zs.err
    assert abs(2 * zs.value - two_b) <= 1e-3


def test_zero_sum_refuses_beyond_coverage(zero_table):
    short = zero_table.truncated(200.0)
    with pytest.raises(DataError):
        zero_sum(poisson_kernel(), 195.0, short)


def test_archimedean_integral_matches_closed_form():
    p = ex.ExtremalParams(0.7, "+")
    for t in (30.0, 300.0):
        value, items = archimedean_integral(p, t)
        assert abs(value - archimedean_closed_form(p, t)) <= 1.3 / t**2 + sum(items.values())


@pytest.mark.parametrize("sign", ["+", "-"])
def test_explicit_formula_reconciles(zero_table, sign):
    r = gw_reconcile(ex.ExtremalParams(0.7, sign), 50.0, zero_table)
    assert r.consistent, r.summary()
    assert set(r.itemized()) >= {"zero_tail", "ordinate_accuracy", "quad_tol"}


def test_explicit_formula_detects_missing_prime_sum(zero_table):
    r = gw_reconcile(ex.ExtremalParams(0.7, "+"), 50.0, zero_table, drop_prime_sum=True)
    assert not r.consistent


def test_explicit_formula_needs_half_bandwidth(zero_table):
    with pytest.raises(DomainError):
        gw_reconcile(ex.ExtremalParams(0.4, "+"), 50.0, zero_table)


def test_zero_sum_route_matches_euler_maclaurin(zero_table):
    r = lemma21_check(1000.0, zero_table)
    assert r.consistent, r.summary()
    assert r.gap < 1e-3
    assert math.isfinite(r.allowance)
