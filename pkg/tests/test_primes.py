from __future__ import annotations

import math

import pytest

from anzb import primes as pr
from anzb.errors import DomainError
from anzb.numerics.interval import Interval


def _naive_mangoldt(n: int) -> float:
    """Trial-division von Mangoldt function, used as an oracle."""
    for p in range(2, n + 1):
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            return math.log(p) if m == 1 else 0.0
    return 0.0


@pytest.fixture(scope="module")
def table():
    return pr.table_upto(10**6)


def test_table_matches_trial_division(table):
    for n in range(1, 2000):
        assert table.lam(n) == pytest.approx(_naive_mangoldt(n), abs=1e-12)


@pytest.mark.parametrize("x", [10, 100, 1000, 5357.5])
def test_psi_matches_naive_sum(table, x):
    ref = math.fsum(_naive_mangoldt(n) for n in range(2, int(x) + 1))
    e = pr.evaluate_sum(pr.WeightedSumSpec("psi", x), table)
    assert e.contains(ref, slack=1e-9)


def test_cesaro_and_loglog_sums_match_naive(table):
    x = 500.0
    lam = [(n, _naive_mangoldt(n)) for n in range(2, 501)]
    ces = math.fsum(v / n * (1 - n / x) for n, v in lam)
    ll = math.fsum(v / (n * math.log(n)) * math.log(x / n) / math.log(x) for n, v in lam)
    assert pr.sum_cesaro(x, table) == pytest.approx(ces, abs=1e-12)
    assert pr.sum_loglog(x, table) == pytest.approx(ll, abs=1e-12)


def test_b_constant_value():
    assert pr.b_constant() == pytest.approx(-0.0230957, abs=1e-7)
    iv = pr.b_constant(Interval(0))
    assert iv.width() < 1e-30


@pytest.mark.parametrize("x", [3.0, 30.0, 1e3, 1e5, 9e5])
def test_sum_inequalities_hold(table, x):
    assert pr.sum_loglog(x, table) <= pr.loglog_rhs(x)
    assert pr.sum_cesaro(x, table) <= pr.cesaro_rhs(x)


def test_q_of_x_below_handover_value(table):
    x = 73.2**2
    q = pr.q_of_x(x, table)
    assert math.sqrt(x) * q.hi - 2 / math.log(x) <= 0.229


def test_lambda_xy_sum_within_radius(table):
    x, y = 20.0, 30.0
    s = pr.lambda_xy_sum(x, y, table)
    assert abs(s - pr.lambda_xy_main(x, y)) <= pr.lambda_xy_radius(x, y) + 1.0


def test_trig_poly_nonnegative_on_a_grid():
    vals = [pr.trig_poly_p2(2 * math.pi * k / 997) for k in range(997)]
    assert min(vals) >= -1e-15


def test_domain_errors(table):
    with pytest.raises(DomainError):
        pr.WeightedSumSpec("nope", 10)
    with pytest.raises(DomainError):
        pr.WeightedSumSpec("loglog", 2)
    with pytest.raises(DomainError):
        pr.psi(2e6, table)
    with pytest.raises(DomainError):
        pr.table_upto(1)
