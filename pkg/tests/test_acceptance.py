"""Acceptance suite: one PASS/FAIL line per criterion.

Criteria 4 and 8 need a zero table (ANZB_ZEROS or tests/data/zeros_100k.txt)
and report SKIP without one.  Every other criterion runs with the table
hidden, and criterion 9 summarises that.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from anzb import bounds as bd
from anzb import claims as cl
from anzb import explicit
from anzb import extremal as ex
from anzb.primes import b_constant

pytestmark = pytest.mark.slow

NO_TABLE_CRITERIA = (1, 2, 3, 5, 6, 7)
OUTCOMES: dict[int, bool] = {}


def _report(capsys, n: int, ok: bool, detail: str) -> None:
    OUTCOMES[n] = ok
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def no_table(monkeypatch):
    """Hide every zero table so that table-free criteria prove they need none."""
    monkeypatch.delenv("ANZB_ZEROS", raising=False)

    def refuse(*args, **kwargs):
        raise AssertionError("a zero table was requested")

    monkeypatch.setattr(explicit, "load_zeros", refuse)
    monkeypatch.setattr(explicit, "zero_sum", refuse)


def _table_or_skip(capsys, n: int):
    from conftest import zeros_file

    path = zeros_file()
    if path is None:
        with capsys.disabled():
            print(f"\ncriterion {n}: SKIP  no zero table (set ANZB_ZEROS)")
        pytest.skip("no zero table available")
    return explicit.load_zeros(path)


@pytest.fixture(scope="module")
def ledger_run():
    start = time.perf_counter()
    run = cl.run_all(options=cl.ClaimOptions(precision=128))
    return run, time.perf_counter() - start


def _claim(run, cid):
    return next(r for r in run.reports if r.id == cid)


def test_criterion_1_claim_ledger(no_table, ledger_run, capsys):
    run, seconds = ledger_run
    near = {"C1": (-0.02309, 1e-5), "C2": (0.2673, 5e-4), "C3": (-0.4989, 5e-4), "C11": (2.1388, 5e-4)}
    below = {"C4": 1.299, "C5": 3.326}
    problems = []
    if run.summary[cl.VERIFIED] != 20:
        problems.append(f"summary {run.summary}")
    if seconds >= 600:
        problems.append(f"runtime {seconds:.0f}s")
    for cid, (v, tol) in near.items():
        r = _claim(run, cid)
        if r.computed_lo is None or max(abs(r.computed_lo - v), abs(r.computed_hi - v)) > tol:
            problems.append(f"{cid} [{r.computed_lo}, {r.computed_hi}] not within {tol} of {v}")
    for cid, b in below.items():
        r = _claim(run, cid)
        if r.computed_hi is None or r.computed_hi > b:
            problems.append(f"{cid} sup {r.computed_hi} above {b}")
    ok = not problems
    _report(capsys, 1, ok, f"{run.summary[cl.VERIFIED]}/20 verified in {seconds:.1f}s" if ok else "; ".join(problems))
    assert ok


def test_criterion_2_envelope_certifications(no_table, ledger_run, capsys):
    run, _ = ledger_run
    c6, c8, c9 = (_claim(run, c) for c in ("C6", "C8", "C9"))
    ok = (
        all(r.verdict == cl.VERIFIED for r in (c6, c8, c9))
        and c8.computed_hi <= 0.229
        and c9.computed_hi <= 0.249
    )
    detail = (f"C6 sup {c6.computed_hi:.6f} <= -8.6544; C8 G(73.2) = {c8.computed_hi:.6f} <= 0.229; "
              f"C9 sup {c9.computed_hi:.6f} <= 0.249")
    _report(capsys, 2, ok, detail)
    assert ok


def test_criterion_3_extremal_properties(no_table, capsys):
    problems = []
    for d in (0.5, 0.699, 1.0, 2.0):
        rep = ex.sandwich_selftest(ex.ExtremalParams(d))
        if not rep.passed:
            problems.append(f"sandwich at Delta={d}: {rep.failed_check}")
        if max(rep.node_gaps.values()) > 1e-13:
            problems.append(f"node tangency at Delta={d}")
        for s in "+-":
            items = ex.ft_selftest(ex.ExtremalParams(d, s), [0.0, d / 4, d / 2, 3 * d / 4, 0.99 * d])
            if not all(it.passed for it in items):
                problems.append(f"Fourier transform at Delta={d} sign {s}")
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for d, t in zip(rng.uniform(0.5, 5.0, 100), np.exp(rng.uniform(0.0, math.log(1000.0), 100))):
        for s in "+-":
            worst = max(worst, ex.pole_pair_value(ex.ExtremalParams(float(d), s), float(t)) * t * t)
    if worst > 3.4:
        problems.append(f"pole pair t^2 |.| = {worst:.4f} > 3.4")
    ok = not problems
    _report(capsys, 3, ok, f"4 bandwidths certified; max t^2 pole pair {worst:.4f} <= 3.4" if ok else "; ".join(problems))
    assert ok


def test_criterion_4_explicit_formula(capsys):
    zero_table = _table_or_skip(capsys, 4)
    problems = []
    worst = 0.0
    for d in (0.5, 0.7, 1.0):
        for t in (30.0, 50.0, 100.0, 300.0):
            for s in "+-":
                r = explicit.gw_reconcile(ex.ExtremalParams(d, s), t, zero_table)
                worst = max(worst, r.gap / r.allowance)
                if not r.consistent:
                    problems.append(r.label)
    for t in (100.0, 1000.0):
        r = explicit.lemma21_check(t, zero_table)
        if not r.consistent:
            problems.append(r.label)
    zs = explicit.zero_sum(explicit.poisson_kernel(), 0.0, zero_table)
    two_b = 2 * abs(b_constant())
    dev = abs(2 * zs.value - two_b)
    if dev > max(2 * zs.err, 0) or dev > 1e-3:
        problems.append(f"2 zero_sum(h, 0) = {2 * zs.value:.6f} vs 2|B| = {two_b:.6f}")
    ok = not problems
    detail = (f"24 reconciliations (worst gap/allowance {worst:.2f}), 2 zero-sum checks, "
              f"2 sum h(gamma) = {2 * zs.value:.6f} vs 2|B| = {two_b:.6f}")
    _report(capsys, 4, ok, detail if ok else "; ".join(problems))
    assert ok


def test_criterion_5_desk_scale_consistency(no_table, capsys):
    problems = []
    lines = []
    for t in ("e^18", "1e8"):
        rep = bd.report_at(t, bd.EMPIRICAL_METHODS)
        if rep.errors:
            problems.append(f"t={t}: {rep.errors}")
            continue
        for name in ("thm11_upper", "thm11_lower", "thm12_abs", "thm12_recip", "thm13"):
            if rep.flags.get(name) != "ok":
                problems.append(f"t={t}: {name} {rep.flags.get(name)}")
        lines.append(f"t={t}: Re={float(rep.empirical['re_logderiv'].value):.4f} "
                     f"|zeta|={float(rep.empirical['abs_zeta'].value):.4f}")
    ok = not problems
    _report(capsys, 5, ok, "; ".join(lines) if ok else "; ".join(problems))
    assert ok


def test_criterion_6_in_particular_claim(no_table, capsys):
    a = bd.eval_bound("thm13", 1e30)
    b = bd.eval_bound("two_loglog", 1e30)
    ok = a <= b and abs(a - 8.45896) <= 1e-4 and abs(b - 8.47046) <= 1e-4
    _report(capsys, 6, ok, f"thm13(1e30) = {a:.5f} <= 2 log log 1e30 = {b:.5f}")
    assert ok


def test_criterion_7_refinement_over_prior(no_table, capsys):
    problems = []
    for t in (1e10, 1e15, 1e20):
        if not bd.eval_bound("thm12_abs", t) < bd.eval_bound("lls_abs", t):
            problems.append(f"abs at {t:g}")
        if not bd.eval_bound("thm12_recip", t) < bd.eval_bound("lls_recip", t):
            problems.append(f"recip at {t:g}")
    for t in (1e30, 1e40):
        if not bd.eval_bound("thm13", t) < bd.eval_bound("cvs", t):
            problems.append(f"logderiv at {t:g}")
    ok = not problems
    _report(capsys, 7, ok, "7 comparisons hold" if ok else "; ".join(problems))
    assert ok


def test_criterion_8_dual_route_oracle(capsys):
    zero_table = _table_or_skip(capsys, 8)
    gaps = {}
    ok = True
    for t in (100.0, 1000.0):
        r = explicit.lemma21_check(t, zero_table)
        gaps[t] = r.gap
        ok = ok and r.consistent
    ok = ok and gaps[1000.0] < 1e-3
    _report(capsys, 8, ok, f"gap {gaps[100.0]:.2e} at t=100, {gaps[1000.0]:.2e} at t=1000")
    assert ok


def test_criterion_9_table_free_suites(capsys):
    missing = [n for n in NO_TABLE_CRITERIA if n not in OUTCOMES]
    if missing:
        pytest.skip(f"criteria {missing} did not run in this session")
    failed = [n for n in NO_TABLE_CRITERIA if not OUTCOMES[n]]
    ok = not failed
    _report(capsys, 9, ok, "criteria 1-3 and 5-7 passed with every zero table hidden" if ok
            else f"criteria {failed} failed with the table hidden")
    assert ok
