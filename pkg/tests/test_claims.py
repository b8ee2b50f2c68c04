from __future__ import annotations

import json
from pathlib import Path

import mpmath
import pytest

from anzb import claims as cl
from anzb.errors import DomainError

PAPER = Path(__file__).resolve().parents[1] / "paper.md"
FIELD_ORDER = ["id", "description", "paper_anchor", "verdict", "computed_lo", "computed_hi",
               "asserted", "margin", "precision_bits", "runtime_ms"]


@pytest.fixture(scope="module")
def ledger():
    return cl.run_all()


def _report(ledger, cid):
    return next(r for r in ledger.reports if r.id == cid)


def test_all_claims_verified(ledger):
    assert ledger.summary == {cl.VERIFIED: 20, cl.VIOLATED: 0, cl.INCONCLUSIVE: 0}
    assert [r.id for r in ledger.reports] == [f"C{i}" for i in range(1, 21)]


@pytest.mark.parametrize("cid, value, tol", [
    ("C1", "-0.02309", 1e-5),
    ("C2", "0.2673", 5e-4),
    ("C3", "-0.4989", 5e-4),
    ("C11", "2.1388", 5e-4),
])
def test_enclosures_near_stated_values(ledger, cid, value, tol):
    r = _report(ledger, cid)
    v = float(value)
    assert r.computed_lo <= r.computed_hi
    assert max(abs(r.computed_lo - v), abs(r.computed_hi - v)) <= tol


@pytest.mark.parametrize("cid, bound", [("C4", 1.299), ("C5", 3.326), ("C8", 0.229), ("C9", 0.249)])
def test_suprema_below_stated_bounds(ledger, cid, bound):
    assert _report(ledger, cid).computed_hi <= bound


def test_b_constant_enclosure_against_oracle(ledger):
    with mpmath.workdps(40):
        ref = mpmath.log(4 * mpmath.pi) / 2 - 1 - mpmath.euler / 2
    r = _report(ledger, "C1")
    assert r.computed_lo <= ref <= r.computed_hi


def test_anchors_appear_verbatim_in_source_text():
    if not PAPER.is_file():
        pytest.skip("source text not present")
    text = PAPER.read_text(encoding="utf-8")
    for d in cl.CATALOGUE:
        assert d.paper_anchor in text, d.id


def test_json_field_order_and_determinism(ledger):
    doc = ledger.to_dict()
    for claim in doc["claims"]:
        assert list(claim)[:10] == FIELD_ORDER
        assert claim["runtime_ms"] is None
    again = cl.run_all("C1,C7,C15").to_dict()
    sub = [c for c in doc["claims"] if c["id"] in ("C1", "C7", "C15")]
    assert json.dumps(again["claims"]) == json.dumps(sub)


def test_timings_are_recorded_on_request():
    r = cl.run_claim("C7", cl.ClaimOptions(timings=True))
    assert isinstance(r.runtime_ms, int)


def test_low_precision_is_never_violated():
    run = cl.run_all(options=cl.ClaimOptions(precision=64, max_precision=64))
    assert run.summary[cl.VIOLATED] == 0


def test_filter_and_option_validation():
    assert cl.parse_filter("C7") == ["C7"]
    assert cl.parse_filter("c1, C3") == ["C1", "C3"]
    with pytest.raises(DomainError):
        cl.parse_filter("C21")
    with pytest.raises(DomainError):
        cl.ClaimOptions(precision=32)
    with pytest.raises(DomainError):
        cl.ClaimOptions(precision=128, max_precision=64)


def test_assertion_judgement():
    le = cl.Assertion("le", "1")
    from anzb.numerics.interval import Interval

    assert le.judge(Interval("0.5", "0.9"))[0] == cl.VERIFIED
    assert le.judge(Interval("1.1", "1.2"))[0] == cl.VIOLATED
    assert le.judge(Interval("0.9", "1.1"))[0] == cl.INCONCLUSIVE
    near = cl.Assertion("near", "2", "0.01")
    assert near.judge(Interval("1.995", "2.005"))[0] == cl.VERIFIED
    assert near.judge(Interval("2.5", "2.6"))[0] == cl.VIOLATED


@pytest.mark.parametrize("s", [1, -1])
def test_envelope_forms_agree(s):
    with mpmath.workdps(40):
        for x in ("2.2", "5", "13.7", "30"):
            x = mpmath.mpf(x)
            assert cl.eps_direct(x, s) == pytest.approx(cl.eps_expanded(x, s), rel=1e-25)
            assert cl.eps_scaled(x, s) == pytest.approx(cl.eps_scaled_x(x, s), rel=1e-25)


@pytest.mark.parametrize("s", [1, -1])
def test_q_form_slope_matches_automatic_derivative(s):
    from anzb.numerics.dual import derivative

    d = derivative(lambda x: cl.eps_scaled(x, s))
    with mpmath.workdps(40):
        for x in ("2.2", "5", "13.7"):
            x = mpmath.mpf(x)
            q = 1 / (mpmath.exp(x) - s)
            assert d(x) / q == pytest.approx(cl.eps_scaled_slope(x, s), rel=1e-20)


def test_curvature_forms_agree():
    with mpmath.workdps(40):
        for y in ("73.2", "500", "1e5"):
            y = mpmath.mpf(y)
            assert cl.q_majorant_curvature(y) == pytest.approx(cl.q_majorant_curvature_closed(y), rel=1e-25)
