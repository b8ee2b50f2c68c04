from __future__ import annotations

import csv
import io
import math
import warnings

import pytest

from anzb import bounds as bd
from anzb.errors import DomainError, NoCrossing

G = 0.57721566490153286


def _retyped(bid: str, t: float) -> float:
    """Second, independent transcription of the bound formulas in plain floats."""
    lt = math.log(t)
    llt = math.log(lt)
    k1 = 2 * math.exp(G)
    k2 = 12 * math.exp(G) / math.pi**2
    core = llt - math.log(2) + 0.5
    table = {
        "thm11_upper": 2 * llt + 1 - G - math.log(4) + 8 * llt / lt - 8.6 / lt,
        "thm11_lower": 2 * llt + 1 - G - math.log(4) - 8 * llt / lt + 7 / lt,
        "thm12_abs": k1 * (core + 0.2674 / llt - 2.6 * llt / lt),
        "thm12_recip": k2 * (core + 5 / (8 * llt) + 10.8 / llt**2),
        "thm13": 2 * llt + 0.0784 - G + 9.0581 * llt / lt - 4.7 / lt,
        "lls_abs": k1 * (core + 1 / llt),
        "lls_recip": k2 * (core + 1 / llt + 14 * llt / lt),
        "cvs": 2 * llt - 0.4989 + 5.35 * llt**2 / lt,
        "two_loglog": 2 * llt,
    }
    return table[bid]


HEIGHTS = [math.exp(18), 1e8, 1e9, 1e10, 1e12, 1e15, 1e20, 1e25, 1e30, 1e40]


@pytest.mark.parametrize("bid", [b.value for b in bd.ALL_BOUNDS])
def test_formulas_match_independent_transcription(bid):
    for t in HEIGHTS:
        assert bd.eval_bound(bid, t, warn=False) == pytest.approx(_retyped(bid, t), rel=1e-13)


def test_worked_values():
    assert bd.eval_bound("thm11_upper", "e^18") == pytest.approx(5.62407, abs=1e-5)
    thm13 = bd.eval_bound("thm13", 1e30)
    two = bd.eval_bound("two_loglog", 1e30)
    assert thm13 == pytest.approx(8.45896, abs=1e-4)
    assert two == pytest.approx(8.47046, abs=1e-4)
    assert thm13 <= two


def test_upper_minus_lower_structure():
    for t in HEIGHTS:
        w = math.log(t)
        diff = bd.eval_bound("thm11_upper", t, warn=False) - bd.eval_bound("thm11_lower", t, warn=False)
        assert diff == pytest.approx(16 * math.log(w) / w - 15.6 / w, abs=1e-13)


@pytest.mark.parametrize("t", [1e10, 1e15, 1e20])
def test_refinement_over_prior_bounds(t):
    assert bd.eval_bound("thm12_abs", t) < bd.eval_bound("lls_abs", t)
    assert bd.eval_bound("thm12_recip", t) < bd.eval_bound("lls_recip", t)


@pytest.mark.parametrize("t", [1e30, 1e40])
def test_logderiv_bound_improves_prior(t):
    assert bd.eval_bound("thm13", t) < bd.eval_bound("cvs", t)


def test_sharp_constants_option():
    sharp = bd.BoundConstants.sharp()
    t = 1e20
    assert bd.eval_bound("thm11_upper", t, sharp) < bd.eval_bound("thm11_upper", t)
    assert bd.eval_bound("two_loglog", t, sharp, warn=False) == bd.eval_bound("two_loglog", t, warn=False)


def test_threshold_warning_and_domain():
    with pytest.warns(bd.BelowThresholdWarning):
        bd.eval_bound("thm13", 100.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        bd.eval_bound("thm13", "e^18")
    with pytest.raises(DomainError):
        bd.eval_bound("thm13", math.e)
    with pytest.raises(ValueError):
        bd.eval_bound("nope", 1e20)


def test_crossover_of_logderiv_bound():
    t_star = bd.crossover("thm13", "two_loglog", "e^18", 1e40)
    assert math.exp(18) < t_star <= 1e30
    below, above = float(t_star) / 1.001, float(t_star) * 1.001
    assert bd.eval_bound("thm13", below, warn=False) > bd.eval_bound("two_loglog", below, warn=False)
    assert bd.eval_bound("thm13", above, warn=False) < bd.eval_bound("two_loglog", above, warn=False)


def test_crossover_without_sign_change():
    with pytest.raises(NoCrossing):
        bd.crossover("thm13", "thm13", "e^18", 1e40)
    with pytest.raises(NoCrossing):
        bd.crossover("thm12_abs", "lls_abs", "e^18", 1e12)


def test_sweep_below_threshold_suppresses_flags():
    rep = bd.report_at(100.0, bd.EMPIRICAL_METHODS)
    assert set(rep.flags.values()) == {"below-threshold"}
    assert "abs_zeta" in rep.empirical


def test_height_cap_is_reported():
    rep = bd.report_at(1e12, ("abs-zeta",))
    assert rep.errors and not rep.empirical


def test_csv_schema_and_empty_fields():
    reps = bd.empirical_sweep([1e20, 1e10])
    text = bd.write_csv(reps)
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == bd.CSV_COLUMNS
    assert float(rows[1][0]) == 1e10
    assert all(rows[1][i] == "" for i in range(12, 16))
    assert bd.write_csv(reps) == text


def test_sample_heights():
    ts = bd.sample_heights(1e3, 1e9, 7)
    assert ts[0] == pytest.approx(1e3) and ts[-1] == pytest.approx(1e9)
    assert ts[1] == pytest.approx(1e4)
    with pytest.raises(DomainError):
        bd.sample_heights(1e3, 1e9, 0)


@pytest.mark.slow
@pytest.mark.parametrize("t", ["e^18", "1e8"])
def test_empirical_values_respect_bounds(t):
    rep = bd.report_at(t, bd.EMPIRICAL_METHODS)
    assert not rep.errors
    for name in ("thm11_upper", "thm11_lower", "thm12_abs", "thm12_recip", "thm13"):
        assert rep.flags[name] == "ok"
