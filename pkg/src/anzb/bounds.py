"""Closed-form bounds for zeta(1+it) under RH, crossovers and empirical sweeps."""

from __future__ import annotations

import csv
import enum
import io
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath

from anzb.errors import AnzbError, DomainError, NoCrossing
from anzb.numerics.enclosure import Enclosure
from anzb.numerics.interval import DEFAULT_PREC
from anzb.special import EulerMaclaurinConfig, zeta_pair_1line


class BoundId(str, enum.Enum):
    THM11_UPPER = "thm11_upper"
    THM11_LOWER = "thm11_lower"
    THM12_ABS = "thm12_abs"
    THM12_RECIP = "thm12_recip"
    THM13 = "thm13"
    LLS_ABS = "lls_abs"
    LLS_RECIP = "lls_recip"
    CVS = "cvs"
    TWO_LOGLOG = "two_loglog"

    @property
    def threshold(self) -> mpmath.mpf:
        """Smallest height at which the bound is asserted."""
        if self in (BoundId.LLS_ABS, BoundId.LLS_RECIP):
            return mpmath.mpf(10) ** 10
        if self in (BoundId.CVS, BoundId.TWO_LOGLOG):
            return mpmath.mpf(10) ** 30
        return mpmath.exp(18)

    @property
    def quantity(self) -> str:
        """Empirical column the bound is compared with."""
        return _QUANTITY[self]


ALL_BOUNDS = tuple(BoundId)
PRIOR_BOUNDS = (BoundId.LLS_ABS, BoundId.LLS_RECIP, BoundId.CVS)

_QUANTITY = {
    BoundId.THM11_UPPER: "re_logderiv",
    BoundId.THM11_LOWER: "neg_re_logderiv",
    BoundId.THM12_ABS: "abs_zeta",
    BoundId.THM12_RECIP: "recip_zeta",
    BoundId.THM13: "abs_logderiv",
    BoundId.LLS_ABS: "abs_zeta",
    BoundId.LLS_RECIP: "recip_zeta",
    BoundId.CVS: "abs_logderiv",
    BoundId.TWO_LOGLOG: "abs_logderiv",
}


class BelowThresholdWarning(UserWarning):
    """A bound was evaluated below the height at which it is asserted."""


@dataclass(frozen=True)
class BoundConstants:
    """Numerical constants of the bound formulas."""

    upper_eta: str = "8.6"
    lower_eta: str = "7"
    abs_inv_loglog: str = "0.2674"
    abs_slope: str = "2.6"
    recip_inv_loglog: str = "0.625"
    recip_inv_loglog2: str = "10.8"
    logderiv_const: str = "0.0784"
    logderiv_slope: str = "9.0581"
    logderiv_eta: str = "4.7"

    @classmethod
    def sharp(cls) -> "BoundConstants":
        """Constants as they come out of the proofs, before rounding."""
        return cls(upper_eta="8.6544", lower_eta="6.9856", abs_slope="2.676",
                   recip_inv_loglog2="10.7084", logderiv_eta="4.773")


STATED = BoundConstants()


def _as_mpf(t) -> mpmath.mpf:
    if isinstance(t, str):
        t = t.strip()
        if t.startswith("e^"):
            return mpmath.exp(mpmath.mpf(t[2:]))
    return mpmath.mpf(t)


def _formula(bid: BoundId, w, L, k: BoundConstants):
    m = mpmath.mpf
    g = mpmath.euler
    base = L - mpmath.log(2) + m("0.5")
    abs_scale = 2 * mpmath.exp(g)
    recip_scale = 12 * mpmath.exp(g) / mpmath.pi ** 2
    if bid is BoundId.THM11_UPPER:
        return 2 * L + 1 - g - mpmath.log(4) + 8 * L / w - m(k.upper_eta) / w
    if bid is BoundId.THM11_LOWER:
        return 2 * L + 1 - g - mpmath.log(4) - 8 * L / w + m(k.lower_eta) / w
    if bid is BoundId.THM12_ABS:
        return abs_scale * (base + m(k.abs_inv_loglog) / L - m(k.abs_slope) * L / w)
    if bid is BoundId.THM12_RECIP:
        return recip_scale * (base + m(k.recip_inv_loglog) / L + m(k.recip_inv_loglog2) / L ** 2)
    if bid is BoundId.THM13:
        return 2 * L + m(k.logderiv_const) - g + m(k.logderiv_slope) * L / w - m(k.logderiv_eta) / w
    if bid is BoundId.LLS_ABS:
        return abs_scale * (base + 1 / L)
    if bid is BoundId.LLS_RECIP:
        return recip_scale * (base + 1 / L + 14 * L / w)
    if bid is BoundId.CVS:
        return 2 * L - m("0.4989") + m("5.35") * L ** 2 / w
    if bid is BoundId.TWO_LOGLOG:
        return 2 * L
    raise DomainError(f"unknown bound {bid!r}")


def eval_bound_mp(bid, t, constants: BoundConstants = STATED, prec: int = DEFAULT_PREC,
                  warn: bool = True) -> mpmath.mpf:
    """Bound value at height t as an mpf at the given working precision."""
    bid = BoundId(bid)
    with mpmath.workprec(prec):
        tt = _as_mpf(t)
        if not tt > mpmath.e:
            raise DomainError(f"bounds need t > e so that log log t > 0, got t={mpmath.nstr(tt, 8)}")
        if warn and tt < bid.threshold:
            warnings.warn(f"{bid.value} is asserted only for t >= {mpmath.nstr(bid.threshold, 6)}",
                          BelowThresholdWarning, stacklevel=2)
        w = mpmath.log(tt)
        val = _formula(bid, w, mpmath.log(w), constants)
        return +val


def eval_bound(bid, t, constants: BoundConstants = STATED, prec: int = DEFAULT_PREC,
               warn: bool = True) -> float:
    """Bound value at height t, evaluated at ``prec`` bits and rounded to a double."""
    return float(eval_bound_mp(bid, t, constants, prec, warn))


def crossover(id_a, id_b, t_lo, t_hi, tol: float = 1e-12, constants: BoundConstants = STATED,
              prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Height where id_a - id_b changes sign, found by bisection in log t.

    ``tol`` is the final width in log t relative to log t_hi.
    """
    with mpmath.workprec(prec):
        lo, hi = mpmath.log(_as_mpf(t_lo)), mpmath.log(_as_mpf(t_hi))
        if not 1 < lo < hi:
            raise DomainError("crossover needs e < t_lo < t_hi")

        def diff(u):
            return (eval_bound_mp(id_a, mpmath.exp(u), constants, prec, warn=False)
                    - eval_bound_mp(id_b, mpmath.exp(u), constants, prec, warn=False))

        d_lo, d_hi = diff(lo), diff(hi)
        if d_lo == 0 and d_hi == 0:
            raise NoCrossing("the bounds coincide at both ends of the range")
        if d_lo == 0:
            return mpmath.exp(lo)
        if d_hi == 0:
            return mpmath.exp(hi)
        if mpmath.sign(d_lo) == mpmath.sign(d_hi):
            raise NoCrossing(f"{BoundId(id_a).value} - {BoundId(id_b).value} keeps sign "
                             f"{int(mpmath.sign(d_lo)):+d} on the range")
        width = tol * hi
        while hi - lo > width:
            mid = (lo + hi) / 2
            d_mid = diff(mid)
            if d_mid == 0:
                return mpmath.exp(mid)
            if mpmath.sign(d_mid) == mpmath.sign(d_lo):
                lo, d_lo = mid, d_mid
            else:
                hi = mid
        return mpmath.exp(hi)


# -- empirical sweeps ------------------------------------------------------

EMPIRICAL_METHODS = ("re-logderiv", "abs-zeta", "recip-zeta", "abs-logderiv")
EMPIRICAL_HEIGHT_CAP = 1e9

CSV_COLUMNS = (
    "t", "log_t", "loglog_t",
    "thm11_upper", "thm11_lower", "thm12_abs", "thm12_recip", "thm13",
    "lls_abs", "lls_recip", "cvs", "two_loglog",
    "emp_re_logderiv", "emp_abs_zeta", "emp_recip_zeta", "emp_abs_logderiv",
    "flags",
)


@dataclass
class BoundReport:
    """Bounds and optional empirical values at one height."""

    t: float
    log_t: float
    loglog_t: float
    bounds: dict[str, float]
    empirical: dict[str, Enclosure] = field(default_factory=dict)
    flags: dict[str, str] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    @property
    def violations(self) -> list[str]:
        return [k for k, v in self.flags.items() if v == "violated"]

    @property
    def consistent(self) -> bool:
        return not self.violations and not self.errors

    def flag_string(self) -> str:
        parts = [f"{k}:{v}" for k, v in self.flags.items()]
        parts += [f"error:{e}" for e in self.errors]
        return ";".join(parts)

    def row(self) -> dict[str, str]:
        out = {"t": repr(self.t), "log_t": repr(self.log_t), "loglog_t": repr(self.loglog_t)}
        for b in ALL_BOUNDS:
            out[b.value] = repr(self.bounds[b.value])
        for name in ("re_logderiv", "abs_zeta", "recip_zeta", "abs_logderiv"):
            e = self.empirical.get(name)
            out["emp_" + name] = "" if e is None else repr(float(e.value))
        out["flags"] = self.flag_string()
        return out


def _empirical(t: float, methods, cfg: EulerMaclaurinConfig) -> dict[str, Enclosure]:
    p = zeta_pair_1line(t, cfg)
    out = {}
    want = set(methods)
    if want & {"re-logderiv", "abs-logderiv"}:
        ld = p.dzeta / p.zeta
        if "re-logderiv" in want:
            out["re_logderiv"] = ld.real
        if "abs-logderiv" in want:
            out["abs_logderiv"] = ld.abs()
    if want & {"abs-zeta", "recip-zeta"}:
        az = p.zeta.abs()
        if "abs-zeta" in want:
            out["abs_zeta"] = az
        if "recip-zeta" in want:
            out["recip_zeta"] = Enclosure(1.0, 0.0) / az
    return out


def _flags(t: mpmath.mpf, bounds: dict[str, float], emp: dict[str, Enclosure]) -> dict[str, str]:
    flags = {}
    for b in ALL_BOUNDS:
        q = b.quantity
        src = "re_logderiv" if q == "neg_re_logderiv" else q
        if src not in emp:
            continue
        if t < b.threshold:
            flags[b.value] = "below-threshold"
            continue
        e = emp[src]
        low = -e.hi if q == "neg_re_logderiv" else e.lo
        flags[b.value] = "ok" if bounds[b.value] >= low else "violated"
    return flags


def report_at(t, methods=(), cfg: EulerMaclaurinConfig | None = None,
              constants: BoundConstants = STATED, prec: int = DEFAULT_PREC,
              height_cap: float = EMPIRICAL_HEIGHT_CAP) -> BoundReport:
    """All bounds at t, plus the requested empirical quantities and their flags."""
    with mpmath.workprec(prec):
        tt = _as_mpf(t)
        bounds = {b.value: eval_bound(b, tt, constants, prec, warn=False) for b in ALL_BOUNDS}
        w = mpmath.log(tt)
        rep = BoundReport(float(tt), float(w), float(mpmath.log(w)), bounds)
        unknown = [m for m in methods if m not in EMPIRICAL_METHODS]
        if unknown:
            raise DomainError(f"unknown empirical method(s): {', '.join(unknown)}")
        if methods:
            if float(tt) > height_cap:
                rep.errors.append(f"height above cap {height_cap:g}")
                return rep
            try:
                rep.empirical = _empirical(float(tt), methods, cfg or EulerMaclaurinConfig())
            except AnzbError as exc:
                rep.errors.append(type(exc).__name__)
                return rep
            rep.flags = _flags(tt, bounds, rep.empirical)
        return rep


def empirical_sweep(ts, methods=EMPIRICAL_METHODS, cfg: EulerMaclaurinConfig | None = None,
                    constants: BoundConstants = STATED, prec: int = DEFAULT_PREC,
                    height_cap: float = EMPIRICAL_HEIGHT_CAP, parallelism: int = 1) -> list[BoundReport]:
    """BoundReports for each height, ordered by t."""
    order = sorted(ts, key=lambda x: _as_mpf(x))

    def one(t):
        return report_at(t, methods, cfg, constants, prec, height_cap)

    if parallelism > 1:
        with ThreadPoolExecutor(parallelism) as pool:
            return list(pool.map(one, order))
    return [one(t) for t in order]


def sample_heights(t_min: float, t_max: float, points: int, log_spaced: bool = True) -> list[float]:
    """Deterministic grid of heights from t_min to t_max inclusive."""
    if points < 1:
        raise DomainError("points must be at least 1")
    if not math.e < t_min <= t_max:
        raise DomainError("need e < t_min <= t_max")
    if points == 1:
        return [float(t_min)]
    if log_spaced:
        a, b = math.log(t_min), math.log(t_max)
        return [math.exp(a + (b - a) * i / (points - 1)) for i in range(points)]
    return [t_min + (t_max - t_min) * i / (points - 1) for i in range(points)]


def write_csv(reports, stream=None) -> str:
    """Write reports as CSV; returns the text when no stream is given."""
    buf = stream if stream is not None else io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue() if stream is None else ""
