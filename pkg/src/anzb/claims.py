"""Catalogue of numeric assertions, each runnable as a certified check.

Every claim has a primary quantity (an interval) compared against its
asserted value, plus auxiliary checks: envelopes for unbounded domains,
monotonicity proofs and rounding directions.  The claim verdict is
``violated`` if any check is refuted, ``inconclusive`` if any check could
not be decided, and ``verified`` otherwise.

All formulas are written against :mod:`anzb.numerics.elementary`, so the
same source gives interval extensions, float evaluations and (through
:class:`Dual`) derivative enclosures.  Decimal constants always enter
through ``el.const`` so they are enclosed exactly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from anzb import primes as pr
from anzb.errors import DomainError, PrecisionExhausted
from anzb.extremal import c_pm
from anzb.numerics import elementary as el
from anzb.numerics.certify import CertificateRequest, Status, maximize, minimize, verify_monotone, verify_nonneg
from anzb.numerics.dual import centered, derivative
from anzb.numerics.interval import Interval
from anzb.special import e1_interval, re_digamma

VERIFIED, VIOLATED, INCONCLUSIVE = "verified", "violated", "inconclusive"
_STATUS = {Status.VERIFIED: VERIFIED, Status.REFUTED: VIOLATED, Status.INCONCLUSIVE: INCONCLUSIVE}
GRID_SIEVE = 10**7
MIN_SIEVE = 10**4


# -- constants -------------------------------------------------------------


@dataclass(frozen=True)
class StatedConstants:
    """Named constants of the argument, all as intervals."""

    euler_gamma: Interval
    B: Interval
    eta_plus: Interval
    eta_minus: Interval
    eta_star: Interval
    theta_coeff: Interval
    c0: Interval
    lambda0: Interval
    b1: Interval
    b2: Interval

    @classmethod
    def at(cls, prec: int = 128) -> "StatedConstants":
        one = Interval(1, prec=prec)
        g = Interval.euler(prec)
        pi = Interval.pi(prec)
        eta_plus = el.const("8.6544", one)
        return cls(
            euler_gamma=g,
            B=pr.b_constant(one),
            eta_plus=eta_plus,
            eta_minus=el.const("6.9856", one),
            eta_star=el.const("5.583", one),
            theta_coeff=el.const("3.332", one),
            c0=el.const("1.0467", one),
            lambda0=el.const("2.1862", one),
            b1=4 - g - (8 * pi * pi).log(),
            b2=4 * Interval(4, prec=prec).log() - eta_plus,
        )


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    """One certified sub-check of a claim."""

    name: str
    status: str
    detail: str
    margin: float | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "margin": self.margin, "detail": self.detail}


@dataclass(frozen=True)
class Assertion:
    """The asserted relation for a claim's primary quantity.

    ``le``/``ge``/``lt``/``gt`` compare with ``value``; ``near`` means
    |computed - value| <= tol.  Values are decimal strings.
    """

    relation: str
    value: str
    tol: str | None = None

    def __str__(self) -> str:
        if self.relation == "near":
            return f"contains {self.value} +- {self.tol}"
        sym = {"le": "<=", "ge": ">=", "lt": "<", "gt": ">"}[self.relation]
        return f"{sym} {self.value}"

    def judge(self, computed: Interval) -> tuple[str, float]:
        """(status, margin) with margin a certified lower bound of the slack."""
        v = el.const(self.value, computed)
        if self.relation in ("le", "lt"):
            slack = v - computed
        elif self.relation in ("ge", "gt"):
            slack = computed - v
        elif self.relation == "near":
            tol = el.const(self.tol, computed)
            far = Interval.hull_of([computed - v, v - computed])
            worst = Interval(far.hi, prec=computed.prec)
            gap = max((computed - v).lo, (v - computed).lo, mpmath.mpf(0))
            best = Interval(gap, prec=computed.prec)
            margin = _flo(tol - worst)
            if (tol - worst).lo >= 0:
                return VERIFIED, margin
            if (best - tol).lo > 0:
                return VIOLATED, margin
            return INCONCLUSIVE, margin
        else:
            raise DomainError(f"unknown relation {self.relation!r}")
        strict = self.relation in ("lt", "gt")
        margin = _flo(slack)
        if slack.lo > 0 or (slack.lo == 0 and not strict):
            return VERIFIED, margin
        if slack.hi < 0 or (slack.hi == 0 and strict):
            return VIOLATED, margin
        return INCONCLUSIVE, margin


@dataclass(frozen=True)
class ClaimOptions:
    """Run-time options shared by all claims."""

    precision: int = 128
    max_precision: int = 1024
    budget: int = 200_000
    timings: bool = False
    sieve_limit: int = 10**8

    def __post_init__(self):
        if self.precision < 64:
            raise DomainError("precision must be at least 64 bits")
        if self.max_precision < self.precision:
            raise DomainError("max_precision must be at least precision")
        if self.sieve_limit < MIN_SIEVE:
            raise DomainError(f"sieve_limit must be at least {MIN_SIEVE}")


@dataclass
class ClaimReport:
    """Outcome of one claim."""

    id: str
    description: str
    paper_anchor: str
    verdict: str
    computed_lo: float | None
    computed_hi: float | None
    asserted: str
    margin: float | None
    precision_bits: int
    runtime_ms: int | None = None
    checks: list = field(default_factory=list)

    FIELDS = ("id", "description", "paper_anchor", "verdict", "computed_lo", "computed_hi",
              "asserted", "margin", "precision_bits", "runtime_ms")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "paper_anchor": self.paper_anchor,
            "verdict": self.verdict,
            "computed_lo": self.computed_lo,
            "computed_hi": self.computed_hi,
            "asserted": self.asserted,
            "margin": self.margin,
            "precision_bits": self.precision_bits,
            "runtime_ms": self.runtime_ms,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass(frozen=True)
class ClaimDefinition:
    id: str
    description: str
    paper_anchor: str
    asserted: Assertion
    checker: Callable


@dataclass
class Outcome:
    """What a checker returns: the primary quantity and auxiliary checks."""

    computed: Interval
    checks: list


# -- helpers ---------------------------------------------------------------


def _imax(items) -> Interval:
    """Enclosure of the maximum of quantities with the given enclosures."""
    items = list(items)
    lo = max(i.lo for i in items)
    hi = max(i.hi for i in items)
    return Interval(lo, hi, prec=items[0].prec)


def _flo(x: Interval) -> float:
    """Lower endpoint rounded down to a double."""
    return x.lo_float


def _combine(statuses) -> str:
    statuses = list(statuses)
    if VIOLATED in statuses:
        return VIOLATED
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return VERIFIED


class _Ctx:
    """Precision, budgets and check builders for one claim run."""

    def __init__(self, options: ClaimOptions):
        self.options = options
        self.prec = options.precision
        self.k = StatedConstants.at(self.prec)

    def table(self) -> pr.MangoldtTable:
        return pr.table_upto(min(GRID_SIEVE, self.options.sieve_limit))

    def iv(self, lo, hi=None) -> Interval:
        return Interval(lo, hi, prec=self.prec)

    def c(self, text: str) -> Interval:
        return Interval(text, text, prec=self.prec)

    def request(self, lo, hi, tol=1e-9) -> CertificateRequest:
        return CertificateRequest(
            self.domain(lo, hi), tol, max_precision=self.options.max_precision,
            precision=self.prec, max_boxes=self.options.budget,
        )

    def domain(self, lo, hi) -> Interval:
        lo = lo.lo if isinstance(lo, Interval) else lo
        hi = hi.hi if isinstance(hi, Interval) else hi
        return Interval(lo, hi, prec=self.prec)

    def sup(self, f, lo, hi, tol=1e-9) -> Interval:
        return maximize(centered(f), self.request(lo, hi, tol)).enclosure

    def inf(self, f, lo, hi, tol=1e-9):
        return minimize(centered(f), self.request(lo, hi, tol))

    def compare(self, name: str, value: Interval, relation: str, bound, note: str = "") -> Check:
        bound = bound if isinstance(bound, str) else mpmath.nstr(bound, 20)
        status, margin = Assertion(relation, bound).judge(value)
        detail = f"{value} {Assertion(relation, bound)}"
        return Check(name, status, f"{detail}; {note}" if note else detail, margin)

    def exact(self, name: str, lhs: str, relation: str, rhs: str) -> Check:
        """Comparison of decimal expressions in exact rational arithmetic."""
        a, b = _decimal_expr(lhs), _decimal_expr(rhs)
        ok = {"le": a <= b, "lt": a < b, "ge": a >= b, "gt": a > b}[relation]
        slack = b - a if relation in ("le", "lt") else a - b
        return Check(name, VERIFIED if ok else VIOLATED, f"{lhs} {Assertion(relation, rhs)} (exact)", float(slack))

    def nonneg(self, name: str, f, lo, hi, note: str = "") -> Check:
        v = verify_nonneg(
            centered(f), self.domain(lo, hi), budget=self.options.budget,
            precision=self.prec, max_precision=self.options.max_precision,
        )
        detail = f"on [{mpmath.nstr(self.domain(lo, hi).lo, 8)}, {mpmath.nstr(self.domain(lo, hi).hi, 8)}]: {v.boxes} boxes"
        if v.witness is not None:
            detail += f", counterexample near {mpmath.nstr(v.witness[0], 12)}"
        if v.notes:
            detail += ", " + "; ".join(v.notes)
        margin = None if v.floor is None or v.floor == mpmath.inf else float(v.floor)
        return Check(name, _STATUS[v.status], f"{detail}; {note}" if note else detail, margin)

    def decreasing(self, name: str, f, lo, hi, note: str = "") -> Check:
        v = verify_monotone(
            f, self.domain(lo, hi), "decreasing", budget=self.options.budget,
            derivative=centered(derivative(f)), precision=self.prec, max_precision=self.options.max_precision,
        )
        detail = f"derivative <= 0 on [{mpmath.nstr(self.domain(lo, hi).lo, 8)}, {mpmath.nstr(self.domain(lo, hi).hi, 8)}]"
        if v.witness is not None:
            detail += f", increase between {v.witness}"
        margin = None if v.floor is None or v.floor == mpmath.inf else float(v.floor)
        return Check(name, _STATUS[v.status], f"{detail}; {note}" if note else detail, margin)


def _decimal_expr(text: str) -> Fraction:
    """Value of a sum, difference or quotient of decimals, e.g. '85.667/8'."""
    total = Fraction(0)
    for term in text.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        num, _, den = term.partition("/")
        total += Fraction(num.strip()) / (Fraction(den.strip()) if den else 1)
    return total


def _C(text: str, like):
    return el.const(text, like)


# -- formulas --------------------------------------------------------------


def c2_objective(c):
    """(2/c + (2 log c + log 4 - 1)^2)/8."""
    a = 2 * el.log(c) + el.log(4 + 0 * c) - 1
    return (2 / c + a * a) / 8


def c3_objective(lam):
    """(e^lam + 1)/(2 lam) - lam - gamma."""
    return (el.exp(lam) + 1) / (2 * lam) - lam - el.euler_like(lam)


def arch_constant(delta, sign: str):
    """(3/2) sinh(pi D)/c + e^(-pi D)/c (5/4 + 1/(1 - e^(-4 pi D)))."""
    pd = el.pi_like(delta) * delta
    c = c_pm(delta, sign)
    return 3 * el.sinh(pd) / (2 * c) + el.exp(-pd) / c * (_C("1.25", delta) + 1 / (1 - el.exp(-4 * pd)))


def pole_constant(delta, sign: str):
    """2 (e^(pi D) + e^(-pi D))/c."""
    pd = el.pi_like(delta) * delta
    return 2 * (el.exp(pd) + el.exp(-pd)) / c_pm(delta, sign)


def eps_direct(x, s: int):
    """epsilon_{+-} as a function of x = pi Delta (s = +1 or -1), B-form."""
    u = el.exp(x)
    g = el.euler_like(x)
    l2p = el.log(2 * el.pi_like(x))
    b = -pr.b_constant(x)
    d = u - s
    return (2 * s - l2p) / d - (1 - 2 * s * u) * (2 * x - 1 - g) / (d * d) + (2 * b * u + l2p) / (d * d)


def eps_expanded(x, s: int):
    """epsilon_{+-} after substituting the closed form of B."""
    u = el.exp(x)
    g = el.euler_like(x)
    pi = el.pi_like(x)
    d = u - s
    first = (2 + (1 - 2 * s) * g - el.log(8 * pi * pi) + 4 * s * x) / d
    second = (2 * s - 1 + (s - 1) * g + el.log(2 * pi) - s * el.log(4 * pi) + 2 * x) / (d * d)
    return first + second


def eps_scaled(x, s: int):
    """2 e^x eps_{+-}(x) -+ 8 log(2 e^x); must stay below +-eta."""
    return 2 * el.exp(x) * eps_direct(x, s) - s * 8 * (el.log(2 + 0 * x) + x)


def eps_scaled_q(q, qx, s: int, like):
    """eps_scaled in terms of q = 1/(e^x -+ 1) and qx = q x (for tails)."""
    g = el.euler_like(like)
    l2p = el.log(2 * el.pi_like(like))
    b = -pr.b_constant(like)
    l2 = el.log(2 + 0 * like)
    if s > 0:
        return ((2 - l2p) * (2 + 2 * q) - 4 * (1 + g) + (6 + 2 * q) * (2 * qx - q * (1 + g))
                + 4 * b * (1 + q) * (1 + q) + 2 * l2p * (q + q * q) - 8 * l2)
    return ((-2 - l2p) * (2 - 2 * q) + 4 * (1 + g) + (6 - 2 * q) * (2 * qx - q * (1 + g))
            + 4 * b * (1 - q) * (1 - q) + 2 * l2p * (q - q * q) + 8 * l2)


def eps_scaled_slope_over_q(q, x, s: int, like):
    """(d/dx eps_scaled)/q in terms of q; decreasing in x for the tail."""
    g = el.euler_like(like)
    l2p = el.log(2 * el.pi_like(like))
    b = -pr.b_constant(like)
    lin = 2 * x - 1 - g
    if s > 0:
        return (-2 * (2 - l2p) * (1 + q) - (6 + 4 * q) * (1 + q) * lin + 12 + 4 * q
                - 8 * b * (1 + q) * (1 + q) - 2 * l2p * (1 + 2 * q) * (1 + q))
    return (-2 * (2 + l2p) * (1 - q) - (6 - 4 * q) * (1 - q) * lin + 12 - 4 * q
            + 8 * b * (1 - q) * (1 - q) - 2 * l2p * (1 - 2 * q) * (1 - q))


def q_integrand(u):
    """1/(u^2 log u) + (2 log u + 1)/(8 pi u^(5/2))."""
    lu = el.log(u)
    return 1 / (u * u * lu) + (2 * lu + 1) / (8 * el.pi_like(u) * u * u * el.sqrt(u))


def q_majorant_scaled(y: Interval) -> Interval:
    """G(y) = y int_y^inf q_integrand = y (E1(log y) + ((4/3) log y + 14/9)/(8 pi y^(3/2)))."""
    ly = y.log()
    pi = Interval.pi(y.prec)
    return y * (e1_interval(ly) + (4 * ly / 3 + Interval(14, prec=y.prec) / 9) / (8 * pi * y * y.sqrt()))


def q_majorant_curvature(y):
    """G''(y) = -2 f(y) - y f'(y) for f = q_integrand."""
    return -2 * q_integrand(y) - y * derivative(q_integrand)(y)


def q_majorant_curvature_closed(y):
    """G''(y) = 1/(y^2 log^2 y) + (log y - 3/2)/(8 pi y^(5/2))."""
    ly = el.log(y)
    return 1 / (y * y * ly * ly) + (ly - _C("1.5", y)) / (8 * el.pi_like(y) * y * y * el.sqrt(y))


def bracket_piece(a: float, table) -> tuple[Interval, Interval]:
    """(A, P) constant on [a, next prime power): sums over m <= a."""
    A = Fraction(0)
    for n, _, k in table.prime_powers_upto(a):
        A += Fraction(1, k * n * n)  # Lambda(m)/(m^2 log m) = 1/(k m^2)
    P = pr._psi_interval(a, table)
    return A, P


def bracket(y, A, P):
    """y (log zeta(2) - A) + P/(y log y) - 1/log y."""
    ly = el.log(y)
    return y * (pr.log_zeta2(y) - A) + P / (y * ly) - 1 / ly


def beta_gap(w, k: StatedConstants):
    """w (beta(t) - 1 + theta(t)) with w = log t."""
    L = el.log(w)
    K = 3 * el.euler_like(w) - el.log(el.pi_like(w) ** 2 / 2)
    coef = 4 - k.theta_coeff
    return -coef * L + K + 2 * k.eta_star * L / w + 6 * w * el.exp(-2 * w)


def a_of_c(c):
    """A(c) = 2 log c + log 4 - 1."""
    return 2 * el.log(c) + el.log(4 + 0 * c) - 1


def step_5112(w, k: StatedConstants):
    """(1 - theta)/(c0 log x) - (eta* - 5.112) L/w with log x = 2 log(c0 w)."""
    L = el.log(w)
    theta = k.theta_coeff * L / w
    logx = 2 * el.log(k.c0 * w)
    return (1 - theta) / (k.c0 * logx) - (k.eta_star - _C("5.112", w)) * L / w


def upper_lower_order(w, k: StatedConstants):
    """Half the coefficient of loglog t/log t in the final upper bound."""
    L = el.log(w)
    logx = 2 * el.log(k.c0 * w)
    a = a_of_c(k.c0)
    s = _C("5.112", w)
    inner = (s * a - k.theta_coeff / k.c0) / logx + s * s * L / (2 * logx * w) - k.eta_star
    return inner / 2


def e_of_v(v, k: StatedConstants):
    """E(x) as a function of v = log x."""
    r = el.exp(-v / 2)
    g = el.euler_like(v)
    kk = k.b2 + 3 + g + 2 * el.log(2 * el.pi_like(v))
    inner = 3 + kk / v + k.b2 / (v * v) - 2 * r - k.b2 * r / (2 * v)
    return _C("2.249", v) + (k.b1 + 2) / v + k.b1 / (v * v) + r * inner


def y_of_v(v):
    """1/log x + 2/log^2 x + 2.84/sqrt x with v = log x."""
    return 1 / v + 2 / (v * v) + _C("2.84", v) * el.exp(-v / 2)


def cubic_excess(v):
    """(v (1 + y + y^2/2 + 0.198 y^3) - v - 1 - 5/(2v)) log^2(4x)."""
    y = y_of_v(v)
    poly = v * (1 + y + y * y / 2 + _C("0.198", v) * y * y * y)
    l4 = el.log(4 + 0 * v)
    return (poly - v - 1 - 5 / (2 * v)) * (v + l4) * (v + l4)


def cm(m):
    """c_M = (e^M - 1 - M - M^2/2)/M^3."""
    return (el.exp(m) - 1 - m - m * m / 2) / (m * m * m)


def selberg_lower_order(w, k: StatedConstants):
    """w times the terms that must stay below 3.648/log t."""
    L = el.log(w)
    lam = k.lambda0
    kk = (el.exp(lam) + 1) / (2 * lam)
    e2 = el.exp(-2 * w)
    main = kk * (16 * L - _C("17.308", w)) / (w * w) + _C("13652", w) / w**6
    return w * (main + _C("3.2", w) * e2 + kk * 7 * e2 / (2 * w))


def odd_prime_margin(p, x):
    """1/(p log p) - 1/(x log x) - 2 p^2/((p^2 - 1)^2 log p)."""
    lp = el.log(p)
    return 1 / (p * lp) - 1 / (x * el.log(x)) - 2 * p * p / ((p * p - 1) ** 2 * lp)


def odd_prime_margin_scaled(p):
    """p log p times odd_prime_margin(p, p^2): 1 - 1/(2p) - 2p^3/(p^2 - 1)^2."""
    return 1 - 1 / (2 * p) - 2 * p**3 / ((p * p - 1) ** 2)


def pole_bracket(w, sign: str):
    """log(39 c (w/2)^5) - 2w with e^{pi Delta} = w/2."""
    u = w / 2
    s = 1 if sign == "+" else -1
    c = u + 1 / u - 2 * s
    return el.log(39 * c * u**5) - 2 * w


# -- claim checkers --------------------------------------------------------


def _c1(ctx: _Ctx) -> Outcome:
    b = ctx.k.B
    checks = [
        ctx.compare("enclosure lower end", b, "ge", "-0.023096"),
        ctx.compare("enclosure upper end", b, "le", "-0.023088"),
        ctx.compare("displayed digits -0.02309...", b, "ge", "-0.02310"),
    ]
    return Outcome(b, checks)


def _c2(ctx: _Ctx) -> Outcome:
    cert = ctx.inf(c2_objective, "0.01", 2)
    m = cert.enclosure
    env = ctx.iv(2) / (8 * ctx.c("0.01"))
    d = derivative(c2_objective)
    checks = [
        ctx.compare("envelope c <= 0.01: f >= 1/(4c) >= 25", env - m, "gt", "0"),
        ctx.compare("f' < 0 at c = 1.046", d(ctx.c("1.046")), "lt", "0"),
        ctx.compare("f' > 0 at c = 1.048", d(ctx.c("1.048")), "gt", "0", "minimiser lies in (1.046, 1.048)"),
        ctx.compare("displayed digits 0.2673...", m, "ge", "0.2673"),
        ctx.compare("displayed digits 0.2673... (upper)", m, "lt", "0.2674"),
    ]
    return Outcome(m, checks)


def _c3(ctx: _Ctx) -> Outcome:
    m = ctx.inf(c3_objective, "0.1", 10).enclosure
    g = ctx.k.euler_gamma
    lo = ctx.c("0.1")
    hi = ctx.iv(10)
    checks = [
        ctx.compare("envelope lam <= 0.1: f >= 1/lam - lam - gamma", 1 / lo - lo - g - m, "gt", "0"),
        ctx.compare("envelope lam >= 10: f >= lam^3/48 - lam - gamma", hi**3 / 48 - hi - g - m, "gt", "0",
                    "lam^3/48 - lam increases for lam >= 4"),
        ctx.compare("displayed digits -0.4989...", m, "le", "-0.4989"),
        ctx.compare("displayed digits -0.4989... (lower)", m, "gt", "-0.4990"),
        ctx.compare("constant term 0.0783...", m + g, "ge", "0.0783"),
    ]
    return Outcome(m, checks)


def _c4(ctx: _Ctx) -> Outcome:
    sp = ctx.sup(lambda d: arch_constant(d, "+"), "0.5", 6)
    half = ctx.c("0.5")
    at_half = arch_constant(half, "+")
    six = ctx.iv(6)
    pd = Interval.pi(ctx.prec) * six
    extra = lambda p, c: (-p).exp() / c * (ctx.c("1.25") + 1 / (1 - (-4 * p).exp()))
    # 1/2 + 1/(e^{pi D} - 1) and e^{-pi D}/c decrease in Delta
    tail_plus = 3 * (half + 1 / (pd.exp() - 1)) / 2 + extra(pd, c_pm(six, "+"))
    # minorant: sinh(pi D)/c = 1/2 - 1/(e^{pi D} + 1) < 1/2, the rest decreases from Delta = 1/2
    ph = Interval.pi(ctx.prec) / 2
    minus_all = 3 * half / 2 + extra(ph, c_pm(half, "-"))
    checks = [
        ctx.compare("sup attained at Delta = 1/2", sp - at_half, "le", "1e-8"),
        ctx.compare("envelope Delta >= 6 (+)", tail_plus, "le", "1.299"),
        ctx.compare("minorant variant for all Delta >= 1/2", minus_all, "le", mpmath.nstr(sp.lo, 15)),
        ctx.compare("displayed digits 1.298...", sp, "ge", "1.298"),
    ]
    return Outcome(sp, checks)


def _c5(ctx: _Ctx) -> Outcome:
    sp = ctx.sup(lambda d: pole_constant(d, "+"), "0.5", 6)
    pd = Interval.pi(ctx.prec) * 6
    e = (-pd).exp()
    # 2(u + 1/u)/(u - 2 + 1/u) = 2(1 + e^{-2 pi D})/(1 - e^{-pi D})^2 decreases;
    # the minorant variant 2(u + 1/u)/(u + 2 + 1/u) stays below 2
    tail_plus = 2 * (1 + e * e) / ((1 - e) * (1 - e))
    checks = [
        ctx.compare("envelope Delta >= 6 (+)", tail_plus, "le", "3.326"),
        ctx.compare("minorant variant for all Delta >= 1/2", ctx.iv(2), "le", "3.326"),
        ctx.compare("displayed digits 3.325...", sp, "ge", "3.325"),
    ]
    return Outcome(sp, checks)


def eps_scaled_x(x, s: int):
    """eps_scaled through its q-form; well conditioned for large x."""
    q = 1 / (el.exp(x) - s)
    return eps_scaled_q(q, q * x, s, x)


def eps_scaled_slope(x, s: int):
    """(d/dx eps_scaled)/q through the q-form; negative means decreasing."""
    return eps_scaled_slope_over_q(1 / (el.exp(x) - s), x, s, x)


def _c6(ctx: _Ctx) -> Outcome:
    k = ctx.k
    lo = ctx.iv(9).log()
    X = 40
    fp = lambda x: eps_scaled_x(x, 1)
    fm = lambda x: eps_scaled_x(x, -1)
    sup_plus = ctx.sup(fp, lo, X)
    checks = [
        ctx.nonneg("minus variant below eta-", lambda x: k.eta_minus - fm(x), lo, X),
        ctx.nonneg("plus variant decreasing", lambda x: -eps_scaled_slope(x, 1), lo, X,
                   "derivative = q * slope with q = 1/(e^x - 1) > 0"),
        ctx.nonneg("minus variant decreasing", lambda x: -eps_scaled_slope(x, -1), lo, X,
                   "derivative = q * slope with q = 1/(e^x + 1) > 0"),
    ]
    xX = ctx.iv(X)
    for s, eta, name in ((1, -k.eta_plus, "plus"), (-1, k.eta_minus, "minus")):
        qX = 1 / (xX.exp() - s)
        q = ctx.iv(0, qX.hi)
        qx = ctx.iv(0, (qX * xX).hi)  # x/(e^x -+ 1) decreases for x >= 2
        checks.append(ctx.compare(f"envelope pi Delta >= {X} ({name})", eps_scaled_q(q, qx, s, xX), "le",
                                  mpmath.nstr(eta.lo, 20), "q = 1/(e^x -+ 1) in [0, q(40)]"))
        slope = eps_scaled_slope_over_q(q, xX, s, xX)
        checks.append(ctx.compare(f"monotone tail pi Delta >= {X} ({name})", slope, "lt", "0",
                                  "slope/q falls as x grows"))
    pts = [lo.lo + (X - lo.lo) * mpmath.mpf(i) / 16 for i in range(17)]
    gap = max((abs(eps_direct(ctx.iv(p), s) - eps_expanded(ctx.iv(p), s)).hi for p in pts for s in (1, -1)))
    checks.append(ctx.compare("expanded and B forms agree", ctx.iv(0, gap), "le", "1e-25"))
    gap = max((abs(eps_scaled(ctx.iv(p), s) - eps_scaled_x(ctx.iv(p), s)).hi for p in pts for s in (1, -1)))
    checks.append(ctx.compare("q-form agrees with the direct form", ctx.iv(0, gap), "le", "1e-20"))
    checks.append(ctx.compare("start of range: log(e^18)/2 = 9", ctx.iv(18) / 2 - 9, "ge", "0"))
    checks.append(ctx.exact("rounding 8.6 <= eta+", "8.6544", "ge", "8.6"))
    checks.append(ctx.exact("rounding 7 >= eta-", "6.9856", "le", "7"))
    return Outcome(sup_plus, checks)


def _c7(ctx: _Ctx) -> Outcome:
    two_pi = 2 * Interval.pi(ctx.prec)
    m = ctx.inf(pr.trig_poly_p2, 0, two_pi, tol=1e-15).enclosure
    v = verify_nonneg(pr.trig_poly_p2, ctx.domain(0, two_pi), budget=ctx.options.budget, floor="-1e-12",
                      precision=ctx.prec, max_precision=ctx.options.max_precision)
    checks = [
        Check("certified floor >= -1e-12", _STATUS[v.status], f"{v.boxes} boxes",
              None if v.floor is None else float(v.floor)),
        ctx.compare("value at theta = 0 is 0", abs(pr.trig_poly_p2(ctx.iv(0))), "le", "1e-30"),
    ]
    return Outcome(m, checks)


def _c8(ctx: _Ctx) -> Outcome:
    y0 = ctx.c("73.2")
    g0 = q_majorant_scaled(y0)
    Y = 10**6
    table = ctx.table()
    x = 73.2 * 73.2
    qx = pr.q_of_x(x, table).interval(ctx.prec)
    sx = ctx.iv(x).sqrt()
    direct = sx * qx - 2 / ctx.iv(x).log()
    checks = [
        ctx.nonneg("G'' >= 0 (automatic derivative)", q_majorant_curvature, y0, Y),
        ctx.nonneg("G'' >= 0 (closed form)", q_majorant_curvature_closed, y0, Y),
        ctx.compare("G'' termwise positive beyond the window", ctx.iv(Y).log(), "gt", "1.5",
                    "both terms of the closed form are positive once log y > 3/2"),
        ctx.compare("direct sqrt(x) Q(x) - 2/log x at (73.2)^2 below G", direct - g0, "le", "0"),
        ctx.exact("handover 0.229 <= 0.249", "0.229", "le", "0.249"),
    ]
    return Outcome(g0, checks)


def _c9_pieces(ctx: _Ctx):
    table = ctx.table()
    top = ctx.c("73.2")
    cuts = [9] + [n for n, _, _ in table.prime_powers_upto(73) if n > 9] + [None]
    for a, b in zip(cuts, cuts[1:]):
        A, P = bracket_piece(a, table)
        Ai = Interval(A, prec=ctx.prec)
        hi = top if b is None else ctx.iv(b)
        yield a, hi, Ai, P.with_prec(ctx.prec)


def _c9(ctx: _Ctx) -> Outcome:
    sups = []
    for a, hi, Ai, P in _c9_pieces(ctx):
        sups.append(ctx.sup(lambda y, Ai=Ai, P=P: bracket(y, Ai, P), a, hi))
    top = _imax(sups)
    table = ctx.table()
    q81 = pr.q_of_x(81.0, table).interval(ctx.prec)
    direct = 9 * q81 - 2 / ctx.iv(81).log()
    first = next(_c9_pieces(ctx))
    b9 = bracket(ctx.iv(9), first[2], first[3])
    overlap = direct.overlaps(b9)
    checks = [
        Check("pieces between prime powers", VERIFIED, f"{len(sups)} closed pieces on [9, 73.2]"),
        Check("agrees with Q(81) at the left end", VERIFIED if overlap else VIOLATED,
              f"bracket {b9} vs 9 Q(81) - 2/log 81 {direct}"),
    ]
    return Outcome(top, checks)


W_TOP = 10**5


def _c10(ctx: _Ctx) -> Outcome:
    k = ctx.k
    f = lambda w: beta_gap(w, k)
    top = ctx.sup(f, 18, W_TOP)
    wW = ctx.iv(W_TOP)
    L = wW.log()
    K = 3 * k.euler_gamma - (Interval.pi(ctx.prec) ** 2 / 2).log()
    # -0.668 L falls, 2 eta* L/w and 6 w e^{-2w} fall for w >= e
    env = -(4 - k.theta_coeff) * L + K + 2 * k.eta_star * L / wW + 6 * wW * (-2 * wW).exp()
    c0 = k.c0
    checks = [
        ctx.compare(f"envelope log t >= {W_TOP}", env, "lt", "0"),
        ctx.compare("x = (c0 * 18)^2 >= 354.96", (c0 * 18) ** 2, "ge", "354.96"),
        ctx.nonneg("5.112 step", lambda w: step_5112(w, k), 18, W_TOP),
        ctx.compare(f"5.112 step beyond {W_TOP}",
                    ctx.c("0.99") * wW - 2 * c0 * (k.eta_star - ctx.c("5.112")) * L * (c0 * wW).log(), "gt", "0",
                    "1 - theta >= 0.99 there and w/(L log(c0 w)) increases"),
        ctx.compare("A(c0) + D >= 0 at log t = 18", a_of_c(c0) - 1 / (2 * c0 * (c0 * 18).log()), "ge", "0",
                    "D >= -1/(c0 log x) and log x grows with t"),
    ]
    return Outcome(top, checks)


def _c11(ctx: _Ctx) -> Outcome:
    k = ctx.k
    c0 = k.c0
    val = 2 / c0 + a_of_c(c0) ** 2
    f = lambda w: upper_lower_order(w, k)
    top = ctx.sup(f, 18, W_TOP, tol=1e-10)
    wW = ctx.iv(W_TOP)
    # beyond the window: the inner expression tends to -eta* and is bounded by
    # its value with the negative first term dropped and the second at W_TOP
    env = (ctx.c("5.112") ** 2 * wW.log() / (4 * (c0 * wW).log() * wW) - k.eta_star) / 2
    checks = [
        ctx.compare("2.1388.../8 <= 0.2674", val / 8, "le", "0.2674"),
        ctx.compare("lower-order coefficient <= -2.676 on the window", top, "le", "-2.676"),
        ctx.compare(f"envelope log t >= {W_TOP}", env, "le", "-2.676"),
        ctx.compare("5.112 A(c0) < 3.332/c0", ctx.c("5.112") * a_of_c(c0) - k.theta_coeff / c0, "lt", "0"),
        ctx.exact("rounding 2.6 <= 2.676", "2.6", "le", "2.676"),
        ctx.compare("displayed digits 2.1388...", val, "ge", "2.1388"),
    ]
    return Outcome(val, checks)


def _c12(ctx: _Ctx) -> Outcome:
    k = ctx.k
    f = lambda v: e_of_v(v, k)
    v0 = ctx.iv(81).log()
    V = ctx.iv(10**6).log()
    top = ctx.sup(f, v0, V)
    r = (-V / 2).exp()
    g = k.euler_gamma
    kk = k.b2 + 3 + g + 2 * (2 * Interval.pi(ctx.prec)).log()
    env = ctx.c("2.249") + (k.b1 + 2) / V + r * (3 + kk / V - k.b2 * r / (2 * V))
    checks = [
        ctx.decreasing("E decreasing", f, v0, V),
        ctx.compare("envelope x >= 10^6", env, "le", "2.84",
                    "(b1 + 2)/v and r-terms fall; b1/v^2, b2/v^2 and -2r are negative"),
        ctx.compare("b1 = -0.9461...", k.b1, "le", "-0.9461"),
        ctx.compare("b1 = -0.9461... (lower)", k.b1, "gt", "-0.9462"),
        ctx.compare("b2 = -3.1092...", k.b2, "le", "-3.1092"),
        ctx.compare("b2 = -3.1092... (lower)", k.b2, "gt", "-3.1093"),
        ctx.compare("E(81)", f(v0), "le", "2.84"),
    ]
    return Outcome(top, checks)


def _c13(ctx: _Ctx) -> Outcome:
    m = ctx.c("0.647")
    val = cm(m)
    v0 = ctx.iv(81).log()
    V = 60
    l4 = ctx.iv(4).log()
    # every term of cubic_excess is a product of positive decreasing factors for v >= 6
    env = cubic_excess(ctx.iv(V))
    step = 5 * l4 * (v0 + l4) / (2 * v0)
    checks = [
        ctx.compare("y <= 0.647 at x = 81", y_of_v(v0), "le", "0.647", "y decreases in x"),
        ctx.compare("81.107 chain on the window", ctx.sup(cubic_excess, v0, V), "le", "81.107"),
        ctx.compare(f"81.107 chain for log x >= {V}", env, "le", "81.107"),
        ctx.compare("4.56 step at x = 81", step, "le", "4.56", "5 log 4 (v + log 4)/(2v) decreases in v"),
        ctx.exact("81.107 + 4.56 <= 85.667", "81.107 + 4.56", "le", "85.667"),
        ctx.exact("85.667/8 <= 10.7084", "85.667/8", "le", "10.7084"),
        ctx.exact("rounding 10.7084 <= 10.8", "10.7084", "le", "10.8"),
    ]
    return Outcome(val, checks)


def _c14(ctx: _Ctx) -> Outcome:
    k = ctx.k
    lam = k.lambda0
    c22 = pr.c_xy(ctx.iv(2), ctx.iv(2))
    xmin = ctx.iv(324) / (2 * lam).exp()
    x0 = ctx.c("4.089")
    kk = (lam.exp() + 1) / (2 * lam)
    f = lambda w: selberg_lower_order(w, k)
    wW = ctx.iv(W_TOP)
    checks = [
        ctx.compare("c_{x,y} > 0", c22, "gt", "0", "c_{x,y} decreases in x and y, and is positive"),
        ctx.compare("x >= 324/e^(2 lam0) >= 4.089", xmin, "ge", "4.089"),
        ctx.compare("1/(18 (1 - 1/x^2)) <= 0.06", 1 / (18 * (1 - 1 / (x0 * x0))), "le", "0.06"),
        ctx.compare("1/(18 (1 - 1/324^2)) <= 0.056", 1 / (18 * (1 - ctx.iv(1) / 324**2)), "le", "0.056"),
        ctx.compare("(0.06 e^(6 lam0) + 0.056)/lam0 < 13652",
                    (ctx.c("0.06") * (6 * lam).exp() + ctx.c("0.056")) / lam, "lt", "13652"),
        ctx.exact("17.308 <= 2 eta+", "8.6544 + 8.6544", "ge", "17.308"),
        ctx.compare("3.648 step on the window", ctx.sup(f, 18, W_TOP), "lt", "3.648"),
        ctx.compare(f"3.648 step for log t >= {W_TOP}", f(wW), "lt", "3.648", "each term falls for w >= e^2"),
        ctx.compare("2 (e^lam0 + 1)/lam0 <= 9.0581", 4 * kk, "le", "9.0581"),
        ctx.compare("constant -4.773", kk * (4 - k.euler_gamma - (128 * Interval.pi(ctx.prec) ** 2).log()) + ctx.c("3.648"),
                    "le", "-4.773"),
        ctx.exact("rounding 4.7 <= 4.773", "4.7", "le", "4.773"),
        ctx.compare("(e^lam0 + 1)/(2 lam0) - lam0 <= 0.0784", kk - lam, "le", "0.0784"),
    ]
    return Outcome(c22, checks)


def _c15(ctx: _Ctx) -> Outcome:
    x81 = ctx.iv(81)
    f = lambda p: odd_prime_margin(p, x81 + 0 * p)
    m = ctx.inf(f, 3, 9).enclosure
    P = 10**4
    pP = ctx.iv(P)
    env = 1 - 1 / (2 * pP) - 2 / (pP * (1 - 1 / (pP * pP)) ** 2)
    checks = [
        ctx.nonneg("p >= 9 with x >= p^2", odd_prime_margin_scaled, 9, P),
        ctx.compare(f"envelope p >= {P}", env, "gt", "0", "2p^3/(p^2 - 1)^2 = 2/(p (1 - p^-2)^2) falls"),
        ctx.compare("value at p = 3, x = 81", f(ctx.iv(3)), "gt", "0"),
    ]
    return Outcome(m, checks)


def _digamma_grid(n: int = 200):
    return np.geomspace(1.0, 1e6, n)


def _c16(ctx: _Ctx) -> Outcome:
    worst = None
    for t in _digamma_grid():
        t = float(t)
        ti = ctx.iv(t)
        rd = re_digamma(complex(0.5, t / 2), "exact", ctx.prec).interval(ctx.prec)
        dev = abs(rd - (ti / 2).log()) * ti * ti
        if worst is None or dev.hi > worst.hi:
            worst = dev

    def stirling_gap(t):
        u = 1 / (t * t)
        a = el.log(1 + u) / 2 - u / (1 + u)
        b = u / (1 + u)
        return 3 * u / 2 - abs(a) - b

    checks = [
        ctx.nonneg("Stirling-route bound for 1 <= t <= 1.5", stirling_gap, 1, "1.5"),
        ctx.compare("Stirling-route bound for t >= sqrt 2", ctx.c("1.75") - 2 * ctx.c("0.5"), "ge", "0",
                    "with u = 1/t^2 <= 1/2: |a| + b <= 3u/2 - 7u^2/4 + 2u^3"),
    ]
    return Outcome(worst, checks)


def _c17(ctx: _Ctx) -> Outcome:
    terms = 120
    worst = ctx.iv(0)
    for p in (3, 5, 7, 11, 13, 101):
        pi_ = ctx.iv(p)
        lp = pi_.log()
        q = 1 / (pi_ * pi_)
        partial = ctx.iv(0)
        ql = ctx.iv(1)
        for l in range(1, terms + 1):
            ql = ql * q
            partial = partial + 4 * l * l * ql / (2 * l * lp)
        # sum_{l > L} 2 l q^l / log p <= 2 (L+1) q^(L+1)/((1 - q)^2 log p)
        tail = 2 * (terms + 1) * ql * q / ((1 - q) ** 2 * lp)
        series = partial + ctx.iv(0, tail.hi)
        closed = 2 * pi_ * pi_ / ((pi_ * pi_ - 1) ** 2 * lp)
        gap = abs(series - closed)
        if gap.hi > worst.hi:
            worst = gap
    return Outcome(worst, [Check("primes tested", VERIFIED, "p in 3, 5, 7, 11, 13, 101; 120 terms plus tail")])


def _sum_grid(ctx: _Ctx, kind: str, rhs) -> Outcome:
    table = ctx.table()
    worst = None
    worst_x = None
    for x in np.geomspace(math.e, table.limit, 200):
        x = float(x)
        lhs = pr.evaluate_sum(pr.WeightedSumSpec(kind, x), table).interval(ctx.prec)
        gap = rhs(ctx.iv(x)) - lhs
        if worst is None or gap.lo < worst.lo:
            worst, worst_x = gap, x
    return Outcome(worst, [Check("grid", VERIFIED, f"200 log-spaced x in [e, {table.limit:g}]; tightest at x = {worst_x:.6g}")])


def _c18(ctx: _Ctx) -> Outcome:
    return _sum_grid(ctx, "loglog", pr.loglog_rhs)


def _c19(ctx: _Ctx) -> Outcome:
    return _sum_grid(ctx, "cesaro", pr.cesaro_rhs)


def _c20(ctx: _Ctx) -> Outcome:
    sups = [ctx.sup(lambda w, s=s: pole_bracket(w, s), 18, W_TOP) for s in ("+", "-")]
    top = _imax(sups)
    wW = ctx.iv(W_TOP)
    # log(39 (u + 1/u + 2) u^5) <= log 78 + 6 log u for u >= 1, minus 2w falls
    env = ctx.iv(78).log() + 6 * (wW / 2).log() - 2 * wW
    checks = [
        ctx.compare(f"envelope log t >= {W_TOP}", env, "lt", "0", "log 78 + 6 log(w/2) - 2w falls for w >= 3"),
        ctx.compare("start of range: Delta >= 0.699", (ctx.iv(9).log()) / Interval.pi(ctx.prec), "ge", "0.699"),
    ]
    return Outcome(top, checks)


# -- catalogue -------------------------------------------------------------

CATALOGUE: tuple[ClaimDefinition, ...] = (
    ClaimDefinition("C1", "Value of B = log(4 pi)/2 - 1 - gamma/2", r"= -0.02309\ldots",
                    Assertion("near", "-0.02309", "1e-5"), _c1),
    ClaimDefinition("C2", "Minimum over 0 < c < 2 of (2/c + (2 log c + log 4 - 1)^2)/8", r"=0.2673\ldots",
                    Assertion("near", "0.2673", "5e-4"), _c2),
    ClaimDefinition("C3", "Minimum over lam > 0 of (e^lam + 1)/(2 lam) - lam - gamma", r"=-0.4989\ldots",
                    Assertion("near", "-0.4989", "5e-4"), _c3),
    ClaimDefinition("C4", "Archimedean error constant for Delta >= 1/2", r"\leq 1.298\ldots",
                    Assertion("le", "1.299"), _c4),
    ClaimDefinition("C5", "Pole-term constant 2(e^(pi D) + e^(-pi D))/c for Delta >= 1/2", r"\leq 3.325\ldots",
                    Assertion("le", "3.326"), _c5),
    ClaimDefinition("C6", "Envelope of eps_+- with eta+ = 8.6544, eta- = 6.9856 for pi Delta >= log 9",
                    r"\eta^{+}=8.6544", Assertion("le", "-8.6544"), _c6),
    ClaimDefinition("C7", "The p = 2 trigonometric polynomial is nonnegative with minimum 0",
                    r"\sum_{j\in\{1,3,5\}} (1-\cos(j\theta))", Assertion("ge", "-1e-12"), _c7),
    ClaimDefinition("C8", "sqrt(x) Q(x) - 2/log x <= 0.229 for x >= (73.2)^2 via a decreasing majorant",
                    r"G(y)=y\int_{y}^\infty f(u)\text{\rm d}u", Assertion("le", "0.229"), _c8),
    ClaimDefinition("C9", "Sup of sqrt(x) Q(x) - 2/log x on 81 <= x <= (73.2)^2", r"81\leq x\leq (73.2)^2",
                    Assertion("le", "0.249"), _c9),
    ClaimDefinition("C10", "beta(t) <= 1 - theta(t) for t >= e^18", r"\beta(t)\leq 1- \theta(t)",
                    Assertion("le", "0"), _c10),
    ClaimDefinition("C11", "2/c0 + A(c0)^2 at c0 = 1.0467 and the resulting lower-order constant",
                    r"=2.1388\ldots", Assertion("near", "2.1388", "5e-4"), _c11),
    ClaimDefinition("C12", "E(x) <= 2.84 for x >= 81", r"E(x)\leq 2.84", Assertion("le", "2.84"), _c12),
    ClaimDefinition("C13", "Cubic exponential bound with c_M <= 0.198 and the constants 81.107, 85.667",
                    r"\exp(y)\leq 1+y+{y^2}/{2} + 0.198\,y^3", Assertion("le", "0.198"), _c13),
    ClaimDefinition("C14", "Selberg weight constants: c_{x,y} < 0.3, 13652, 3.648, 9.0581, 4.773",
                    r"0<c_{x,y}< 0.3", Assertion("lt", "0.3"), _c14),
    ClaimDefinition("C15", "Odd prime powers contribute nonnegatively for x >= 81",
                    r"1-\cos(k\theta)\leq k^2(1-\cos\theta)", Assertion("ge", "0"), _c15),
    ClaimDefinition("C16", "Re digamma(1/2 + it/2) = log(t/2) + O*(3/(2 t^2)) for t >= 1",
                    r"O^*\left(\frac{3}{2t^2}\right)", Assertion("le", "1.5"), _c16),
    ClaimDefinition("C17", "Closed form of the completed even-power sum",
                    r"\dfrac{(2l)^2}{p^{2l}\log p^{2l}}", Assertion("le", "1e-30"), _c17),
    ClaimDefinition("C18", "Log-weighted prime sum bound on a grid", r"\leq \log\log x + \gamma -1",
                    Assertion("ge", "0"), _c18),
    ClaimDefinition("C19", "Cesaro-weighted prime sum bound on a grid", r"\leq \log x - (1+\gamma)",
                    Assertion("ge", "0"), _c19),
    ClaimDefinition("C20", "Pole bracket 6.5/t^2 - 1/(6 c e^(5 pi Delta)) < 0 for t >= e^18",
                    r"\dfrac{6.5}{t^2}-\dfrac{1}{6c^{\pm}_\Delta e^{5\pi\Delta}}", Assertion("lt", "0"), _c20),
)

CLAIMS = {c.id: c for c in CATALOGUE}


def _float_down(x) -> float:
    f = float(x)
    return f if mpmath.mpf(f) <= x else math.nextafter(f, -math.inf)


def _float_up(x) -> float:
    f = float(x)
    return f if mpmath.mpf(f) >= x else math.nextafter(f, math.inf)


def run_claim(claim_id: str, options: ClaimOptions | None = None) -> ClaimReport:
    """Run one claim and return its report."""
    options = options or ClaimOptions()
    if claim_id not in CLAIMS:
        raise DomainError(f"unknown claim {claim_id!r}")
    d = CLAIMS[claim_id]
    start = time.perf_counter()
    ctx = _Ctx(options)
    try:
        out = d.checker(ctx)
    except PrecisionExhausted as exc:
        report = ClaimReport(d.id, d.description, d.paper_anchor, INCONCLUSIVE, None, None, str(d.asserted), None,
                             options.precision, checks=[Check("precision", INCONCLUSIVE, f"{exc}; {exc.diagnostics}")])
    else:
        status, margin = d.asserted.judge(out.computed)
        verdict = _combine([status] + [c.status for c in out.checks])
        report = ClaimReport(
            d.id, d.description, d.paper_anchor, verdict,
            _float_down(out.computed.lo), _float_up(out.computed.hi), str(d.asserted), margin,
            options.precision, checks=list(out.checks),
        )
    if options.timings:
        report.runtime_ms = int(round((time.perf_counter() - start) * 1000))
    return report


def parse_filter(spec: str | None) -> list[str]:
    """Claim ids selected by a comma-separated filter (all when empty)."""
    if not spec:
        return [c.id for c in CATALOGUE]
    ids = [s.strip().upper() for s in spec.split(",") if s.strip()]
    unknown = [i for i in ids if i not in CLAIMS]
    if unknown:
        raise DomainError(f"unknown claim ids: {', '.join(unknown)}")
    order = {c.id: i for i, c in enumerate(CATALOGUE)}
    return sorted(set(ids), key=order.__getitem__)


@dataclass
class LedgerRun:
    reports: list
    summary: dict

    def to_dict(self) -> dict:
        return {"summary": self.summary, "claims": [r.to_dict() for r in self.reports]}


def run_all(filter: str | None = None, options: ClaimOptions | None = None, parallelism: int = 1) -> LedgerRun:
    """Run the selected claims in catalogue order; failures land in the reports."""
    options = options or ClaimOptions()
    ids = parse_filter(filter)
    if parallelism > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(parallelism) as pool:
            reports = list(pool.map(run_claim, ids, [options] * len(ids)))
    else:
        reports = [run_claim(i, options) for i in ids]
    summary = {VERIFIED: 0, VIOLATED: 0, INCONCLUSIVE: 0}
    for r in reports:
        summary[r.verdict] += 1
    return LedgerRun(reports, summary)
