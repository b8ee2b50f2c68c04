"""The Poisson kernel and its bandlimited extremal majorant and minorant.

h(x) = (1/2)/(1/4 + x^2).  For Delta > 0 the functions

    h_Delta^{+-}(x) = h(x) (e^{pi Delta} + e^{-pi Delta} - 2 cos(2 pi Delta x)) / c^{+-}

with c^{+-} = (e^{pi Delta/2} -+ e^{-pi Delta/2})^2 satisfy
0 <= h^- <= h <= h^+ and have Fourier transforms supported on [-Delta, Delta].
Real-argument formulas are polymorphic (floats, mpmath numbers, intervals).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from anzb.errors import DomainError, VerificationFailed
from anzb.numerics import elementary as el
from anzb.numerics.dual import centered
from anzb.numerics.interval import Interval

PLUS, MINUS = "+", "-"
_SIGN_ALIASES = {"+": PLUS, "plus": PLUS, "-": MINUS, "minus": MINUS}


@dataclass(frozen=True)
class ExtremalParams:
    """Bandwidth Delta and the majorant (+) / minorant (-) selector."""

    delta: object
    sign: str = PLUS

    def __post_init__(self):
        sign = _SIGN_ALIASES.get(self.sign)
        if sign is None:
            raise DomainError(f"sign must be + or -, got {self.sign!r}")
        object.__setattr__(self, "sign", sign)
        d = self.delta
        if isinstance(d, Interval):
            if not d.certainly_gt(0):
                raise DomainError("Delta must be positive")
        elif not d > 0:
            raise DomainError("Delta must be positive")

    @property
    def s(self) -> int:
        """+1 for the majorant, -1 for the minorant."""
        return 1 if self.sign == PLUS else -1

    @property
    def c(self):
        return c_pm(self.delta, self.sign)


def c_pm(delta, sign: str = PLUS):
    """c^{+-} = (e^{pi Delta/2} -+ e^{-pi Delta/2})^2."""
    half = el.pi_like(delta) * delta / 2
    v = 2 * (el.sinh(half) if _SIGN_ALIASES[sign] == PLUS else el.cosh(half))
    return v * v


def h(x):
    """Poisson kernel (1/2)/(1/4 + x^2)."""
    return 1 / (2 * (x * x) + el.const("0.5", x))


def h_extremal(p: ExtremalParams, x, form: str = "ratio"):
    """h^{+-}_Delta at x.  Complex arguments require the product form."""
    if form == "ratio":
        if isinstance(x, (complex, mpmath.mpc)):
            raise DomainError("the ratio form has removable singularities at +-i/2; use form='product'")
        d = p.delta
        pd = el.pi_like(d) * d
        num = 2 * el.cosh(pd) - 2 * el.cos(2 * pd * x)
        return h(x) * num / p.c
    if form == "product":
        return _product_form(p, x)
    raise DomainError(f"unknown form {form!r}")


def _sinc_ratio(a, w):
    """sin(a w)/w, continuous at w = 0."""
    if abs(w) < 1e-4:
        aw2 = (a * w) ** 2
        return a * (1 - aw2 / 6 + aw2 * aw2 / 120)
    if isinstance(w, (mpmath.mpc, mpmath.mpf)):
        return mpmath.sin(a * w) / w
    return cmath.sin(a * w) / w


def _product_form(p: ExtremalParams, x):
    """(2/c) * sin(pi D (x - i/2))/(x - i/2) * sin(pi D (x + i/2))/(x + i/2)."""
    if isinstance(x, Interval) or isinstance(p.delta, Interval):
        raise DomainError("the product form is evaluated on points only")
    mp = isinstance(x, (mpmath.mpf, mpmath.mpc)) or isinstance(p.delta, mpmath.mpf)
    if mp:
        a = mpmath.pi * p.delta
        half = mpmath.mpc(0, 0.5)
        x = mpmath.mpc(x)
    else:
        a = math.pi * float(p.delta)
        half = 0.5j
        x = complex(x)
    val = 2 / p.c * _sinc_ratio(a, x - half) * _sinc_ratio(a, x + half)
    if not isinstance(val, (complex, mpmath.mpc)):
        return val
    if mp:
        return val.real if (isinstance(x, mpmath.mpc) and x.imag == 0) else val
    return val.real if x.imag == 0 else val


def h_extremal_array(p: ExtremalParams, x: np.ndarray) -> np.ndarray:
    """Vectorised ratio form on float arrays."""
    d = float(p.delta)
    pd = math.pi * d
    c = float(p.c)
    return (0.5 / (0.25 + x * x)) * (2 * math.cosh(pd) - 2 * np.cos(2 * pd * x)) / c


def ft_extremal(p: ExtremalParams, xi):
    """Closed-form Fourier transform: 2 pi sinh(pi (Delta - |xi|))/c on |xi| < Delta, else 0."""
    d = p.delta
    a = abs(xi)
    if isinstance(a, Interval) or isinstance(d, Interval):
        gap = d - a
        if gap.certainly_le(0):
            return Interval(0, prec=gap.prec)
        return 2 * el.pi_like(gap) * el.sinh(el.pi_like(gap) * gap) / p.c
    if a >= d:
        return 0.0 if not isinstance(a, mpmath.mpf) else mpmath.mpf(0)
    pi = el.pi_like(d if isinstance(d, mpmath.mpf) else a)
    return 2 * pi * el.sinh(pi * (d - a)) / p.c


def ft_at_zero_closed(p: ExtremalParams):
    """pi (1 + 2/(+-e^{pi Delta} - 1))."""
    e = el.exp(el.pi_like(p.delta) * p.delta)
    return el.pi_like(p.delta) * (1 + 2 / (p.s * e - 1))


def sinh_ratio(delta, sign: str):
    """sinh(pi Delta)/c^{+-}."""
    return el.sinh(el.pi_like(delta) * delta) / c_pm(delta, sign)


def sinh_ratio_closed(delta, sign: str):
    """1/2 + 1/(+-e^{pi Delta} - 1)."""
    s = 1 if _SIGN_ALIASES[sign] == PLUS else -1
    return el.const("0.5", delta) + 1 / (s * el.exp(el.pi_like(delta) * delta) - 1)


def pole_pair_value(p: ExtremalParams, t: float) -> float:
    """|h(t - 1/(2i)) + h(t + 1/(2i))| via the product form."""
    # 1/(2i) = -i/2
    return abs(_product_form(p, complex(t, 0.5)) + _product_form(p, complex(t, -0.5)))


# -- self-tests -----------------------------------------------------------


@dataclass
class SandwichReport:
    """Outcome of the sandwich self-test."""

    delta: float
    passed: bool
    boxes: int
    tangent_boxes: int
    node_gaps: dict = field(default_factory=dict)
    between_gaps: dict = field(default_factory=dict)
    witness: float | None = None
    failed_check: str | None = None


def _near(box: Interval, nodes_of, radius: float) -> bool:
    """Whether the box lies within radius of a touching node."""
    return nodes_of(box, radius)


def sandwich_selftest(
    p: ExtremalParams,
    grid_size: int = 4000,
    span: float = 50.0,
    minorant=None,
    majorant=None,
    prec: int = 96,
    max_depth: int = 40,
) -> SandwichReport:
    """Certify 0 <= h^- <= h <= h^+ on [-span, span] by interval subdivision.

    ``minorant`` / ``majorant`` replace the interval extensions under test
    (used for fault injection).  Inside |x - node| < 0.01/Delta the genuine
    functions are checked in their factored tangency form
    h^+ - h = 2 h (1 - cos 2 pi Delta x)/c^+ and h - h^- = 2 h (1 + cos 2 pi Delta x)/c^-,
    because the unfactored difference cannot be certified where it vanishes.
    Raises VerificationFailed with a witness on a certain violation.
    """
    delta = float(p.delta)
    dI = Interval(delta, prec=prec)
    plus = ExtremalParams(dI, PLUS)
    minus = ExtremalParams(dI, MINUS)
    h_minus = minorant or (lambda x: h_extremal(minus, x))
    h_plus = majorant or (lambda x: h_extremal(plus, x))
    two_pi_d = 2 * Interval.pi(prec) * dI
    radius = 0.01 / delta

    def node_dist_check(offset: float):
        def near(box: Interval, r: float) -> bool:
            lo, hi = float(box.lo), float(box.hi)
            k0 = math.floor(lo * delta - offset)
            for k in (k0, k0 + 1):
                node = (k + offset) / delta
                if lo >= node - r and hi <= node + r:
                    return True
            return False

        return near

    checks = [
        ("minorant_nonneg", lambda x: h_minus(x), None, None),
        (
            "minorant_below",
            lambda x: h(x) - h_minus(x),
            (lambda x: 2 * h(x) * (1 + el.cos(two_pi_d * x)) / minus.c) if minorant is None else None,
            node_dist_check(0.5),
        ),
        (
            "majorant_above",
            lambda x: h_plus(x) - h(x),
            (lambda x: 2 * h(x) * (1 - el.cos(two_pi_d * x)) / plus.c) if majorant is None else None,
            node_dist_check(0.0),
        ),
    ]
    boxes = 0
    tangent_boxes = 0
    step = 2 * span / grid_size
    for name, natural, tangent, near in checks:
        direct = centered(natural)
        stack = [(Interval(-span + i * step, -span + (i + 1) * step, prec=prec), 0) for i in range(grid_size)]
        while stack:
            box, depth = stack.pop()
            boxes += 1
            v = direct(box)
            if v.lo >= 0:
                continue
            if tangent is not None and near(box, radius):
                tangent_boxes += 1
                if tangent(box).lo >= 0:
                    continue
            mid = Interval(box.mid(), prec=prec)
            if direct(mid).hi < 0:
                raise VerificationFailed(f"{name} violated at x = {float(box.mid()):.12g}", witness=float(box.mid()))
            if depth >= max_depth:
                return SandwichReport(delta, False, boxes, tangent_boxes, failed_check=name,
                                      witness=float(box.mid()))
            a, b = box.split()
            stack.append((a, depth + 1))
            stack.append((b, depth + 1))

    node_gaps, between = {}, {}
    for k in range(0, 6):
        xm = k / delta
        xn = (k + 0.5) / delta
        node_gaps[f"majorant@{k}/D"] = abs(float(h_extremal(ExtremalParams(delta, PLUS), xm)) - h(xm))
        node_gaps[f"minorant@({k}+1/2)/D"] = abs(float(h_extremal(ExtremalParams(delta, MINUS), xn)) - h(xn))
        xb = (k + 0.25) / delta
        between[f"majorant@({k}+1/4)/D"] = float(h_extremal(ExtremalParams(delta, PLUS), xb)) - h(xb)
        xb2 = (k + 0.75) / delta
        between[f"minorant@({k}+3/4)/D"] = h(xb2) - float(h_extremal(ExtremalParams(delta, MINUS), xb2))
    return SandwichReport(delta, True, boxes, tangent_boxes, node_gaps, between)


@dataclass
class FTItem:
    xi: float
    sign: str
    closed: float
    quadrature: float
    budget: dict
    passed: bool

    @property
    def deviation(self) -> float:
        return abs(self.quadrature - self.closed)


def _gl_panels(f, a: float, b: float, width: float, order: int):
    """Composite Gauss-Legendre integral of a vectorised f over [a, b]."""
    n_pan = max(1, math.ceil((b - a) / width))
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, n_pan + 1)
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    vals = f(x).reshape(n_pan, order)
    per_panel = (vals * weights[None, :]).sum(axis=1) * half
    return math.fsum(per_panel.tolist())


def _cos_tail(freq: float, x_cut: float):
    """(exact part, radius) of int_X^inf h(x) cos(2 pi f x) dx."""
    whole = math.pi / 2 - math.atan(2 * x_cut)
    if freq == 0:
        return whole, 0.0
    return 0.0, min(whole, (0.5 / (0.25 + x_cut**2)) / (math.pi * abs(freq)))


def ft_quadrature(p: ExtremalParams, xi: float, x_cut: float = 2000.0, order: int = 16):
    """Quadrature of the Fourier transform with an itemised error budget."""
    d = float(p.delta)
    xi = float(xi)
    c = float(p.c)
    top = abs(xi) + d
    width = min(0.25, 1 / (4 * top)) if top > 0 else 0.25

    def f(x):
        return h_extremal_array(p, x) * np.cos(2 * math.pi * xi * x)

    coarse = 2 * _gl_panels(f, 0.0, x_cut, width, order)
    fine = 2 * _gl_panels(f, 0.0, x_cut, width / 2, order)
    a_coef = 2 * math.cosh(math.pi * d) / c
    exact, radius = 0.0, 0.0
    for coef, freq in ((a_coef, xi), (-1 / c, xi + d), (-1 / c, xi - d)):
        e, r = _cos_tail(freq, x_cut)
        exact += 2 * coef * e
        radius += 2 * abs(coef) * r
    return fine + exact, {"quadrature": 10 * abs(fine - coarse), "tail": radius}


def ft_selftest(p: ExtremalParams, xis, quad_tol: float = 1e-6, raise_on_fail: bool = False) -> list[FTItem]:
    """Compare quadrature of h^{+-} against the closed-form transform."""
    items = []
    for xi in xis:
        value, budget = ft_quadrature(p, xi)
        budget = {"quad_tol": quad_tol, **budget}
        closed = float(ft_extremal(p, float(xi)))
        ok = abs(value - closed) <= sum(budget.values())
        items.append(FTItem(float(xi), p.sign, closed, value, budget, ok))
        if not ok and raise_on_fail:
            raise VerificationFailed(f"Fourier transform mismatch at xi = {xi}", witness=float(xi))
    return items
