"""Zero tables and both sides of the explicit formula for translated kernels.

Sums over zero ordinates are taken over the table (both signs) plus a
rigorous tail.  The tail uses the zero-counting function
N(T) = (T/2pi) log(T/2pi e) + 7/8 + R with |R| <= 0.12 log T + 0.3 log log T + 3,
a rounded-up form of the standard explicit bound on S(T) plus the O(1/T)
term.  For a decreasing envelope G on (T, inf) integration by parts gives

    sum_{gamma > T} G(gamma) <= int_T^inf G(u) log(u/2pi)/(2pi) du + 2 R(T) G(T) + int_T^inf R'(u) G(u) du.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import mpmath
import numpy as np
from scipy.special import psi as _cpsi

from anzb import extremal as ex
from anzb.errors import DataError, DomainError
from anzb.numerics.enclosure import Enclosure, up
from anzb.primes import WeightedSumSpec, evaluate_sum, table_upto
from anzb.special import EulerMaclaurinConfig, zeta_logderiv_1line

DEFAULT_ACCURACY = 2e-9
ENV_ZEROS = "ANZB_ZEROS"
_U = 2.0 ** -53


# -- zero tables ------------------------------------------------------------


@dataclass(frozen=True)
class ZeroTable:
    """Ascending positive zero ordinates with a per-entry absolute accuracy."""

    ordinates: np.ndarray
    accuracy: float = DEFAULT_ACCURACY
    source: str = ""

    def __post_init__(self):
        o = np.asarray(self.ordinates, dtype=np.float64)
        if o.ndim != 1 or len(o) == 0:
            raise DataError("zero table is empty")
        if not np.all(np.isfinite(o)) or o[0] <= 0:
            raise DataError("ordinates must be finite and positive")
        if np.any(np.diff(o) <= 0):
            i = int(np.nonzero(np.diff(o) <= 0)[0][0])
            raise DataError(f"ordinates not strictly ascending at entry {i + 2} ({o[i]!r} then {o[i + 1]!r})")
        o.setflags(write=False)
        object.__setattr__(self, "ordinates", o)

    @property
    def max_height(self) -> float:
        return float(self.ordinates[-1])

    def __len__(self) -> int:
        return len(self.ordinates)

    def count_below(self, height: float) -> int:
        return int(np.searchsorted(self.ordinates, height, side="right"))

    def signed(self) -> np.ndarray:
        """Ordinates of both signs (zeros come in conjugate pairs)."""
        return np.concatenate([-self.ordinates[::-1], self.ordinates])

    def truncated(self, height: float) -> "ZeroTable":
        return ZeroTable(self.ordinates[: self.count_below(height)], self.accuracy, self.source)


def load_zeros(source, accuracy: float = DEFAULT_ACCURACY) -> ZeroTable:
    """Parse a zero file: '#' comments, one positive decimal ordinate per line."""
    name = ""
    if isinstance(source, (str, os.PathLike)):
        name = str(source)
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise DataError(f"cannot read zero table {source}: {e}") from e
        lines = io.StringIO(text)
    else:
        lines = source
    values = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise DataError(f"line {lineno}: not a number: {line[:40]!r}") from None
    if not accuracy >= 0:
        raise DataError("accuracy must be nonnegative")
    return ZeroTable(np.array(values, dtype=np.float64), accuracy, name)


def zeros_path_from_env() -> str | None:
    return os.environ.get(ENV_ZEROS) or None


# -- test functions ---------------------------------------------------------


@dataclass(frozen=True)
class KernelFunction:
    """An even test function g with the bounds needed for zero sums.

    ``values`` and ``deriv_bound`` act on float arrays; ``envelope`` is a
    constant K with |g(x)| <= K h(x) for the Poisson kernel h.
    """

    values: Callable[[np.ndarray], np.ndarray]
    deriv_bound: Callable[[np.ndarray], np.ndarray]
    envelope: float
    osc: float = 0.0  # angular frequency of any oscillating factor (for rounding)
    name: str = "g"


def _h(x):
    return 0.5 / (0.25 + x * x)


def _dh(x):
    return np.abs(x) / (0.25 + x * x) ** 2


def poisson_kernel() -> KernelFunction:
    return KernelFunction(_h, _dh, 1.0, 0.0, "h")


def extremal_kernel(p: ex.ExtremalParams) -> KernelFunction:
    d = float(p.delta)
    c = float(p.c)
    a = 2 * math.cosh(math.pi * d)

    def deriv(x):
        return (_dh(x) * (a + 2) + _h(x) * 4 * math.pi * d) / c

    return KernelFunction(lambda x: ex.h_extremal_array(p, x), deriv, (a + 2) / c, 2 * math.pi * d,
                          f"h{p.sign}[{d:g}]")


# -- zero sums ----------------------------------------------------------------


def _r_envelope(u: float) -> float:
    return 0.12 * math.log(u) + 0.3 * math.log(math.log(u)) + 3.0


def _tail_one_side(k: float, t: float, top: float) -> float:
    """Bound on sum_{gamma > top} K h(gamma - t) for t < top (t may be negative)."""
    gap = top - t
    g_top = k / (2 * gap * gap)
    # int_T^inf log(u/2pi)/(u - t)^2 du = log(T/2pi)/(T - t) + log(T/(T - t))/t
    second = math.log1p(t / gap) / t if t != 0 else 1 / top
    main = k / (4 * math.pi) * (math.log(top / (2 * math.pi)) / gap + second)
    r_prime = (0.12 + 0.3 / math.log(top)) / top
    return main + 2 * _r_envelope(top) * g_top + r_prime * k / (2 * gap)


@dataclass(frozen=True)
class ZeroSum:
    """A zero sum with its itemised error budget."""

    value: float
    items: dict

    @property
    def err(self) -> float:
        return up(sum(self.items.values()))

    def enclosure(self) -> Enclosure:
        return Enclosure(self.value, self.err)


def zero_sum(g: KernelFunction, t: float, table: ZeroTable, tail_fraction: float = 0.25) -> ZeroSum:
    """sum over all ordinates gamma (both signs) of g(t - gamma)."""
    t = float(t)
    top = table.max_height
    if abs(t) >= top - 10:
        raise DataError(f"t = {t} is beyond the coverage of the zero table (height {top:.1f})")
    x = t - table.signed()
    vals = g.values(x)
    value = math.fsum(vals.tolist())
    tail = _tail_one_side(g.envelope, t, top) + _tail_one_side(g.envelope, -t, top)
    acc = table.accuracy * float(np.sum(g.deriv_bound(x))) * 1.01 + 16 * table.accuracy**2 * len(x)
    rounding = float(np.sum(g.envelope * _h(x) * (16 + 4 * g.osc * (np.abs(x) + abs(t))))) * _U + 2 * _U * abs(value)
    if tail > tail_fraction * max(abs(value), 1e-300):
        raise DataError(
            f"zero-tail bound {tail:.3g} exceeds {tail_fraction:g} of the sum {value:.3g}; "
            f"table height {top:.1f} is too low for t = {t}"
        )
    return ZeroSum(value, {"zero_tail": up(tail), "ordinate_accuracy": up(acc), "rounding": up(rounding)})


# -- comparisons --------------------------------------------------------------


@dataclass
class BudgetedComparison:
    """lhs versus rhs within an itemised budget.

    relation "eq": consistent iff |lhs - rhs| <= lhs.err + rhs.err + budget.
    relation "le": consistent iff lhs - rhs <= lhs.err + rhs.err + budget.
    """

    lhs: Enclosure
    rhs: Enclosure
    items: dict
    relation: str = "eq"
    label: str = ""
    details: dict = field(default_factory=dict)
    subchecks: list = field(default_factory=list)

    @property
    def budget(self) -> float:
        return up(sum(self.items.values()))

    @property
    def allowance(self) -> float:
        return up(self.lhs.err + self.rhs.err + self.budget)

    @property
    def gap(self) -> float:
        d = float(self.lhs.value) - float(self.rhs.value)
        return abs(d) if self.relation == "eq" else d

    @property
    def verdict(self) -> str:
        return "consistent" if self.gap <= self.allowance else "violated"

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent"

    def itemized(self) -> dict:
        return {"lhs_numerics": self.lhs.err, "rhs_numerics": self.rhs.err, **self.items}

    def summary(self) -> str:
        rel = "=" if self.relation == "eq" else "<="
        lines = [
            f"{self.label}: lhs {float(self.lhs.value):.12g} {rel} rhs {float(self.rhs.value):.12g}",
            f"  gap {self.gap:.3e}  allowance {self.allowance:.3e}  -> {self.verdict}",
        ]
        for k, v in self.itemized().items():
            lines.append(f"  {k:<22s} {v:.3e}")
        for k, v in self.details.items():
            lines.append(f"  [{k}] {v}")
        return "\n".join(lines)


# -- archimedean integral ------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _re_digamma_line(u: np.ndarray) -> np.ndarray:
    """Re psi(1/4 + iu/2) for a float array u."""
    return np.real(_cpsi(0.25 + 0.5j * u))


def _panels(a: float, b: float, width: float) -> np.ndarray:
    n = max(1, math.ceil((b - a) / width))
    return np.linspace(a, b, n + 1)


def _gl(f, edges: np.ndarray) -> tuple[float, float]:
    """Composite Gauss-Legendre value and sum of |integrand| weights."""
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    x = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    vals = f(x).reshape(len(half), -1)
    w = _GL_WEIGHTS[None, :] * half[:, None]
    return math.fsum((vals * w).ravel().tolist()), float(np.sum(np.abs(vals) * w))


def _gl_doubled(f, edges: np.ndarray):
    coarse, _ = _gl(f, edges)
    mids = (edges[1:] + edges[:-1]) / 2
    fine_edges = np.empty(2 * len(edges) - 1)
    fine_edges[0::2] = edges
    fine_edges[1::2] = mids
    fine, mass = _gl(f, fine_edges)
    return fine, abs(fine - coarse), mass


def archimedean_integral(p: ex.ExtremalParams, t: float, width: float | None = None) -> tuple[float, dict]:
    """(1/2pi) int h^{+-}(t - u) Re psi(1/4 + iu/2) du with an itemised budget.

    h^{+-} = (A h - 2 h cos(2 pi Delta x))/c with A = 2 cosh(pi Delta).  The
    non-oscillating part is integrated on [-W, W] and, beyond, in the variable
    theta with x = tan(theta)/2 (so h dx = d theta); the oscillating part is
    integrated on [-W, W] with an integration-by-parts tail bound.  Both use
    |Re psi(1/4 + iu/2)| <= log(1 + |u|/2) + 7.4 and |d/du Re psi| <= 2/|u|.
    """
    d = float(p.delta)
    c = float(p.c)
    a = 2 * math.cosh(math.pi * d)
    omega = 2 * math.pi * d
    t = float(t)
    w_cut = width or max(4 * abs(t), 4000.0)
    edges = _panels(-w_cut, w_cut, min(0.25, 1 / (8 * d)))

    def smooth(x):
        return _h(x) * _re_digamma_line(t - x)

    def osc(x):
        return _h(x) * np.cos(omega * x) * _re_digamma_line(t - x)

    s_mid, e_mid, m_mid = _gl_doubled(smooth, edges)
    o_mid, e_osc, m_osc = _gl_doubled(osc, edges)

    # theta tails: s = pi/2 - |theta| in [eps, s_max], graded geometrically
    s_max = math.pi / 2 - math.atan(2 * w_cut)
    eps = 1e-12
    g_edges = np.geomspace(eps, s_max, 48)
    tails, e_tail, m_tail = 0.0, 0.0, 0.0
    for sgn in (1.0, -1.0):
        def f_theta(s, sgn=sgn):
            return _re_digamma_line(t - sgn * np.tan(math.pi / 2 - s) / 2)

        v, e, m = _gl_doubled(f_theta, g_edges)
        tails += v
        e_tail += e
        m_tail += m
    end_piece = 2 * eps * (math.log1p(abs(t) / 2) + math.log(1 / eps) + 1 + 7.4)

    lw = math.log(2 * w_cut)
    osc_tail = 2 * ((lw + 7.4) / (2 * w_cut**2) + (lw + 9.4) / (2 * w_cut**2) + 1 / (4 * w_cut**2)) / omega

    value = (a * (s_mid + tails) - 2 * o_mid) / (c * 2 * math.pi)
    scale = 1 / (2 * math.pi * c)
    quad = 10 * scale * (a * (e_mid + e_tail) + 2 * e_osc)
    rounding = 1e-13 * scale * (a * (m_mid + m_tail) + 2 * m_osc)
    tail = scale * (a * end_piece + 2 * osc_tail)
    return value, {"quadrature": up(quad + rounding), "integral_tail": up(tail)}


def archimedean_closed_form(p: ex.ExtremalParams, t: float) -> float:
    """(1/2 + 1/(+-e^{pi Delta} - 1)) log(t/2)."""
    return float(ex.sinh_ratio_closed(float(p.delta), p.sign)) * math.log(t / 2)


# -- explicit formula ------------------------------------------------------------


def _prime_side(p: ex.ExtremalParams, t: float) -> Enclosure:
    """(1/pi) sum Lambda(n)/sqrt(n) hat h(log n/2pi) cos(t log n) over n < e^{2 pi Delta}."""
    d = float(p.delta)
    limit = math.exp(2 * math.pi * d)
    if limit > 1e8:
        raise DomainError(f"prime sum cutoff e^(2 pi Delta) = {limit:.3g} exceeds the sieve limit")
    tab = table_upto(max(100, int(limit) + 1))
    with mpmath.workdps(30):
        total = mpmath.mpf(0)
        for n, prime, _ in tab.prime_powers_upto(limit):
            lam = mpmath.log(prime)
            ln = mpmath.log(n)
            xi = ln / (2 * mpmath.pi)
            if xi >= d:
                continue
            fth = ex.ft_extremal(ex.ExtremalParams(mpmath.mpf(d), p.sign), xi)
            total += lam / mpmath.sqrt(n) * fth * mpmath.cos(t * ln)
        val = total / mpmath.pi
    return Enclosure(float(val), 1e-20 + 1e-24 * abs(t) * limit)


def gw_reconcile(
    p: ex.ExtremalParams,
    t: float,
    table: ZeroTable,
    quad_tol: float = 1e-6,
    drop_prime_sum: bool = False,
) -> BudgetedComparison:
    """Both sides of the explicit formula for g(x) = h^{+-}(t - x).

    ``drop_prime_sum`` omits the prime-power term (fault injection).
    """
    d = float(p.delta)
    if d < 0.5:
        raise DomainError("the explicit-formula check needs Delta >= 1/2")
    if t <= 0:
        raise DomainError("t must be positive")
    zs = zero_sum(extremal_kernel(p), t, table)
    integral, q_items = archimedean_integral(p, t)
    ft0 = float(ex.ft_at_zero_closed(ex.ExtremalParams(d, p.sign)))
    log_term = math.log(math.pi) / (2 * math.pi) * ft0
    with mpmath.workdps(30):
        pp = ex.ExtremalParams(mpmath.mpf(d), p.sign)
        poles = ex._product_form(pp, mpmath.mpc(t, 0.5)) + ex._product_form(pp, mpmath.mpc(t, -0.5))
        poles = float(mpmath.re(poles))
    primes = _prime_side(p, t)
    rhs_value = integral - log_term + poles
    if not drop_prime_sum:
        rhs_value -= primes.value
    rhs = Enclosure(rhs_value, up(primes.err + 64 * _U * (abs(integral) + abs(log_term) + abs(poles))))
    items = {"stated_O*": 0.0, **zs.items, **q_items, "quad_tol": quad_tol}
    closed = archimedean_closed_form(p, t)
    arch = BudgetedComparison(
        Enclosure(integral, 0.0), Enclosure(closed, 64 * _U * abs(closed)),
        {"stated_O*": 1.3 / t**2, **q_items}, "eq", "archimedean integral vs closed form",
    )
    details = {
        "delta": d,
        "sign": p.sign,
        "t": t,
        "zero_sum": zs.value,
        "archimedean": integral,
        "log_pi_term": -log_term,
        "pole_terms": poles,
        "prime_sum": 0.0 if drop_prime_sum else -primes.value,
        "archimedean_vs_closed_form": f"{arch.verdict} (gap {arch.gap:.2e} <= {arch.allowance:.2e})",
    }
    return BudgetedComparison(Enclosure(zs.value, 0.0), rhs, items, "eq",
                              f"explicit formula Delta={d:g} sign={p.sign} t={t:g}", details, [arch])


def lemma21_check(t: float, table: ZeroTable, cfg: EulerMaclaurinConfig | None = None) -> BudgetedComparison:
    """Re zeta'/zeta(1+it) against sum_gamma h(t - gamma) - log(t/2pi)/2 within 7/(4t^2)."""
    if t < 10:
        raise DomainError("the zero-sum route needs t >= 10")
    zs = zero_sum(poisson_kernel(), t, table)
    lhs = zeta_logderiv_1line(t, cfg).real
    shift = 0.5 * math.log(t / (2 * math.pi))
    rhs = Enclosure(zs.value - shift, 4 * _U * (abs(zs.value) + shift))
    items = {"stated_O*": 7 / (4 * t * t), **zs.items}
    return BudgetedComparison(lhs, rhs, items, "eq", f"Re zeta'/zeta(1+it) vs zero sum at t={t:g}",
                              {"zero_sum": zs.value})


def zero_energy_bound_check(t: float, table: ZeroTable, cfg: EulerMaclaurinConfig | None = None) -> BudgetedComparison:
    """sum_rho 1/|rho - it|^2 <= log(t/2pi) + 2 Re zeta'/zeta(1+it) + 7/(2t^2)."""
    if t < 10:
        raise DomainError("the zero-sum route needs t >= 10")
    zs = zero_sum(poisson_kernel(), t, table)
    lhs = Enclosure(2 * zs.value, 2 * zs.err)
    re_ld = zeta_logderiv_1line(t, cfg).real
    rhs = re_ld.scale(2) + (math.log(t / (2 * math.pi)) + 7 / (2 * t * t))
    return BudgetedComparison(lhs, rhs, {"stated_O*": 0.0}, "le", f"zero energy bound at t={t:g}",
                              {"zero_sum": zs.value})


def lemma55_check(t: float, x: float, table: ZeroTable, cfg: EulerMaclaurinConfig | None = None) -> BudgetedComparison:
    """Cesaro-weighted twisted prime sum identity with its O* terms."""
    if x < 2:
        raise DomainError("x must be at least 2")
    if t < 10:
        raise DomainError("the zero-sum route needs t >= 10")
    tab = table_upto(max(100, int(x) + 1))
    s = evaluate_sum(WeightedSumSpec("cesaro_twisted", x, t=t), tab)
    re_ld = zeta_logderiv_1line(t, cfg).real
    lhs = s + re_ld
    rhs = (re_ld + math.log(t / (2 * math.pi))).scale(-1 / x)
    zs = zero_sum(poisson_kernel(), t, table)
    energy = 2 * (zs.value + zs.err)
    items = {"stated_O*_zeros": energy / math.sqrt(x), "stated_O*": 1.7 / t**2}
    return BudgetedComparison(lhs, rhs, items, "eq", f"Cesaro prime sum identity at t={t:g}, x={x:g}",
                              {"prime_sum": s.value, "re_logderiv": re_ld.value})
