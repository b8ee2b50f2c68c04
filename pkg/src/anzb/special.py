"""Digamma real parts and zeta on the line Re s = 1 with explicit error control.

Two evaluation routes are provided for the digamma function: a reference
route (upward recurrence plus the asymptotic series with a rigorous
remainder) and the two-term Stirling approximation together with its
O*-radius 1/(4|z|^2).

The zeta routines use Euler-Maclaurin summation at s = 1 + it.  The long
main sum runs in vectorised extended precision with a worst-case floating
error model; the correction terms run in mpmath and the truncation error is
bounded with Backlund's remainder estimate.  The derivative uses the
termwise-differentiated formula and a Cauchy estimate for its remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from anzb.errors import DomainError, PrecisionExhausted
from anzb.numerics.enclosure import Enclosure, up
from anzb.numerics.interval import DEFAULT_PREC, Interval

# -- digamma -------------------------------------------------------------


@dataclass(frozen=True)
class StirlingBudget:
    """Two-term Stirling approximation of Re psi(z) and its error radius."""

    z: complex
    main: float
    err: float

    def as_enclosure(self) -> Enclosure:
        return Enclosure(self.main, self.err)


def stirling_budget(z: complex) -> StirlingBudget:
    """log|z| - Re(1/z)/2 with radius 1/(4|z|^2), valid for Re z >= 0."""
    z = complex(z)
    if z.real < 0:
        raise DomainError("the Stirling budget needs Re z >= 0")
    if z == 0:
        raise DomainError("pole of the digamma function at 0")
    r = abs(z)
    main = math.log(r) - 0.5 * (1 / z).real
    return StirlingBudget(z, main, 1.0 / (4.0 * r * r))


def _digamma_exact(z: mpmath.mpc, prec: int):
    """Re psi(z) with a rigorous absolute error bound (value, err)."""
    with mpmath.workprec(prec + 24):
        shift = max(0, int(mpmath.ceil(30 + prec / 4 - z.real)))
        total = mpmath.mpf(0)
        mag = mpmath.mpf(0)
        for k in range(shift):
            term = 1 / (z + k)
            total -= term.real
            mag += abs(term)
        w = z + shift
        s = mpmath.log(w) - 1 / (2 * w)
        w2 = w * w
        wpow = w2
        target = mpmath.mpf(2) ** (-prec)
        rem = None
        for k in range(1, 80):
            b = mpmath.bernoulli(2 * k)
            bound = 2 ** (k + 1) * abs(b) / (2 * k * abs(wpow))
            if bound < target or k == 79:
                rem = bound
                break
            s -= b / (2 * k * wpow)
            wpow *= w2
        value = total + s.real
        rounding = (shift + 100) * mpmath.mpf(2) ** (-prec) * (1 + abs(value) + mag + abs(s))
        return value, float(rem + rounding) * (1 + 1e-12)


def re_digamma(z, mode: str = "exact", prec: int = DEFAULT_PREC) -> Enclosure:
    """Enclosure of Re(Gamma'/Gamma)(z).

    ``exact`` uses recurrence plus the asymptotic series with its tail
    bounded by the first omitted term times 2^(n+1) (a safe factor on the
    closed right half-plane).  ``stirling`` returns the two-term
    approximation with radius 1/(4|z|^2).
    """
    zc = mpmath.mpc(z)
    if zc.imag == 0 and zc.real <= 0 and zc.real == int(zc.real):
        raise DomainError(f"pole of the digamma function at {z}")
    if mode == "stirling":
        return stirling_budget(complex(z)).as_enclosure()
    if mode != "exact":
        raise DomainError(f"unknown digamma mode {mode!r}")
    if zc.real < 0:
        # reflection keeps the series on the right half-plane
        with mpmath.workprec(prec + 24):
            v, e = _digamma_exact(1 - zc, prec)
            corr = (mpmath.pi * mpmath.cot(mpmath.pi * zc)).real
            return Enclosure(v - corr, up(e + float(abs(corr)) * 2.0 ** (-prec + 8)))
    v, e = _digamma_exact(zc, prec)
    return Enclosure(v, e)


# -- zeta on the 1-line --------------------------------------------------

_U_LD = float(np.finfo(np.longdouble).eps) / 2
_U_D = 2.0 ** -53
_TWO_PI_LD = np.longdouble("6.28318530717958647692528676655900577")
_CHUNK = 1 << 20


@dataclass(frozen=True)
class EulerMaclaurinConfig:
    """Truncation parameters for Euler-Maclaurin summation at s = 1 + it.

    ``cutoff`` None means max(100, ceil(1.2|t|)).  The truncation bound must
    fall below half of ``target_abs_err``; otherwise M and then N are raised.
    """

    cutoff: int | None = None
    bernoulli_terms: int = 12
    target_abs_err: float = 1e-6
    precision: int = DEFAULT_PREC

    def cutoff_for(self, t: float) -> int:
        base = max(100, math.ceil(1.2 * abs(t)))
        return base if self.cutoff is None else max(self.cutoff, base)

    def doubled(self, t: float) -> "EulerMaclaurinConfig":
        return EulerMaclaurinConfig(2 * self.cutoff_for(t), 2 * self.bernoulli_terms, self.target_abs_err, self.precision)


@dataclass(frozen=True)
class ZetaPair:
    """zeta(1+it) and zeta'(1+it) with an itemised error budget."""

    t: float
    zeta: Enclosure
    dzeta: Enclosure
    cutoff: int
    bernoulli_terms: int
    float_err: float
    remainder: float
    dremainder: float


def _main_sums(t: float, n_cut: int):
    """sum_{n<N} n^(-1-it) and sum_{n<N} -log(n) n^(-1-it) with error bounds."""
    t_ld = np.longdouble(t)
    re0, im0, re1, im1 = [], [], [], []
    phase_mass0 = 0.0  # sum (1/n)(t log n + 2 pi)
    phase_mass1 = 0.0  # sum (log n / n)(t log n + 2 pi)
    harm = 0.0
    loghar = 0.0
    for a in range(1, n_cut, _CHUNK):
        b = min(a + _CHUNK, n_cut)
        n = np.arange(a, b, dtype=np.longdouble)
        lg = np.log(n)
        phase = t_ld * lg
        k = np.rint(phase / _TWO_PI_LD)
        r = np.asarray(phase - k * _TWO_PI_LD, dtype=np.float64)
        amp = 1.0 / np.arange(a, b, dtype=np.float64)
        lg64 = np.asarray(lg, dtype=np.float64)
        c = amp * np.cos(r)
        s = amp * np.sin(r)
        re0.append(float(np.sum(c)))
        im0.append(-float(np.sum(s)))
        re1.append(-float(np.sum(lg64 * c)))
        im1.append(float(np.sum(lg64 * s)))
        ph = np.asarray(phase, dtype=np.float64) + 2 * math.pi
        phase_mass0 += float(np.sum(amp * ph))
        phase_mass1 += float(np.sum(amp * lg64 * ph))
        harm += float(np.sum(amp))
        loghar += float(np.sum(amp * lg64))
    s0 = complex(math.fsum(re0), math.fsum(im0))
    s1 = complex(math.fsum(re1), math.fsum(im1))
    # per-term phase error <= 10 u_ld (phase + 2 pi); float64 trig, products and
    # pairwise sums contribute at most (log2(chunk) + 30) u_d per unit weight
    pair = math.log2(_CHUNK) + 30
    e0 = 10 * _U_LD * phase_mass0 + pair * _U_D * harm + 4 * _U_D * abs(s0)
    e1 = 10 * _U_LD * phase_mass1 + (pair + 4) * _U_D * loghar + 4 * _U_D * abs(s1)
    return s0, s1, up(e0 * 1.01), up(e1 * 1.01)


def _em_tail(t: float, n_cut: int, m_terms: int, prec: int):
    """Correction terms and remainder bounds for zeta and zeta' at s = 1 + it."""
    with mpmath.workprec(prec):
        s = mpmath.mpc(1, t)
        big_n = mpmath.mpf(n_cut)
        log_n = mpmath.log(big_n)
        n_s = mpmath.exp(-s * log_n)  # N^-s
        n_1s = n_s * big_n  # N^(1-s)
        z0 = n_1s / (s - 1) + n_s / 2
        z1 = n_1s * (-log_n / (s - 1) - 1 / (s - 1) ** 2) - log_n * n_s / 2
        poch = s  # s (s+1) ... (s + 2k - 2)
        recip = 1 / s  # sum 1/(s+j) over the same range
        npow = n_s / big_n  # N^(-s-2k+1), k = 1
        for k in range(1, m_terms + 1):
            coef = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k)
            term = coef * poch * npow
            z0 += term
            z1 += term * (-log_n + recip)
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            recip += 1 / (s + 2 * k - 1) + 1 / (s + 2 * k)
            npow /= big_n * big_n
        mm = m_terms
        b = abs(mpmath.bernoulli(2 * mm + 2)) / mpmath.factorial(2 * mm + 2)

        def backlund(sig, radius):
            prod = mpmath.mpf(1)
            for j in range(2 * mm + 1):
                prod *= abs(s + j) + radius
            lead = (abs(s + 2 * mm + 1) + radius) / (sig - radius + 2 * mm + 1)
            return lead * b * prod * big_n ** (-(sig - radius) - 2 * mm - 1)

        rem0 = backlund(1, 0)
        r = mpmath.mpf(0.5)
        rem1 = backlund(1, r) / r
        rounding = mpmath.mpf(2) ** (-prec + 16) * (1 + abs(z0) + abs(z1))
        return complex(z0), complex(z1), float(rem0 + rounding), float(rem1 + rounding)


def zeta_pair_1line(t, cfg: EulerMaclaurinConfig | None = None) -> ZetaPair:
    """Enclosures of zeta(1+it) and zeta'(1+it).

    t is used as the nearest double.  Negative t is handled by conjugation.
    """
    cfg = cfg or EulerMaclaurinConfig()
    t = float(t)
    if abs(t) < 1:
        raise DomainError("zeta on the 1-line is evaluated for |t| >= 1")
    if t < 0:
        p = zeta_pair_1line(-t, cfg)
        return ZetaPair(t, p.zeta.conjugate(), p.dzeta.conjugate(), p.cutoff, p.bernoulli_terms,
                        p.float_err, p.remainder, p.dremainder)
    n_cut = cfg.cutoff_for(t)
    m = cfg.bernoulli_terms
    half = cfg.target_abs_err / 2
    for _ in range(12):
        z0, z1, rem0, rem1 = _em_tail(t, n_cut, m, cfg.precision)
        if rem0 <= half and rem1 <= half:
            break
        if m < 40:
            m += 4
        else:
            n_cut *= 2
    else:
        raise PrecisionExhausted(f"Euler-Maclaurin remainder above target at t={t}",
                                 {"cutoff": n_cut, "bernoulli_terms": m, "remainder": rem0})
    s0, s1, e0, e1 = _main_sums(t, n_cut)
    zv, dv = s0 + z0, s1 + z1
    err0 = up(e0 + rem0 + 4 * _U_D * abs(zv))
    err1 = up(e1 + rem1 + 4 * _U_D * abs(dv))
    if max(err0, err1) > cfg.target_abs_err:
        raise PrecisionExhausted(
            f"floating error {max(e0, e1):.2e} exceeds target {cfg.target_abs_err:.1e} at t={t}",
            {"cutoff": n_cut, "float_err": max(e0, e1)},
        )
    return ZetaPair(t, Enclosure(zv, err0), Enclosure(dv, err1), n_cut, m, max(e0, e1), rem0, rem1)


def zeta_1line(t, cfg: EulerMaclaurinConfig | None = None) -> Enclosure:
    """Enclosure of the complex number zeta(1+it)."""
    return zeta_pair_1line(t, cfg).zeta


def zeta_logderiv_1line(t, cfg: EulerMaclaurinConfig | None = None) -> Enclosure:
    """Enclosure of zeta'/zeta(1+it); DivisionByNearZero if |zeta| is not separated from 0."""
    p = zeta_pair_1line(t, cfg)
    return p.dzeta / p.zeta


# -- exponential integral --------------------------------------------------


def e1_interval(z: Interval, terms: int = 80) -> Interval:
    """Enclosure of E1(z) = int_z^inf e^(-s)/s ds for 0 < z <= 20.

    Uses E1(z) = -gamma - log z - sum_k (-z)^k/(k k!) with the remainder
    bounded by the first omitted term over 1 - z/(terms + 2).
    """
    if not z.lo > 0 or z.hi > 20:
        raise DomainError("the E1 series is used for 0 < z <= 20")
    total = -Interval.euler(z.prec) - z.log()
    term = Interval(1, prec=z.prec)
    for k in range(1, terms + 1):
        term = term * (-z) / k
        total = total - term / k
    zmax = Interval(z.hi, prec=z.prec)
    nxt = zmax ** (terms + 1) / (mpmath.factorial(terms + 1) * (terms + 1))
    rem = nxt / (1 - zmax / (terms + 2))
    return total + Interval(-rem.hi, rem.hi, prec=z.prec)
