"""Von Mangoldt sieve, weighted prime sums and the objects of the p = 2 argument.

All sums run over prime powers n = p^k only, stored in factored form
(n, p, k, log p).  Every sum has a floating fast path returning a float and
an enclosure path that adds a worst-case rounding bound.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from anzb.errors import DomainError
from anzb.numerics import elementary as el
from anzb.numerics.enclosure import Enclosure, up
from anzb.numerics.interval import DEFAULT_PREC, Interval

_U = 2.0 ** -53
KINDS = ("psi", "loglog", "cesaro", "cesaro_twisted", "logweight_twisted", "lambda_xy")


class MangoldtTable:
    """Lambda(n) for all prime powers n <= limit, in factored form.

    ``n``, ``p`` and ``k`` are int64 arrays sorted by n; ``logp`` holds
    log p as doubles.  Lambda(n) = log p exactly when n = p^k.
    """

    def __init__(self, limit: int):
        limit = int(limit)
        if limit < 2:
            raise DomainError("sieve limit must be at least 2")
        self.limit = limit
        is_p = np.ones(limit + 1, dtype=bool)
        is_p[:2] = False
        for q in range(2, math.isqrt(limit) + 1):
            if is_p[q]:
                is_p[q * q :: q] = False
        primes = np.flatnonzero(is_p).astype(np.int64)
        del is_p
        ns, ps, ks = [primes], [primes], [np.ones_like(primes)]
        for q in primes[primes <= math.isqrt(limit)]:
            q = int(q)
            powers, k, v = [], 2, q * q
            while v <= limit:
                powers.append((v, k))
                v *= q
                k += 1
            if powers:
                arr = np.array(powers, dtype=np.int64)
                ns.append(arr[:, 0])
                ps.append(np.full(len(arr), q, dtype=np.int64))
                ks.append(arr[:, 1])
        n = np.concatenate(ns)
        order = np.argsort(n, kind="stable")
        self.n = n[order]
        self.p = np.concatenate(ps)[order]
        self.k = np.concatenate(ks)[order]
        self.logp = np.log(self.p.astype(np.float64))
        for arr in (self.n, self.p, self.k, self.logp):
            arr.setflags(write=False)

    def count_upto(self, x) -> int:
        """Number of prime powers n <= x."""
        if x > self.limit:
            raise DomainError(f"x = {x} exceeds the sieve limit {self.limit}")
        return int(np.searchsorted(self.n, math.floor(x), side="right"))

    def lam(self, m: int) -> float:
        """Lambda(m) as a double."""
        if m > self.limit:
            raise DomainError(f"{m} exceeds the sieve limit {self.limit}")
        i = int(np.searchsorted(self.n, m))
        return float(self.logp[i]) if i < len(self.n) and self.n[i] == m else 0.0

    def dense(self, upto: int | None = None) -> np.ndarray:
        """Dense array of Lambda(n) for 0 <= n <= upto."""
        upto = self.limit if upto is None else int(upto)
        out = np.zeros(upto + 1)
        c = self.count_upto(upto)
        out[self.n[:c]] = self.logp[:c]
        return out

    def prime_powers_upto(self, x):
        """(n, p, k) triples as Python ints for n <= x (small x only)."""
        c = self.count_upto(x)
        return list(zip(self.n[:c].tolist(), self.p[:c].tolist(), self.k[:c].tolist()))

    def __repr__(self) -> str:
        return f"MangoldtTable(limit={self.limit}, prime_powers={len(self.n)})"


@functools.lru_cache(maxsize=4)
def table_upto(limit: int) -> MangoldtTable:
    """Shared read-only table with the given limit (cached per process)."""
    return MangoldtTable(limit)


@dataclass(frozen=True)
class WeightedSumSpec:
    """Which weighted prime sum to evaluate.

    ``t`` twists every term by n^(-it) (only the real part is returned);
    ``y`` is used by the lambda_xy kind only.
    """

    kind: str
    x: float
    y: float | None = None
    t: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown sum kind {self.kind!r}")
        if self.kind == "loglog" and not self.x >= math.e:
            raise DomainError("the loglog sum needs x >= e")
        if self.kind == "psi" and not self.x >= 1:
            raise DomainError("psi needs x >= 1")
        if self.kind in ("cesaro", "cesaro_twisted") and not self.x > 1:
            raise DomainError("the Cesaro sum needs x > 1")
        if self.kind == "logweight_twisted" and not self.x >= 2:
            raise DomainError("the log-weight sum needs x >= 2")
        if self.kind == "lambda_xy":
            if self.y is None or self.x < 2 or self.y < 2:
                raise DomainError("lambda_xy needs x, y >= 2")

    @property
    def cutoff(self) -> float:
        return self.x * self.y if self.kind == "lambda_xy" else self.x


def _weights(spec: WeightedSumSpec, table: MangoldtTable):
    """(weights, magnitudes, log n) for the terms n <= cutoff.

    ``magnitudes`` bound |weight| and are computed without cancellation; the
    rounding error of each weight is at most 16 u times its magnitude.
    """
    c = table.count_upto(spec.cutoff)
    n = table.n[:c].astype(np.float64)
    k = table.k[:c].astype(np.float64)
    lp = table.logp[:c]
    logn = k * lp
    x = float(spec.x)
    kind = spec.kind
    if kind == "psi":
        w = lp.copy()
        mag = lp
    elif kind == "loglog":
        lx = math.log(x)
        mag = 1.0 / (k * n)  # Lambda(n)/(n log n)
        w = mag * (np.log(x / n) / lx)
    elif kind in ("cesaro", "cesaro_twisted"):
        mag = lp / n
        w = mag * (1.0 - n / x)
    elif kind == "logweight_twisted":
        mag = 1.0 / (k * n)
        w = mag - 1.0 / (x * math.log(x))
    else:  # lambda_xy
        y = float(spec.y)
        mag = lp / n
        w = np.where(n <= x, mag, mag * (np.log(x * y / n) / math.log(y)))
    return w, mag, logn


def evaluate_sum(spec: WeightedSumSpec, table: MangoldtTable) -> Enclosure:
    """Re sum_n w(n) n^(-it) as an Enclosure with a rigorous rounding bound."""
    w, mag, logn = _weights(spec, table)
    t = float(spec.t)
    if t == 0.0:
        terms = w
        per_term = 16 * _U * mag
    else:
        terms = w * np.cos(t * logn)
        per_term = mag * (16 * _U + 4 * _U * abs(t) * logn)
    value = math.fsum(terms.tolist())
    err = float(np.sum(per_term)) * 1.01 + 2 * _U * abs(value)
    return Enclosure(value, up(err))


def _value(spec: WeightedSumSpec, table: MangoldtTable) -> float:
    return evaluate_sum(spec, table).value


def psi(x, table: MangoldtTable) -> float:
    """Chebyshev psi(x) = sum_{n<=x} Lambda(n)."""
    if x > table.limit:
        raise DomainError(f"x = {x} exceeds the sieve limit {table.limit}")
    return _value(WeightedSumSpec("psi", x), table)


def sum_loglog(x, table: MangoldtTable) -> float:
    """sum_{n<=x} Lambda(n)/(n log n) * log(x/n)/log x."""
    return _value(WeightedSumSpec("loglog", x), table)


def sum_cesaro(x, table: MangoldtTable) -> float:
    """sum_{n<=x} Lambda(n)/n * (1 - n/x)."""
    return _value(WeightedSumSpec("cesaro", x), table)


def sum_twisted(spec: WeightedSumSpec, table: MangoldtTable) -> float:
    """Real part of the twisted sum described by spec."""
    return _value(spec, table)


def lambda_xy_sum(x, y, table: MangoldtTable) -> float:
    """sum_{n<=xy} Lambda_{x,y}(n)/n with the Selberg weight."""
    return _value(WeightedSumSpec("lambda_xy", x, y), table)


# -- right-hand sides (polymorphic: floats, mpmath numbers or intervals) ---


def b_constant(like=0.0):
    """B = log(4 pi)/2 - 1 - gamma/2 = -sum_rho Re 1/rho."""
    pi = el.pi_like(like)
    return el.log(4 * pi) / 2 - 1 - el.euler_like(like) / 2


def log_zeta2(like=0.0):
    """log zeta(2) = log(pi^2/6)."""
    pi = el.pi_like(like)
    return el.log(pi * pi / 6)


def loglog_rhs(x):
    """log log x + gamma - 1 + gamma/log x + 2|B|/(sqrt(x) log^2 x)."""
    g = el.euler_like(x)
    lx = el.log(x)
    return el.log(lx) + g - 1 + g / lx - 2 * b_constant(x) / (el.sqrt(x) * lx * lx)


def cesaro_rhs(x):
    """log x - (1 + gamma) + log(2 pi)/x + 2|B|/sqrt(x) - 1/(6 x^3)."""
    g = el.euler_like(x)
    return el.log(x) - (1 + g) + el.log(2 * el.pi_like(x)) / x - 2 * b_constant(x) / el.sqrt(x) - 1 / (6 * x * x * x)


def logweight_rhs(x, table: MangoldtTable) -> float:
    """Lower bound for the twisted log-weight sum at x >= 81 (floating evaluation)."""
    if x < 81:
        raise DomainError("the log-weight lower bound needs x >= 81")
    lx = math.log(x)
    sx = math.sqrt(x)
    return -sum_loglog(x, table) - sum_cesaro(x, table) / lx + log_zeta2() - 0.249 / sx - 2 / (sx * lx)


def logweight_rhs_enclosure(x, table: MangoldtTable) -> Enclosure:
    """Same as logweight_rhs with a rigorous error bound."""
    lx = math.log(x)
    sx = math.sqrt(x)
    a = evaluate_sum(WeightedSumSpec("loglog", x), table)
    b = evaluate_sum(WeightedSumSpec("cesaro", x), table)
    rest = log_zeta2() - 0.249 / sx - 2 / (sx * lx)
    return (-a) - b.scale(1 / lx) + Enclosure(rest, 16 * _U * 4)


def c_xy(x, y):
    """(1/(x^3 - x) + 1/((xy)^3 - xy)) / log y."""
    xy = x * y
    return (1 / (x * x * x - x) + 1 / (xy * xy * xy - xy)) / el.log(y)


def lambda_xy_main(x, y):
    """log x - gamma + (log y)/2."""
    return el.log(x) - el.euler_like(x) + el.log(y) / 2


def lambda_xy_radius(x, y):
    """2|B|(sqrt(y) + 1)/(sqrt(xy) log y) + c_{x,y}/9."""
    return -2 * b_constant(x) * (el.sqrt(y) + 1) / (el.sqrt(x * y) * el.log(y)) + c_xy(x, y) / 9


# -- Q(x) and the p = 2 trigonometric polynomial ---------------------------


def _psi_interval(x, table: MangoldtTable, prec: int = DEFAULT_PREC) -> Interval:
    e = evaluate_sum(WeightedSumSpec("psi", x), table)
    return Interval(e.lo, e.hi, prec=prec)


def q_tail_bound(cut: int, psi_cut: Interval) -> Interval:
    """Upper bound for sum_{m>cut} Lambda(m)/(m^2 log m), cut >= 74.

    Integration by parts against psi together with the conditional bound
    psi(u) <= u + sqrt(u) log^2 u / (8 pi) for u >= 73.2 gives
    -psi(T)/(T^2 log T) + 2/(T log T) + ((4/3) log T + 14/9)/(8 pi T^(3/2)).
    """
    if cut < 74:
        raise DomainError("the tail bound needs a cut-off of at least 74")
    T = Interval(cut, prec=psi_cut.prec)
    lt = T.log()
    pi = Interval.pi(psi_cut.prec)
    bound = -psi_cut / (T * T * lt) + 2 / (T * lt) + (Interval(4) / 3 * lt + Interval(14) / 9) / (8 * pi * T * T.sqrt())
    return bound


def q_of_x(x, table: MangoldtTable, tail_limit: int | None = None) -> Enclosure:
    """Q(x) = sum_{m>sqrt x} Lambda(m)/(m^2 log m) + 2 sum_{m<=sqrt x} Lambda(m)/(x log x)."""
    if x < 81:
        raise DomainError("Q(x) is analysed for x >= 81")
    root = math.sqrt(x)
    cut = int(tail_limit) if tail_limit is not None else int(max(10**6, math.ceil(100 * root)))
    if cut > table.limit:
        raise DomainError(f"tail cut-off {cut} exceeds the sieve limit {table.limit}")
    lo_idx = table.count_upto(root)
    hi_idx = table.count_upto(cut)
    n = table.n[lo_idx:hi_idx].astype(np.float64)
    k = table.k[lo_idx:hi_idx].astype(np.float64)
    terms = 1.0 / (k * n * n)  # Lambda(m)/(m^2 log m) = 1/(k m^2)
    head = math.fsum(terms.tolist())
    head_err = 8 * _U * float(np.sum(terms)) + 2 * _U * head
    ps = evaluate_sum(WeightedSumSpec("psi", root), table)
    lx = math.log(x)
    second = 2 * ps.value / (x * lx)
    second_err = 2 * ps.err / (x * lx) + 8 * _U * second
    tail = q_tail_bound(cut, _psi_interval(cut, table))
    tail_hi = max(0.0, tail.hi_float)
    value = head + second + tail_hi / 2
    err = head_err + second_err + tail_hi / 2 + 4 * _U * value
    return Enclosure(value, up(err))


P2_ODD = (1, 3, 5)
P2_EVEN = (2, 4, 6)


def trig_poly_p2(theta):
    """The p = 2 trigonometric polynomial for 81 <= x <= 100.

    Odd j carry 1/(2^j log 2^j) - 1/(81 log 81) and even j carry
    -(1/(2^j log 2^j) - 1/(100 log 100)), each times (1 - cos j theta).
    Works on floats, mpmath numbers and intervals.
    """
    l2 = el.log(el.const("2", theta))
    c81 = 1 / (81 * el.log(el.const("81", theta)))
    c100 = 1 / (100 * el.log(el.const("100", theta)))
    total = 0
    for j in P2_ODD:
        total = total + (1 - el.cos(j * theta)) * (1 / (2**j * j * l2) - c81)
    for j in P2_EVEN:
        total = total - (1 - el.cos(j * theta)) * (1 / (2**j * j * l2) - c100)
    return total
