"""Certified one-dimensional global optimisation and sign verification.

All routines take an *interval extension* ``f``: a callable mapping an
:class:`Interval` to an :class:`Interval` enclosing the image.  Point
evaluations are interval evaluations on degenerate boxes, so incumbents
and witnesses are rigorous too.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable

import mpmath

from anzb.errors import DomainError, PrecisionExhausted
from anzb.numerics.interval import DEFAULT_PREC, Interval

IntervalFn = Callable[[Interval], Interval]

MAX_PREC = 1024


@dataclass(frozen=True)
class CertificateRequest:
    """Parameters of a certified optimisation run."""

    domain: Interval
    tolerance: float
    max_depth: int = 60
    max_precision: int = MAX_PREC
    precision: int = DEFAULT_PREC
    max_boxes: int = 200_000

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if self.max_depth <= 0:
            raise DomainError("max_depth must be positive")
        if not self.domain.is_finite():
            raise DomainError("optimisation domain must be bounded")


@dataclass(frozen=True)
class OptimumCertificate:
    """Outcome of a certified minimisation (or maximisation)."""

    enclosure: Interval
    argbox: Interval
    boxes: int
    precision: int


class Status(str, enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a sign or monotonicity verification."""

    status: Status
    floor: mpmath.mpf | None = None
    witness: tuple | None = None
    boxes: int = 0
    precision: int = DEFAULT_PREC
    notes: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.status is Status.VERIFIED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED


def _safe_eval(f: IntervalFn, box: Interval) -> Interval | None:
    try:
        return f(box)
    except (DomainError, ZeroDivisionError):
        return None


def _point(x, prec: int) -> Interval:
    return Interval(x, x, prec=prec)


def _too_narrow(box: Interval) -> bool:
    a, b = box.split()
    return a.is_point() or b.is_point()


def _bnb_min(f: IntervalFn, domain: Interval, req: CertificateRequest):
    """Branch and bound at the precision of ``domain``; None if the run stalls."""
    prec = domain.prec
    inf = mpmath.inf
    upper, argbox = inf, domain

    def probe(box: Interval):
        nonlocal upper, argbox
        val = _safe_eval(f, _point(box.mid(), prec))
        if val is not None and val.hi < upper:
            upper, argbox = val.hi, box

    for x in (domain.lo, domain.hi):
        val = _safe_eval(f, _point(x, prec))
        if val is not None and val.hi < upper:
            upper, argbox = val.hi, _point(x, prec)
    probe(domain)

    counter = itertools.count()
    whole = _safe_eval(f, domain)
    heap = [(whole.lo if whole is not None else -inf, next(counter), domain, 0)]
    stuck_lb = inf
    boxes = 1
    while heap:
        lb, _, box, depth = heapq.heappop(heap)
        lower = min(lb, stuck_lb)
        if upper - lower <= req.tolerance:
            return OptimumCertificate(Interval(lower, upper, prec=prec), argbox, boxes, prec)
        if lb > upper:
            continue
        if depth >= req.max_depth or _too_narrow(box):
            stuck_lb = min(stuck_lb, lb)
            continue
        if boxes >= req.max_boxes:
            return None
        for child in box.split():
            boxes += 1
            val = _safe_eval(f, child)
            clb = val.lo if val is not None else -inf
            if clb > upper:
                continue
            probe(child)
            heapq.heappush(heap, (clb, next(counter), child, depth + 1))
    if stuck_lb <= upper and upper - stuck_lb <= req.tolerance:
        return OptimumCertificate(Interval(stuck_lb, upper, prec=prec), argbox, boxes, prec)
    return None


def _precisions(start: int, stop: int):
    p = start
    while p <= stop:
        yield p
        p *= 2
    if p // 2 < stop:
        yield stop


def minimize(f: IntervalFn, req: CertificateRequest) -> OptimumCertificate:
    """Certified global minimum of f on req.domain, escalating precision x2."""
    tried = []
    start = min(req.precision, req.max_precision)
    for prec in _precisions(start, req.max_precision):
        cert = _bnb_min(f, req.domain.with_prec(prec), req)
        if cert is not None:
            return cert
        tried.append(prec)
    raise PrecisionExhausted(
        f"tolerance {req.tolerance} not reached on {req.domain}",
        {"precisions": tried, "max_depth": req.max_depth, "max_boxes": req.max_boxes},
    )


def certified_min(f: IntervalFn, req: CertificateRequest) -> Interval:
    """Interval of width <= tolerance enclosing min f over the domain."""
    return minimize(f, req).enclosure


def maximize(f: IntervalFn, req: CertificateRequest) -> OptimumCertificate:
    cert = minimize(lambda x: -f(x), req)
    return OptimumCertificate(-cert.enclosure, cert.argbox, cert.boxes, cert.precision)


def certified_sup(f: IntervalFn, req: CertificateRequest) -> Interval:
    """Interval of width <= tolerance enclosing sup f over the domain."""
    return maximize(f, req).enclosure


def _nonneg_pass(f: IntervalFn, boxes: list, floor, budget: int, max_depth: int, prec: int):
    """One subdivision pass; returns (status, floor_seen, witness, used, stuck)."""
    stack = [(b.with_prec(prec), d) for b, d in reversed(boxes)]
    seen = mpmath.inf
    used = 0
    stuck = []
    while stack:
        box, depth = stack.pop()
        used += 1
        val = _safe_eval(f, box)
        if val is not None and val.lo >= floor:
            seen = min(seen, val.lo)
            continue
        mid = _point(box.mid(), prec)
        pv = _safe_eval(f, mid)
        if pv is not None and pv.hi < floor:
            return Status.REFUTED, seen, (box.mid(), pv), used, stuck
        if depth >= max_depth or _too_narrow(box):
            stuck.append((box, depth))
            continue
        if used >= budget:
            stuck.append((box, depth))
            stuck.extend(stack[::-1])
            return Status.INCONCLUSIVE, seen, None, used, stuck
        left, right = box.split()
        stack.append((right, depth + 1))
        stack.append((left, depth + 1))
    return (Status.VERIFIED if not stuck else Status.INCONCLUSIVE), seen, None, used, stuck


def verify_nonneg(
    f: IntervalFn,
    domain: Interval,
    budget: int = 100_000,
    floor=0,
    max_depth: int = 80,
    precision: int = DEFAULT_PREC,
    max_precision: int = MAX_PREC,
) -> Verdict:
    """Certify f >= floor on domain by interval subdivision.

    ``verified`` carries the smallest certified lower bound seen (the
    achieved floor).  ``refuted`` carries a point whose rigorous image lies
    below ``floor``.  Boxes that stall at the precision limit are retried
    at doubled precision.
    """
    floor = mpmath.mpf(floor) if not isinstance(floor, str) else mpmath.mpf(floor)
    pending = [(domain, 0)]
    seen = mpmath.inf
    used_total = 0
    prec = min(precision, max_precision)
    for prec in _precisions(prec, max_precision):
        status, s, witness, used, stuck = _nonneg_pass(
            f, [(b, 0) for b, _ in pending], floor, budget - used_total, max_depth, prec
        )
        seen = min(seen, s)
        used_total += used
        if status is Status.REFUTED:
            return Verdict(Status.REFUTED, seen, witness, used_total, prec)
        if status is Status.VERIFIED:
            return Verdict(Status.VERIFIED, seen, None, used_total, prec)
        if used_total >= budget:
            return Verdict(Status.INCONCLUSIVE, seen, None, used_total, prec, ["budget exhausted"])
        pending = stuck
    return Verdict(Status.INCONCLUSIVE, seen, None, used_total, prec, ["precision exhausted"])


def _witness_pair(f: IntervalFn, x0, direction: str, width, prec: int):
    """Two points around x0 whose rigorous images violate the direction."""
    h = mpmath.mpf(width) / 4
    for _ in range(60):
        a, b = _point(x0 - h, prec), _point(x0 + h, prec)
        fa, fb = _safe_eval(f, a), _safe_eval(f, b)
        if fa is not None and fb is not None:
            if direction == "decreasing" and fa.certainly_lt(fb):
                return (x0 - h, x0 + h)
            if direction == "increasing" and fa.certainly_gt(fb):
                return (x0 - h, x0 + h)
        h /= 4
    return None


def verify_monotone(
    f: IntervalFn,
    domain: Interval,
    direction: str,
    budget: int = 100_000,
    derivative: IntervalFn | None = None,
    tail: bool | None = None,
    precision: int = DEFAULT_PREC,
    max_precision: int = MAX_PREC,
) -> Verdict:
    """Certify that f is monotone on domain.

    A proof needs an interval extension of the derivative: the function is
    decreasing when the derivative is certified <= 0 on every box.  Images
    of f alone cannot prove monotonicity, because neighbouring boxes always
    have overlapping images; without ``derivative`` the routine only
    searches a grid for a refutation and otherwise reports inconclusive.

    For unbounded domains pass the finite certification window as
    ``domain`` and set ``tail`` to the outcome of the caller's asymptotic
    argument; the verdict is then verified only if both parts are.
    """
    if direction not in ("increasing", "decreasing"):
        raise DomainError(f"unknown direction {direction!r}")
    if not domain.is_finite():
        raise DomainError("pass a finite window and a tail flag for unbounded domains")
    if derivative is not None:
        g = derivative if direction == "increasing" else (lambda x: -derivative(x))
        v = verify_nonneg(g, domain, budget, 0, precision=precision, max_precision=max_precision)
        if v.refuted:
            x0 = v.witness[0]
            pair = _witness_pair(f, x0, direction, domain.width() / 2 ** 20, v.precision)
            return Verdict(Status.REFUTED, v.floor, pair or (x0, x0), v.boxes, v.precision)
        if v.verified and tail is False:
            return Verdict(Status.INCONCLUSIVE, v.floor, None, v.boxes, v.precision, ["tail argument missing"])
        return v
    # grid search for a counterexample only
    n = max(2, min(budget, 2000))
    prec = precision
    xs = [domain.lo + (domain.hi - domain.lo) * mpmath.mpf(i) / (n - 1) for i in range(n)]
    vals = [_safe_eval(f, _point(x, prec)) for x in xs]
    for (xa, fa), (xb, fb) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
        if fa is None or fb is None:
            continue
        if direction == "decreasing" and fa.certainly_lt(fb):
            return Verdict(Status.REFUTED, None, (xa, xb), n, prec)
        if direction == "increasing" and fa.certainly_gt(fb):
            return Verdict(Status.REFUTED, None, (xa, xb), n, prec)
    return Verdict(Status.INCONCLUSIVE, None, None, n, prec, ["no derivative extension supplied"])
