"""Midpoint-radius enclosures for fast (non-interval) evaluation paths."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from anzb.errors import DomainError
from anzb.numerics.interval import DEFAULT_PREC, Interval

_EPS = 2.0 ** -52


def up(x: float) -> float:
    """Round a nonnegative float error term up by one ulp."""
    return math.nextafter(float(x), math.inf)


def _slack(v) -> float:
    """Rounding slack for storing v at its native precision."""
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return float(abs(v)) * 2.0 ** (1 - mpmath.mp.prec)
    return 2.0 * _EPS * abs(v)


@dataclass(frozen=True)
class Enclosure:
    """A value together with a rigorous bound on its absolute error.

    ``value`` may be real or complex; for complex values ``err`` bounds the
    modulus of the deviation, so it also bounds the deviation of the real and
    imaginary parts separately.
    """

    value: object
    err: float = 0.0

    def __post_init__(self):
        if not self.err >= 0:
            raise DomainError(f"error bound must be nonnegative, got {self.err}")

    # -- projections --------------------------------------------------
    @property
    def real(self) -> "Enclosure":
        return Enclosure(_re(self.value), self.err)

    @property
    def imag(self) -> "Enclosure":
        return Enclosure(_im(self.value), self.err)

    def conjugate(self) -> "Enclosure":
        v = self.value
        return Enclosure(v.conjugate() if hasattr(v, "conjugate") else v, self.err)

    def abs(self) -> "Enclosure":
        a = abs(self.value)
        return Enclosure(a, up(self.err + _slack(a)))

    @property
    def lo(self) -> float:
        return math.nextafter(float(_re(self.value)) - self.err, -math.inf)

    @property
    def hi(self) -> float:
        return math.nextafter(float(_re(self.value)) + self.err, math.inf)

    def contains(self, x, slack: float = 0.0) -> bool:
        return abs(complex(self.value) - complex(x)) <= self.err + slack

    def interval(self, prec: int = DEFAULT_PREC) -> Interval:
        """Real enclosure as an outward-rounded interval."""
        v = _re(self.value)
        v = v if isinstance(v, mpmath.mpf) else mpmath.mpf(float(v))
        c = Interval(v, prec=prec)
        e = Interval(mpmath.mpf(float(self.err)), prec=prec)
        return Interval((c - e)._a, (c + e)._b, prec=prec)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "Enclosure":
        o = other if isinstance(other, Enclosure) else Enclosure(other)
        v = self.value + o.value
        return Enclosure(v, up(self.err + o.err + _slack(v)))

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.value, self.err)

    def __sub__(self, other) -> "Enclosure":
        o = other if isinstance(other, Enclosure) else Enclosure(other)
        return self + (-o)

    def __rsub__(self, other) -> "Enclosure":
        return (-self) + other

    def scale(self, c) -> "Enclosure":
        """Multiply by an exactly known scalar."""
        v = self.value * c
        return Enclosure(v, up(self.err * abs(c) + _slack(v)))

    def __mul__(self, other) -> "Enclosure":
        if not isinstance(other, Enclosure):
            return self.scale(other)
        v = self.value * other.value
        err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return Enclosure(v, up(float(err) + _slack(v)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        from anzb.errors import DivisionByNearZero

        o = other if isinstance(other, Enclosure) else Enclosure(other)
        denom = abs(o.value)
        if not denom > o.err:
            raise DivisionByNearZero(f"denominator enclosure contains zero (|value| {denom} <= err {o.err})")
        q = self.value / o.value
        err = (self.err + abs(q) * o.err) / (denom - o.err)
        return Enclosure(q, up(float(err) + _slack(q)))

    def __repr__(self) -> str:
        return f"Enclosure({self.value!r} +/- {self.err:.3g})"


def _re(v):
    return v.real if isinstance(v, (complex, mpmath.mpc)) else v


def _im(v):
    return v.imag if isinstance(v, (complex, mpmath.mpc)) else 0.0
