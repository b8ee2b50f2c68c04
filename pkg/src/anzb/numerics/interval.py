"""Outward-rounded real intervals with explicit precision.

Endpoints are raw mpmath floats; every operation delegates to the
directed-rounding primitives of ``mpmath.libmp.libmpi`` at the
interval's own precision, so no ambient precision state is consulted.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

import mpmath
from mpmath.libmp import (
    finf,
    fnan,
    fninf,
    from_float,
    from_int,
    from_rational,
    from_str,
    fzero,
    libmpi,
    mpf_add,
    mpf_euler,
    mpf_le,
    mpf_lt,
    mpf_pos,
    mpf_neg,
    mpf_shift,
    mpf_sub,
    round_ceiling,
    round_floor,
    to_float,
)

from anzb.errors import DomainError

DEFAULT_PREC = 128
MIN_PREC = 53

_F, _C = round_floor, round_ceiling


def _coerce_endpoint(x, prec: int, rnd: str):
    """Convert a Python/mpmath number to a raw mpf, rounding in direction rnd."""
    if isinstance(x, tuple):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, Integral):
        return from_int(int(x), prec, rnd)
    if isinstance(x, float):
        if x != x:
            raise DomainError("NaN endpoint")
        return from_float(x)
    if isinstance(x, Fraction):
        return from_rational(x.numerator, x.denominator, prec, rnd)
    if isinstance(x, mpmath.mpf):
        return x._mpf_
    if isinstance(x, str):
        return from_str(x, prec, rnd)
    raise TypeError(f"cannot build an interval endpoint from {type(x).__name__}")


class Interval:
    """Closed interval [lo, hi] of reals at a fixed working precision."""

    __slots__ = ("_a", "_b", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PREC):
        if prec < MIN_PREC:
            raise DomainError(f"precision {prec} below minimum {MIN_PREC}")
        if hi is None:
            hi = lo
        a = _coerce_endpoint(lo, prec, _F)
        b = _coerce_endpoint(hi, prec, _C)
        if a == fnan or b == fnan:
            raise DomainError("NaN endpoint")
        if mpf_lt(b, a):
            raise DomainError(f"empty interval [{mpmath.mpf(a)}, {mpmath.mpf(b)}]")
        self._a = a
        self._b = b
        self.prec = prec

    @classmethod
    def _raw(cls, ab, prec: int) -> "Interval":
        obj = cls.__new__(cls)
        obj._a, obj._b = ab
        obj.prec = prec
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "Interval":
        return cls._raw(libmpi.mpi_pi(prec), prec)

    @classmethod
    def euler(cls, prec: int = DEFAULT_PREC) -> "Interval":
        return cls._raw((mpf_euler(prec, _F), mpf_euler(prec, _C)), prec)

    @classmethod
    def log2(cls, prec: int = DEFAULT_PREC) -> "Interval":
        return cls(2, prec=prec).log()

    @classmethod
    def hull_of(cls, items) -> "Interval":
        items = list(items)
        out = items[0]
        for it in items[1:]:
            out = out.hull(it)
        return out

    # -- accessors ----------------------------------------------------
    @property
    def lo(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._a)

    @property
    def hi(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._b)

    @property
    def lo_float(self) -> float:
        """Lower endpoint rounded down to a double."""
        return to_float(self._a, rnd=_F)

    @property
    def hi_float(self) -> float:
        """Upper endpoint rounded up to a double."""
        return to_float(self._b, rnd=_C)

    def mid(self) -> mpmath.mpf:
        if self._a in (fninf, finf) or self._b in (fninf, finf):
            raise DomainError("midpoint of an unbounded interval")
        return mpmath.mpf(mpf_shift(mpf_add(self._a, self._b, self.prec + 2), -1))

    def width(self) -> mpmath.mpf:
        return mpmath.mpf(mpf_sub(self._b, self._a, self.prec, _C))

    def is_point(self) -> bool:
        return self._a == self._b

    def is_finite(self) -> bool:
        return self._a not in (fninf, finf, fnan) and self._b not in (fninf, finf, fnan)

    def with_prec(self, prec: int) -> "Interval":
        """Same endpoints at a different working precision (endpoints widened if needed)."""
        a = mpf_pos(self._a, prec, _F) if self.is_finite() else self._a
        b = mpf_pos(self._b, prec, _C) if self.is_finite() else self._b
        return Interval._raw((a, b), prec)

    def split(self) -> tuple["Interval", "Interval"]:
        m = mpf_shift(mpf_add(self._a, self._b, self.prec + 2), -1)
        return Interval._raw((self._a, m), self.prec), Interval._raw((m, self._b), self.prec)

    # -- set relations ------------------------------------------------
    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return mpf_le(self._a, x._a) and mpf_le(x._b, self._b)
        v = _coerce_endpoint(x, self.prec + 64, _F)
        w = _coerce_endpoint(x, self.prec + 64, _C)
        return mpf_le(self._a, v) and mpf_le(w, self._b)

    __contains__ = contains

    def overlaps(self, other) -> bool:
        o = self._lift(other)
        return mpf_le(self._a, o._b) and mpf_le(o._a, self._b)

    def hull(self, other) -> "Interval":
        o = self._lift(other)
        a = self._a if mpf_le(self._a, o._a) else o._a
        b = self._b if mpf_le(o._b, self._b) else o._b
        return Interval._raw((a, b), max(self.prec, o.prec))

    def intersect(self, other) -> "Interval":
        o = self._lift(other)
        a = o._a if mpf_le(self._a, o._a) else self._a
        b = self._b if mpf_le(self._b, o._b) else o._b
        if mpf_lt(b, a):
            raise DomainError("empty intersection")
        return Interval._raw((a, b), max(self.prec, o.prec))

    # certain comparisons: true only if every pair of points satisfies them
    def certainly_lt(self, other) -> bool:
        return mpf_lt(self._b, self._lift(other)._a)

    def certainly_le(self, other) -> bool:
        return mpf_le(self._b, self._lift(other)._a)

    def certainly_gt(self, other) -> bool:
        return mpf_lt(self._lift(other)._b, self._a)

    def certainly_ge(self, other) -> bool:
        return mpf_le(self._lift(other)._b, self._a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self._a == other._a and self._b == other._b

    def __hash__(self) -> int:
        return hash((self._a, self._b))

    # -- arithmetic ---------------------------------------------------
    def _lift(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval(other, prec=self.prec)

    def _binary(self, other, fn) -> "Interval":
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        p = max(self.prec, o.prec)
        return Interval._raw(fn((self._a, self._b), (o._a, o._b), p), p)

    def __add__(self, other):
        return self._binary(other, libmpi.mpi_add)

    def __radd__(self, other):
        try:
            return self._lift(other).__add__(self)
        except TypeError:
            return NotImplemented

    def __sub__(self, other):
        return self._binary(other, libmpi.mpi_sub)

    def __rsub__(self, other):
        try:
            return self._lift(other).__sub__(self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        return self._binary(other, libmpi.mpi_mul)

    def __rmul__(self, other):
        try:
            return self._lift(other).__mul__(self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if mpf_le(o._a, fzero) and mpf_le(fzero, o._b):
            raise DomainError(f"division by an interval containing zero: {o!r}")
        return self._binary(o, libmpi.mpi_div)

    def __rtruediv__(self, other):
        try:
            return self._lift(other).__truediv__(self)
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return Interval._raw((mpf_neg(self._b), mpf_neg(self._a)), self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        return Interval._raw(libmpi.mpi_abs((self._a, self._b), self.prec), self.prec)

    def __pow__(self, n):
        if isinstance(n, Integral):
            if n < 0 and self.contains(0):
                raise DomainError("negative power of an interval containing zero")
            return Interval._raw(libmpi.mpi_pow_int((self._a, self._b), int(n), self.prec), self.prec)
        if isinstance(n, Fraction) and n == Fraction(1, 2):
            return self.sqrt()
        return (self._lift(n) * self.log()).exp()

    def square(self) -> "Interval":
        return self ** 2

    # -- elementary functions -----------------------------------------
    def exp(self) -> "Interval":
        return Interval._raw(libmpi.mpi_exp((self._a, self._b), self.prec), self.prec)

    def log(self) -> "Interval":
        if mpf_le(self._a, fzero):
            raise DomainError(f"log of an interval reaching nonpositive values: {self!r}")
        return Interval._raw(libmpi.mpi_log((self._a, self._b), self.prec), self.prec)

    def sqrt(self) -> "Interval":
        if mpf_lt(self._a, fzero):
            raise DomainError(f"sqrt of an interval reaching negative values: {self!r}")
        return Interval._raw(libmpi.mpi_sqrt((self._a, self._b), self.prec), self.prec)

    def cos(self) -> "Interval":
        c, _ = libmpi.mpi_cos_sin((self._a, self._b), self.prec)
        return Interval._raw(c, self.prec)

    def sin(self) -> "Interval":
        _, s = libmpi.mpi_cos_sin((self._a, self._b), self.prec)
        return Interval._raw(s, self.prec)

    def cosh(self) -> "Interval":
        c, _ = libmpi.mpi_cosh_sinh((self._a, self._b), self.prec)
        return Interval._raw(c, self.prec)

    def sinh(self) -> "Interval":
        _, s = libmpi.mpi_cosh_sinh((self._a, self._b), self.prec)
        return Interval._raw(s, self.prec)

    def tanh(self) -> "Interval":
        # tanh is increasing: enclose each endpoint image and keep the outer bounds
        def at(x):
            e = Interval._raw((x, x), self.prec).__mul__(2).exp()
            return 1 - 2 / (e + 1)

        return Interval._raw((at(self._a)._a, at(self._b)._b), self.prec)

    def atan(self) -> "Interval":
        return Interval._raw(libmpi.mpi_atan((self._a, self._b), self.prec), self.prec)

    # -- display ------------------------------------------------------
    def __repr__(self) -> str:
        return f"Interval({mpmath.nstr(self.lo, 17)}, {mpmath.nstr(self.hi, 17)}, prec={self.prec})"

    def __str__(self) -> str:
        return f"[{mpmath.nstr(self.lo, 12)}, {mpmath.nstr(self.hi, 12)}]"


def iv(x, prec: int = DEFAULT_PREC) -> Interval:
    """Interval enclosure of a number; decimal strings are enclosed outward."""
    if isinstance(x, Interval):
        return x
    return Interval(x, x, prec=prec)

