"""Forward-mode derivatives over any number system, intervals included.

``Dual(v, d)`` carries a value and a first derivative.  Nesting duals gives
higher derivatives, so a formula written once against
:mod:`anzb.numerics.elementary` yields certified interval enclosures of its
derivatives, which is what monotonicity and convexity proofs need.
"""

from __future__ import annotations

from numbers import Integral

from anzb.numerics import elementary as el


class Dual:
    """Value and derivative of a function of one variable."""

    __slots__ = ("v", "d")

    def __init__(self, v, d=0):
        self.v = v
        self.d = d

    @classmethod
    def variable(cls, x) -> "Dual":
        return cls(x, 1 + 0 * x)

    def base(self):
        """A representative of the underlying number system."""
        return self.v.base() if isinstance(self.v, Dual) else self.v

    def lift_constant(self, c) -> "Dual":
        if isinstance(self.v, Dual):
            return Dual(self.v.lift_constant(c), self.v.lift_constant(0 * c))
        return Dual(c, 0 * c)

    def _lift(self, other) -> "Dual":
        return other if isinstance(other, Dual) else Dual(other, 0)

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.v + o.v, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.v - o.v, self.d - o.d)

    def __rsub__(self, other):
        return self._lift(other).__sub__(self)

    def __neg__(self):
        return Dual(-self.v, -self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.v * o.v, self.d * o.v + self.v * o.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        q = self.v / o.v
        return Dual(q, (self.d - q * o.d) / o.v)

    def __rtruediv__(self, other):
        return self._lift(other).__truediv__(self)

    def __pow__(self, n):
        if not isinstance(n, Integral):
            return el.exp(n * el.log(self))
        if n == 0:
            return Dual(1 + 0 * self.v, 0 * self.d)
        p = self.v ** (n - 1)
        return Dual(p * self.v, n * p * self.d)

    def exp(self):
        e = el.exp(self.v)
        return Dual(e, e * self.d)

    def log(self):
        return Dual(el.log(self.v), self.d / self.v)

    def sqrt(self):
        r = el.sqrt(self.v)
        return Dual(r, self.d / (2 * r))

    def sin(self):
        return Dual(el.sin(self.v), el.cos(self.v) * self.d)

    def cos(self):
        return Dual(el.cos(self.v), -el.sin(self.v) * self.d)

    def sinh(self):
        return Dual(el.sinh(self.v), el.cosh(self.v) * self.d)

    def cosh(self):
        return Dual(el.cosh(self.v), el.sinh(self.v) * self.d)

    def tanh(self):
        th = el.tanh(self.v)
        return Dual(th, (1 - th * th) * self.d)

    def __repr__(self) -> str:
        return f"Dual({self.v!r}, {self.d!r})"


def derivative(f, order: int = 1):
    """Interval (or float) extension of the order-th derivative of f."""
    if order < 1:
        raise ValueError("order must be positive")

    def df(x):
        seed = x
        for _ in range(order):
            seed = Dual.variable(seed)
        out = f(seed)
        for _ in range(order):
            out = out.d if isinstance(out, Dual) else 0 * x
        return out

    return df


def centered(f):
    """Interval extension of f sharpened by the mean-value form.

    Returns f(X) intersected with f(m) + f'(X)(X - m), m the midpoint.  The
    mean-value form shrinks quadratically with the box, which stops the
    box clustering that plain extensions cause near a smooth optimum.
    """
    df = derivative(f)

    def fc(x):
        fx = f(x)
        if x.is_point():
            return fx
        m = type(x)(x.mid(), prec=x.prec)
        try:
            mv = f(m) + df(x) * (x - m)
        except (ArithmeticError, ValueError, TypeError):
            return fx
        return fx.intersect(mv)

    return fc
