"""Elementary functions that dispatch on the argument type.

Formulas written once against these helpers evaluate pointwise on floats
or mpmath numbers and as interval extensions on :class:`Interval`
arguments, so a certified check and its floating twin share one source.
"""

from __future__ import annotations

import cmath
import math

import mpmath

from anzb.numerics.interval import Interval


def _is_mp(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def _dispatch(name: str, real_fn, complex_fn):
    def fn(x):
        if isinstance(x, Interval) or hasattr(x, "lift_constant"):
            return getattr(x, name)()
        if _is_mp(x):
            return getattr(mpmath, name)(x)
        if isinstance(x, complex):
            return complex_fn(x)
        return real_fn(x)

    fn.__name__ = name
    fn.__doc__ = f"{name} on floats, complex numbers, mpmath numbers and intervals."
    return fn


exp = _dispatch("exp", math.exp, cmath.exp)
log = _dispatch("log", math.log, cmath.log)
sqrt = _dispatch("sqrt", math.sqrt, cmath.sqrt)
sin = _dispatch("sin", math.sin, cmath.sin)
cos = _dispatch("cos", math.cos, cmath.cos)
sinh = _dispatch("sinh", math.sinh, cmath.sinh)
cosh = _dispatch("cosh", math.cosh, cmath.cosh)
tanh = _dispatch("tanh", math.tanh, cmath.tanh)


def pi_like(x):
    """pi in the number system of x."""
    if hasattr(x, "lift_constant"):
        return x.lift_constant(pi_like(x.base()))
    if isinstance(x, Interval):
        return Interval.pi(x.prec)
    if _is_mp(x):
        return +mpmath.pi
    return math.pi


def euler_like(x):
    """Euler's constant in the number system of x."""
    if hasattr(x, "lift_constant"):
        return x.lift_constant(euler_like(x.base()))
    if isinstance(x, Interval):
        return Interval.euler(x.prec)
    if _is_mp(x):
        return +mpmath.euler
    return 0.5772156649015329


def const(text: str, like):
    """A decimal constant in the number system of ``like``.

    For intervals the decimal is enclosed outward, so constants such as
    8.6544 enter certified evaluations exactly.
    """
    if hasattr(like, "lift_constant"):
        return like.lift_constant(const(text, like.base()))
    if isinstance(like, Interval):
        return Interval(text, text, prec=like.prec)
    if _is_mp(like):
        return mpmath.mpf(text)
    return float(text)
