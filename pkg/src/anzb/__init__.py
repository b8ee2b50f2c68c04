"""Certified numerics for explicit bounds on the Riemann zeta-function at Re s = 1."""

__version__ = "0.1.0"
