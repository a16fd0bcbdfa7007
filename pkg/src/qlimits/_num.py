"""Small numeric helpers: log2-space arithmetic and tolerant rounding.

Key-length and collision-search work scales involve factors like 2^n for
n up to a few thousand bits, far past the double-precision exponent range.
Everything here keeps such quantities as base-2 logarithms.
"""

from __future__ import annotations

import math

LN2 = math.log(2.0)

# Largest log2 that still exponentiates to a finite double.
_MAX_FINITE_LOG2 = 1023.0


def exp2(x: float) -> float:
    """2**x as a float, +inf when it overflows."""
    if x > _MAX_FINITE_LOG2 + 1:
        return math.inf
    try:
        return 2.0 ** x
    except OverflowError:
        return math.inf


def log2_add(a: float, b: float) -> float:
    """log2(2^a + 2^b), safe for any magnitudes."""
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(2.0 ** (lo - hi)) / LN2


def log2_xsq_plus_1(log2_x: float) -> float:
    """log2(x^2 + 1) given log2(x), without forming x^2."""
    t = 2.0 * log2_x
    if t > 60.0:
        # +1 is below double resolution relative to x^2
        return t + math.log1p(2.0 ** (-t)) / LN2
    return math.log2(2.0 ** t + 1.0)


def floor_tol(x: float, tol: float = 1e-9) -> int:
    """floor(x), snapping values within ``tol`` of an integer."""
    r = round(x)
    if abs(x - r) <= tol:
        return int(r)
    return math.floor(x)


def ceil_tol(x: float, tol: float = 1e-9) -> int:
    """ceil(x), snapping values within ``tol`` of an integer."""
    r = round(x)
    if abs(x - r) <= tol:
        return int(r)
    return math.ceil(x)


def sinc(x: float) -> float:
    """Unnormalized sinc: sin(x)/x, with the removable singularity filled in."""
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x
