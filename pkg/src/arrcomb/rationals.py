"""Exact rational scalars and small vector helpers.

All coordinates, offsets and polynomial coefficients in this package are
`fractions.Fraction` values; nothing in the core ever touches floats.
Rationals are serialized as the strings "p/q" or "p".
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce ints, strings like "p/q", or Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def rat_str(q: Fraction) -> str:
    """Serialize a rational as "p/q" or "p"."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vec:
    return tuple(rat(v) for v in values)


def vec_str(v: Sequence[Fraction]) -> list[str]:
    return [rat_str(q) for q in v]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Sequence[Fraction]) -> Vec:
    return tuple(c * x for x in a)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def is_zero_vec(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def primitive_scaled(row: Sequence[Fraction]) -> tuple[Vec, Fraction]:
    """Scale a nonzero rational row to primitive integers.

    Returns (scaled_row, factor) where scaled_row = factor * row, factor > 0,
    the entries of scaled_row are coprime integers.  Does not flip signs.
    """
    denom_lcm = 1
    for q in row:
        denom_lcm = denom_lcm * q.denominator // gcd(denom_lcm, q.denominator)
    ints = [q.numerator * (denom_lcm // q.denominator) for q in row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("cannot scale the zero row")
    factor = Fraction(denom_lcm, g)
    return tuple(Fraction(v // g) for v in ints), factor
