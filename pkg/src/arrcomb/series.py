"""Stirling numbers, binomial-coefficient polynomials and truncated EGF algebra.

A TruncatedSeries holds polynomials c_0..c_N (in x and t) representing
sum c_n y^n / n!.  Products are exponential: the y^n/n! coefficient of a
product is the binomial convolution of the factors' coefficients.  The
formal power (1+u)^e, for a polynomial exponent e, is the binomial series
sum C(e,k) u^k, which terminates at the truncation order whenever u has no
constant term.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .faces import FaceCountTable
from .poset import POLY_ONE, POLY_T, BivariatePolynomial
from .rationals import ONE, rat


@lru_cache(maxsize=None)
def _stirling2(n: int, l: int) -> int:
    if l > n or l < 0:
        return 0
    if n == 0:
        return 1
    if l == 0:
        return 0
    return _stirling2(n - 1, l - 1) + l * _stirling2(n - 1, l)


def stirling2(n: int, l: int) -> int:
    """Stirling number of the second kind via S(n,l) = S(n-1,l-1) + l S(n-1,l)."""
    if l < 0 or n < 0 or l > n:
        raise ValueError(f"stirling2 undefined for n={n}, l={l}")
    return _stirling2(n, l)


def stirling_table(max_n: int) -> dict[tuple[int, int], int]:
    return {(n, l): stirling2(n, l) for n in range(max_n + 1) for l in range(n + 1)}


def falling_factorial(base: BivariatePolynomial, k: int) -> BivariatePolynomial:
    """base (base - 1) ... (base - k + 1); the empty product is 1."""
    out = POLY_ONE
    for i in range(k):
        out = out * (base - BivariatePolynomial.constant(i))
    return out


def binom_poly(l: int, shift: str = "none") -> BivariatePolynomial:
    """C(t, l), or with shift="half" the polynomial C((t-1)/2, l)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    if shift == "none":
        base = POLY_T
    elif shift == "half":
        base = (POLY_T - POLY_ONE).scale(Fraction(1, 2))
    else:
        raise ValueError(f"unknown shift {shift!r}")
    return falling_factorial(base, l).scale(Fraction(1, factorial(l)))


def binomial_of(exponent: BivariatePolynomial, k: int) -> BivariatePolynomial:
    """C(e, k) for a polynomial exponent e."""
    return falling_factorial(exponent, k).scale(Fraction(1, factorial(k)))


class TruncatedSeries:
    """EGF truncated at order N with BivariatePolynomial coefficients."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Sequence[BivariatePolynomial]):
        if N < 0:
            raise ValueError("truncation order must be >= 0")
        if len(coeffs) != N + 1:
            raise ValueError("need exactly N+1 coefficients")
        self.N = N
        self.coeffs = tuple(coeffs)

    @staticmethod
    def zero(N: int) -> "TruncatedSeries":
        return TruncatedSeries(N, [BivariatePolynomial()] * (N + 1))

    @staticmethod
    def one(N: int) -> "TruncatedSeries":
        return TruncatedSeries(N, [POLY_ONE] + [BivariatePolynomial()] * N)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.N == other.N and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def _check(self, other: "TruncatedSeries") -> None:
        if self.N != other.N:
            raise ValueError("mismatched truncation orders")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.N, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.N, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.N, [-a for a in self.coeffs])

    def scale(self, c) -> "TruncatedSeries":
        c = rat(c)
        return TruncatedSeries(self.N, [a.scale(c) for a in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """EGF (binomial-convolution) product."""
        self._check(other)
        out = []
        for n in range(self.N + 1):
            acc = BivariatePolynomial()
            for k in range(n + 1):
                a = self.coeffs[k]
                b = other.coeffs[n - k]
                if a and b:
                    acc = acc + (a * b).scale(Fraction(comb(n, k)))
            out.append(acc)
        return TruncatedSeries(self.N, out)

    def power(self, k: int) -> "TruncatedSeries":
        if k < 0:
            raise ValueError("negative powers are not defined here")
        out = TruncatedSeries.one(self.N)
        for _ in range(k):
            out = out * self
        return out

    def negate_args(self) -> "TruncatedSeries":
        """Substitute (x, y) -> (-x, -y): c_n(x) becomes (-1)^n c_n(-x)."""
        out = []
        for n, c in enumerate(self.coeffs):
            flipped = c.flip_x_sign()
            out.append(flipped if n % 2 == 0 else -flipped)
        return TruncatedSeries(self.N, out)

    def substitute_x(self, x) -> "TruncatedSeries":
        return TruncatedSeries(self.N, [c.substitute(x=x) for c in self.coeffs])

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(data: dict) -> "TruncatedSeries":
        return TruncatedSeries(
            data["N"], [BivariatePolynomial.from_json(c) for c in data["coeffs"]]
        )

    def __repr__(self):
        parts = [f"({c!r}) y^{n}/{n}!" for n, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


def egf_truncated(tables: Sequence[FaceCountTable], l: int, N: int | None = None) -> TruncatedSeries:
    """F_l as a truncated series from count tables for n = 1..N.

    Coefficient of y^n/n! is sum over d of f(d,l) x^(n-d).
    """
    if N is None:
        N = len(tables)
    if len(tables) < N:
        raise ValueError(f"need tables for n = 1..{N}")
    if l < 0:
        raise ValueError("level must be >= 0")
    coeffs = [BivariatePolynomial()]
    for n in range(1, N + 1):
        table = tables[n - 1]
        if table.n != n:
            raise ValueError(f"table at position {n} is for n={table.n}")
        terms = {}
        for (d, lv), cnt in table.f.items():
            if lv == l and cnt:
                terms[(n - d, 0)] = terms.get((n - d, 0), 0) + cnt
        coeffs.append(BivariatePolynomial(terms))
    return TruncatedSeries(N, coeffs)


def binomial_power(u: TruncatedSeries, exponent: BivariatePolynomial) -> TruncatedSeries:
    """(1 + u)^exponent as a formal binomial series; u must have no constant term."""
    if u.coeffs[0]:
        raise ValueError("binomial_power needs a series with zero constant term")
    out = TruncatedSeries.one(u.N)
    u_pow = TruncatedSeries.one(u.N)
    for k in range(1, u.N + 1):
        u_pow = u_pow * u
        coeff = binomial_of(exponent, k)
        out = out + TruncatedSeries(u.N, [c * coeff for c in u_pow.coeffs])
    return out
