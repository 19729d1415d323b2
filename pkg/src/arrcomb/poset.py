"""Intersection posets, Moebius functions, characteristic and Whitney polynomials.

Flats are ordered by reverse inclusion (the ambient space is the bottom
element) and listed canonically: by codimension, then by their canonical
equations.  The Moebius table is filled by the standard top-down recursion
mu(X,X) = 1, mu(X,Y) = -sum of mu(X,Z) over X <= Z < Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arrangement import Arrangement, restrict_to_flat
from .exactgeom import Flat, ambient_flat, flat_intersect
from .rationals import ZERO, ONE, rat, rat_str


class BivariatePolynomial:
    """Polynomial in x and t with exact rational coefficients.

    Immutable; zero coefficients are never stored.  terms maps
    (x_exponent, t_exponent) -> Fraction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in dict(terms).items():
                c = rat(c)
                if c != 0:
                    if i < 0 or j < 0:
                        raise ValueError("negative exponent")
                    clean[(i, j)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("BivariatePolynomial is immutable")

    @staticmethod
    def constant(c) -> "BivariatePolynomial":
        return BivariatePolynomial({(0, 0): rat(c)})

    @staticmethod
    def monomial(xexp: int, texp: int, c=ONE) -> "BivariatePolynomial":
        return BivariatePolynomial({(xexp, texp): rat(c)})

    def __eq__(self, other):
        if isinstance(other, BivariatePolynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, ZERO) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return BivariatePolynomial(out)

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(rat(other))
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                s = out.get(key, ZERO) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Fraction) -> "BivariatePolynomial":
        if c == 0:
            return BivariatePolynomial()
        return BivariatePolynomial({k: c * v for k, v in self.terms.items()})

    def substitute(self, x=None, t=None) -> "BivariatePolynomial":
        """Substitute exact rational values for x and/or t (None keeps the variable)."""
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            xi, ti = i, j
            if x is not None:
                c = c * rat(x) ** i
                xi = 0
            if t is not None:
                c = c * rat(t) ** j
                ti = 0
            key = (xi, ti)
            s = out.get(key, ZERO) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return BivariatePolynomial(out)

    def flip_x_sign(self) -> "BivariatePolynomial":
        """Substitute x -> -x."""
        return BivariatePolynomial(
            {(i, j): (-c if i % 2 else c) for (i, j), c in self.terms.items()}
        )

    def eval(self, x, t) -> Fraction:
        total = ZERO
        xv, tv = rat(x), rat(t)
        for (i, j), c in self.terms.items():
            total += c * xv**i * tv**j
        return total

    def coefficient(self, xexp: int, texp: int) -> Fraction:
        return self.terms.get((xexp, texp), ZERO)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"x": i, "t": j, "coeff": rat_str(c)}
                for (i, j), c in sorted(self.terms.items())
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "BivariatePolynomial":
        return BivariatePolynomial(
            {(term["x"], term["t"]): rat(term["coeff"]) for term in data["terms"]}
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            factors = [] if c == 1 and (i or j) else [rat_str(c)]
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("t" if j == 1 else f"t^{j}")
            parts.append("*".join(factors))
        return " + ".join(parts)


POLY_ONE = BivariatePolynomial.constant(1)
POLY_X = BivariatePolynomial.monomial(1, 0)
POLY_T = BivariatePolynomial.monomial(0, 1)


@dataclass(frozen=True)
class IntersectionPoset:
    """All nonempty intersections of hyperplane subsets, bottom = ambient space."""

    flats: tuple[Flat, ...]
    leq: tuple[tuple[bool, ...], ...]       # leq[i][j]: flats[i] <= flats[j]
    mobius: dict  # (i, j) -> int for all comparable pairs

    @property
    def bottom(self) -> int:
        return 0

    def __len__(self):
        return len(self.flats)

    def dim(self, i: int) -> int:
        return self.flats[i].dim

    def index_of(self, flat: Flat) -> int:
        return self.flats.index(flat)

    def mu(self, i: int, j: int) -> int:
        return self.mobius[(i, j)]

    def intervals(self):
        n = len(self.flats)
        for i in range(n):
            for j in range(n):
                if self.leq[i][j]:
                    yield i, j


def build_intersection_poset(A: Arrangement) -> IntersectionPoset:
    """Closure of {ambient} under intersecting with hyperplanes, plus Moebius table."""
    n = A.ambient_dim
    hyperplane_eqs = [h.as_equation() for h in A.hyperplanes]
    found: dict[Flat, None] = {ambient_flat(n): None}
    frontier = [ambient_flat(n)]
    while frontier:
        new = []
        for X in frontier:
            for eq in hyperplane_eqs:
                Y = flat_intersect(X, eq)
                if Y is not None and Y not in found:
                    found[Y] = None
                    new.append(Y)
        frontier = new
    flats = tuple(sorted(found, key=Flat.sort_key))
    count = len(flats)
    leq = tuple(
        tuple(
            i == j or (flats[i].dim > flats[j].dim and flats[i].contains_flat(flats[j]))
            for j in range(count)
        )
        for i in range(count)
    )
    # Moebius by top-down recursion over each lower interval.
    mobius: dict[tuple[int, int], int] = {}
    for i in range(count):
        above = [j for j in range(count) if leq[i][j]]
        mobius[(i, i)] = 1
        for j in above:
            if j == i:
                continue
            total = 0
            for z in above:
                if z != j and leq[z][j]:
                    total += mobius[(i, z)]
            mobius[(i, j)] = -total
    return IntersectionPoset(flats, leq, mobius)


@lru_cache(maxsize=None)
def poset_of(A: Arrangement) -> IntersectionPoset:
    return build_intersection_poset(A)


def characteristic_polynomial(A: Arrangement) -> BivariatePolynomial:
    """chi(A, t) = sum over flats Y of mu(ambient, Y) t^dim(Y)."""
    P = poset_of(A)
    terms: dict[tuple[int, int], Fraction] = {}
    for j in range(len(P)):
        if P.leq[P.bottom][j]:
            key = (0, P.dim(j))
            terms[key] = terms.get(key, ZERO) + P.mu(P.bottom, j)
    return BivariatePolynomial(terms)


def whitney_polynomial(A: Arrangement) -> BivariatePolynomial:
    """w(A, x, t) = sum over pairs X <= Y of mu(X,Y) x^(n-dim X) t^(dim Y)."""
    P = poset_of(A)
    n = A.ambient_dim
    terms: dict[tuple[int, int], Fraction] = {}
    for i, j in P.intervals():
        key = (n - P.dim(i), P.dim(j))
        terms[key] = terms.get(key, ZERO) + P.mu(i, j)
    return BivariatePolynomial(terms)


def whitney_via_restrictions(A: Arrangement) -> BivariatePolynomial:
    """Independent route: w(A, x, t) = sum over flats X of x^(n-dim X) chi(A/X, t).

    Each restriction is a new arrangement with its own poset, so this shares
    no Moebius values with whitney_polynomial.
    """
    P = poset_of(A)
    n = A.ambient_dim
    total = BivariatePolynomial()
    for X in P.flats:
        chi = characteristic_polynomial(restrict_to_flat(A, X).arrangement)
        total = total + BivariatePolynomial.monomial(n - X.dim, 0) * chi
    return total
