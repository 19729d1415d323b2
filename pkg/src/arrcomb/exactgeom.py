"""Exact rational polyhedral primitives.

Flats are canonical (reduced row echelon) affine subspaces, so equality of
flats is equality of tuples.  Strict-interior witnesses, recession-cone span
dimensions and relative boundedness are all computed without floats; every
answer is exact.

The affine hull of a polyhedral cone {u : W u >= 0} is {u : W_I u = 0} where
I is the set of implicit equality rows.  Rows paired with their negation are
implicit outright; the remaining implicit set is found by one slack-saturation
LP (maximize sum of t_i subject to w_i.u >= t_i, 0 <= t_i <= 1): at the
optimum t_i = 1 exactly on the non-implicit rows.  Results are memoized on the
canonical cone description, which repeats heavily across faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import feasibility, linalg, lp
from .rationals import Vec, ZERO, ONE, dot, is_zero_vec, primitive_scaled, zero_vec


class DimensionMismatchError(ValueError):
    pass


Equation = tuple[Vec, Fraction]  # normal . x = offset


def _check_rows(rows: Sequence[Equation], ambient_dim: int, allow_zero: bool = False) -> None:
    for normal, _ in rows:
        if len(normal) != ambient_dim:
            raise DimensionMismatchError(
                f"normal of length {len(normal)} in ambient dimension {ambient_dim}"
            )
        if not allow_zero and is_zero_vec(normal):
            raise ValueError("zero normal vector")


@dataclass(frozen=True, order=True)
class Flat:
    """Nonempty affine subspace in canonical RREF form.

    equations is the reduced row echelon form of any generating system, with
    pivots scaled to 1, so two flats are equal iff their field tuples are.
    """

    ambient_dim: int
    equations: tuple[Equation, ...]

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def codim(self) -> int:
        return len(self.equations)

    def sort_key(self):
        return (self.codim, self.equations)

    def contains_point(self, x: Sequence[Fraction]) -> bool:
        return all(dot(normal, x) == off for normal, off in self.equations)

    def contains_flat(self, other: "Flat") -> bool:
        """True iff other is a subset of self (every equation of self holds on other)."""
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("flats live in different ambient spaces")
        # equations are already reduced augmented rows; pivots lead each row
        reduced = tuple(normal + (off,) for normal, off in other.equations)
        pivots = [next(i for i, x in enumerate(row) if x != 0) for row in reduced]
        for normal, off in self.equations:
            if not linalg.row_reduces_to_zero(normal + (off,), reduced, pivots):
                return False
        return True

    def chart(self) -> tuple[Vec, tuple[Vec, ...]]:
        """Affine parametrization (point, direction basis): x = point + basis @ u."""
        n = self.ambient_dim
        if not self.equations:
            basis = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
            return zero_vec(n), basis
        normals = [normal for normal, _ in self.equations]
        rhs = [off for _, off in self.equations]
        solved = linalg.solve_affine(normals, rhs, n)
        assert solved is not None, "canonical flat must be consistent"
        return solved


def ambient_flat(n: int) -> Flat:
    return Flat(n, ())


def flat_from_hyperplanes(hyperplanes: Sequence[Equation], ambient_dim: int) -> Optional[Flat]:
    """Canonical flat equal to the intersection, or None when inconsistent.

    The empty list yields the ambient space.
    """
    _check_rows(hyperplanes, ambient_dim)
    if not hyperplanes:
        return ambient_flat(ambient_dim)
    aug = [list(normal) + [off] for normal, off in hyperplanes]
    reduced, pivots = linalg.rref(aug)
    if any(p == ambient_dim for p in pivots):
        return None
    equations = tuple((row[:ambient_dim], row[ambient_dim]) for row in reduced)
    return Flat(ambient_dim, equations)


def flat_intersect(flat: Flat, hyperplane: Equation) -> Optional[Flat]:
    """Intersect a flat with one more hyperplane."""
    return flat_from_hyperplanes(flat.equations + (hyperplane,), flat.ambient_dim)


@dataclass(frozen=True)
class PolyhedronDescr:
    """H-description carrier for faces and their closures.

    strict rows mean normal.x > offset, weak rows mean normal.x >= offset.
    """

    ambient_dim: int
    equalities: tuple[Equation, ...] = ()
    strict: tuple[Equation, ...] = ()
    weak: tuple[Equation, ...] = ()

    def __post_init__(self):
        _check_rows(self.equalities, self.ambient_dim, allow_zero=True)
        _check_rows(self.strict, self.ambient_dim)
        _check_rows(self.weak, self.ambient_dim)


def strict_interior_point(P: PolyhedronDescr, method: str = "auto") -> Optional[Vec]:
    """Exact point meeting all equalities, weak rows, and strict rows strictly.

    Returns None iff no such point exists.  Deterministic for fixed input.
    """
    constraints = (
        [(normal, "=", off) for normal, off in P.equalities]
        + [(normal, ">=", off) for normal, off in P.weak]
        + [(normal, ">", off) for normal, off in P.strict]
    )
    return feasibility.strict_feasible(P.ambient_dim, constraints, method=method)


# --- recession cones -------------------------------------------------------

_SPAN_CACHE: dict[tuple, int] = {}
_IMPLICIT_CACHE: dict[tuple, tuple[int, ...]] = {}


def _canonical_rows(rows: Sequence[Vec]) -> tuple[Vec, ...]:
    out = set()
    for row in rows:
        if is_zero_vec(row):
            continue
        # rows with integer entries containing a +-1 are already primitive
        if any(x.denominator != 1 for x in row) or not any(x == 1 or x == -1 for x in row):
            row, _ = primitive_scaled(row)
        out.add(tuple(row))
    return tuple(sorted(out))


def _implicit_rows_lp(k: int, rows: tuple[Vec, ...]) -> tuple[int, ...]:
    """Indices of rows holding with equality on all of {u : rows @ u >= 0}."""
    key = (k, rows)
    cached = _IMPLICIT_CACHE.get(key)
    if cached is not None:
        return cached
    m = len(rows)
    width = 2 * k + 3 * m  # u+, u-, t, s, r
    tab: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    for i, w in enumerate(rows):
        row = [ZERO] * width
        for j, x in enumerate(w):
            row[2 * j] = -x
            row[2 * j + 1] = x
        row[2 * k + i] = ONE          # + t_i
        row[2 * k + m + i] = ONE      # + s_i  (w.u - t_i = s_i >= 0)
        tab.append(row)
        rhs.append(ZERO)
        basis.append(2 * k + m + i)
    for i in range(m):
        row = [ZERO] * width
        row[2 * k + i] = ONE
        row[2 * k + 2 * m + i] = ONE  # t_i + r_i = 1
        tab.append(row)
        rhs.append(ONE)
        basis.append(2 * k + 2 * m + i)
    c = [ZERO] * width
    for i in range(m):
        c[2 * k + i] = ONE
    res = lp.solve_from_basis(tab, rhs, basis, c)
    assert res.status == lp.OPTIMAL
    implicit = []
    for i in range(m):
        t = res.x[2 * k + i]
        if t == 0:
            implicit.append(i)
        elif t != 1:
            raise RuntimeError("slack saturation LP produced a fractional t")
    result = tuple(implicit)
    _IMPLICIT_CACHE[key] = result
    return result


_RAW_SPAN_CACHE: dict[tuple, int] = {}


def cone_span_dim(k: int, ineq_rows: Sequence[Vec], eq_rows: Sequence[Vec] = ()) -> int:
    """dim span({u in R^k : eq_rows @ u = 0, ineq_rows @ u >= 0})."""
    raw_key = (k, tuple(ineq_rows), tuple(eq_rows))
    cached = _RAW_SPAN_CACHE.get(raw_key)
    if cached is not None:
        return cached
    result = _cone_span_dim(k, ineq_rows, eq_rows)
    _RAW_SPAN_CACHE[raw_key] = result
    return result


def _cone_span_dim(k: int, ineq_rows: Sequence[Vec], eq_rows: Sequence[Vec]) -> int:
    eqs = [row for row in eq_rows if not is_zero_vec(row)]
    if eqs:
        basis = linalg.nullspace_basis(eqs, k)
        reduced = [tuple(dot(row, v) for v in basis) for row in ineq_rows]
        return cone_span_dim(len(basis), reduced, ())
    rows = _canonical_rows(ineq_rows)
    key = (k, rows)
    cached = _SPAN_CACHE.get(key)
    if cached is not None:
        return cached
    row_set = set(rows)
    paired = [row for row in rows if tuple(-x for x in row) in row_set]
    if paired:
        rest = [row for row in rows if row not in set(paired)]
        basis = linalg.nullspace_basis(paired, k)
        reduced = [tuple(dot(row, v) for v in basis) for row in rest]
        result = cone_span_dim(len(basis), reduced, ())
    elif not rows:
        result = k
    else:
        implicit = _implicit_rows_lp(k, rows)
        result = k - linalg.rank([rows[i] for i in implicit])
    _SPAN_CACHE[key] = result
    return result


def recession_span_dim(P: PolyhedronDescr) -> int:
    """Span dimension of the recession cone of a closed polyhedron.

    P must describe a closure (equalities and weak inequalities only); the
    recession cone is obtained by zeroing all offsets.
    """
    if P.strict:
        raise ValueError("recession_span_dim expects a closure (no strict rows)")
    return cone_span_dim(
        P.ambient_dim,
        [normal for normal, _ in P.weak],
        [normal for normal, _ in P.equalities],
    )


def bounded_within(P: PolyhedronDescr, subspace_basis: Sequence[Vec]) -> bool:
    """True iff closure(P) meets translates of span(subspace_basis) boundedly.

    Computed as: recession cone of closure(P) intersected with the span is
    the origin.  Strict rows are weakened (we work with the closure).
    """
    n = P.ambient_dim
    basis = [tuple(v) for v in subspace_basis]
    for v in basis:
        if len(v) != n:
            raise DimensionMismatchError("subspace basis vector of wrong length")
    if basis and linalg.rank(basis) != len(basis):
        raise ValueError("subspace basis is linearly dependent")
    complement = linalg.nullspace_basis(basis, n)
    ineqs = [normal for normal, _ in P.weak] + [normal for normal, _ in P.strict]
    eqs = [normal for normal, _ in P.equalities] + list(complement)
    return cone_span_dim(n, ineqs, eqs) == 0
