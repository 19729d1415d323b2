"""Exact-pivot simplex over the rationals.

Standard form: maximize c.x subject to A x = b, x >= 0, with every entry a
Fraction.  Bland's rule is used throughout, which guarantees termination and
makes the pivot sequence (hence the returned vertex) a pure function of the
input.  Problems here are tiny, so a dense tableau is appropriate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .rationals import ZERO, ONE

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status: str, x=None, value=None):
        self.status = status
        self.x = x
        self.value = value


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pv = tab[row][col]
    if pv != 1:
        inv = ONE / pv
        tab[row] = [a * inv for a in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = col


def _reduced_costs(tab, basis, c):
    m = len(tab)
    ncols = len(c)
    red = list(c)
    for i in range(m):
        cb = c[basis[i]]
        if cb != 0:
            row = tab[i]
            for j in range(ncols):
                if row[j] != 0:
                    red[j] -= cb * row[j]
    return red


def _simplex(tab: list[list[Fraction]], basis: list[int], c: Sequence[Fraction]) -> str:
    """Run phase-2 simplex in place from a feasible basis.  Bland's rule."""
    ncols = len(c)
    while True:
        red = _reduced_costs(tab, basis, c)
        enter = -1
        for j in range(ncols):
            if red[j] > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)


def solve(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], c: Sequence[Fraction]) -> LPResult:
    """Two-phase simplex: maximize c.x subject to A x = b, x >= 0."""
    m = len(A)
    n = len(c)
    if m == 0:
        return LPResult(OPTIMAL, (ZERO,) * n, ZERO) if all(ci <= 0 for ci in c) else LPResult(UNBOUNDED)
    # Phase 1: artificial variables, rows flipped so b >= 0.
    tab: list[list[Fraction]] = []
    for i in range(m):
        row = list(A[i]) + [ZERO] * m + [b[i]]
        if b[i] < 0:
            row = [-a for a in row]
        row[n + i] = ONE
        tab.append(row)
    basis = [n + i for i in range(m)]
    c1 = [ZERO] * n + [-ONE] * m
    _simplex(tab, basis, c1)
    if any(tab[i][-1] != 0 for i in range(len(tab)) if basis[i] >= n):
        return LPResult(INFEASIBLE)
    # Drive remaining (degenerate) artificials out of the basis; rows that
    # cannot be pivoted are redundant and get dropped along with all
    # artificial columns before phase 2.
    for i in range(len(tab)):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    keep = [i for i in range(len(tab)) if basis[i] < n]
    tab = [tab[i][:n] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    status = _simplex(tab, basis, list(c))
    if status != OPTIMAL:
        return LPResult(status)
    x = [ZERO] * n
    for i, bi in enumerate(basis):
        x[bi] = tab[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    return LPResult(OPTIMAL, tuple(x), value)


def solve_from_basis(
    tab_rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    basis: Sequence[int],
    c: Sequence[Fraction],
) -> LPResult:
    """Phase-2 only, starting from a known feasible basis (rhs >= 0 required)."""
    tab = [list(row) + [r] for row, r in zip(tab_rows, rhs)]
    bas = list(basis)
    status = _simplex(tab, bas, c)
    if status != OPTIMAL:
        return LPResult(status)
    n = len(c)
    x = [ZERO] * n
    for i, bi in enumerate(bas):
        x[bi] = tab[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    return LPResult(OPTIMAL, tuple(x), value)


class FreeLP:
    """Helper assembling an LP over free variables into standard form.

    Free variables are split into positive/negative parts; each constraint
    a.x (=, >=) rhs adds a row (with a surplus column for >=).  Extra
    nonnegative scalar variables (e.g. slack-maximization targets) can be
    appended with add_var.
    """

    def __init__(self, num_free: int):
        self.num_free = num_free
        self.extra = 0
        self.rows: list[tuple[dict[int, Fraction], str, Fraction]] = []

    def add_var(self) -> int:
        """Add a nonnegative variable; returns its handle."""
        self.extra += 1
        return -self.extra

    def _col(self, handle: int) -> int:
        # free variable i -> columns 2i (+) and 2i+1 (-); extra var k -> 2*num_free + k
        return 2 * self.num_free + (-handle - 1)

    def add_constraint(self, coeffs: dict[int, Fraction], rel: str, rhs: Fraction) -> None:
        """coeffs maps free-variable index (>= 0) or var handle (< 0) to coefficient."""
        if rel not in ("=", ">="):
            raise ValueError(f"unsupported relation {rel!r}")
        self.rows.append((dict(coeffs), rel, rhs))

    def maximize(self, objective: dict[int, Fraction]) -> LPResult:
        nfree = self.num_free
        width = 2 * nfree + self.extra + sum(1 for _, rel, _ in self.rows if rel == ">=")
        A: list[list[Fraction]] = []
        b: list[Fraction] = []
        surplus_at = 2 * nfree + self.extra
        for coeffs, rel, rhs in self.rows:
            row = [ZERO] * width
            for key, val in coeffs.items():
                if key >= 0:
                    row[2 * key] = val
                    row[2 * key + 1] = -val
                else:
                    row[self._col(key)] = val
            if rel == ">=":
                row[surplus_at] = -ONE
                surplus_at += 1
            A.append(row)
            b.append(rhs)
        c = [ZERO] * width
        for key, val in objective.items():
            if key >= 0:
                c[2 * key] = val
                c[2 * key + 1] = -val
            else:
                c[self._col(key)] = val
        res = solve(A, b, c)
        if res.status != OPTIMAL:
            return res
        x = res.x
        free_part = tuple(x[2 * i] - x[2 * i + 1] for i in range(nfree))
        extra_part = tuple(x[2 * nfree + k] for k in range(self.extra))
        return LPResult(OPTIMAL, (free_part, extra_part), res.value)
