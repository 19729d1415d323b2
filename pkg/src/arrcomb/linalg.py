"""Dense exact linear algebra over the rationals (RREF, rank, null spaces).

Matrices are lists of row lists of Fractions; all routines are pure and
return fresh tuples.  Sizes here are tiny (ambient dimension <= ~6), so the
classic O(n^3) algorithms are the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rationals import Vec, ZERO, ONE

Matrix = tuple[Vec, ...]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with pivots scaled to 1.

    Returns (reduced nonzero rows, pivot column indices).  Zero rows are
    dropped.  The result is the canonical form of the row space.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return (), []
    ncols = len(mat[0])
    for r in mat:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(mat)):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pv = mat[rank][col]
        if pv != 1:
            mat[rank] = [x / pv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return tuple(tuple(r) for r in mat[:rank]), pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    reduced, _ = rref(rows)
    return len(reduced)


def nullspace_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of {x : rows @ x = 0}, one vector per non-pivot column.

    The basis vector for free column f has entry 1 at f, making the result
    canonical for a given row space.
    """
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in zip(reduced, pivots):
            v[p] = -r[free]
        basis.append(tuple(v))
    return tuple(basis)


def solve_affine(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int):
    """Solve rows @ x = rhs.  Returns (point, direction_basis) or None.

    The particular point sets all free variables to 0; the direction basis is
    nullspace_basis of the coefficient rows.  Returns None when inconsistent.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    if any(p == ncols for p in pivots):
        return None
    point = [ZERO] * ncols
    for r, p in zip(reduced, pivots):
        point[p] = r[ncols]
    coeff = tuple(r[:ncols] for r in reduced)
    return tuple(point), nullspace_basis(coeff, ncols)


def row_reduces_to_zero(row: Sequence[Fraction], reduced: Matrix, pivots: Sequence[int]) -> bool:
    """True iff row lies in the row space given by an RREF (reduced, pivots)."""
    work = list(row)
    for r, p in zip(reduced, pivots):
        if work[p] != 0:
            f = work[p]
            work = [a - f * b for a, b in zip(work, r)]
    return all(x == 0 for x in work)
