"""Independent reference computations used to freeze expected test values.

Everything here deliberately avoids the library's enumeration strategy:
faces come from exhaustive sign-vector search, characteristic polynomials
from deletion-restriction, boundedness from extreme-ray enumeration, and
Stirling numbers from explicit set partitions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from arrcomb import linalg
from arrcomb.arrangement import Arrangement, build_generic, restrict_to_flat
from arrcomb.exactgeom import (
    PolyhedronDescr,
    flat_from_hyperplanes,
    recession_span_dim,
    strict_interior_point,
)
from arrcomb.poset import BivariatePolynomial


def brute_force_sign_vectors(A: Arrangement, method: str = "auto") -> list[str]:
    """All realizable sign vectors, by testing every element of {+,0,-}^m."""
    out = []
    for combo in product("+0-", repeat=A.num_hyperplanes):
        eqs, strict = [], []
        for s, h in zip(combo, A.hyperplanes):
            if s == "0":
                eqs.append((h.normal, h.offset))
            elif s == "+":
                strict.append((h.normal, h.offset))
            else:
                strict.append((tuple(-x for x in h.normal), -h.offset))
        P = PolyhedronDescr(A.ambient_dim, equalities=tuple(eqs), strict=tuple(strict))
        if strict_interior_point(P, method=method) is not None:
            out.append("".join(combo))
    return sorted(out)


def brute_force_regions(A: Arrangement, method: str = "auto") -> int:
    count = 0
    for combo in product("+-", repeat=A.num_hyperplanes):
        strict = []
        for s, h in zip(combo, A.hyperplanes):
            if s == "+":
                strict.append((h.normal, h.offset))
            else:
                strict.append((tuple(-x for x in h.normal), -h.offset))
        P = PolyhedronDescr(A.ambient_dim, strict=tuple(strict))
        if strict_interior_point(P, method=method) is not None:
            count += 1
    return count


def chi_by_deletion_restriction(A: Arrangement) -> BivariatePolynomial:
    """chi(A) = chi(A minus H) - chi(A restricted to H), recursively."""
    if A.num_hyperplanes == 0:
        return BivariatePolynomial.monomial(0, A.ambient_dim)
    h = A.hyperplanes[-1]
    deletion = build_generic(
        [(hp.normal, hp.offset) for hp in A.hyperplanes[:-1]], A.ambient_dim
    )
    flat = flat_from_hyperplanes([h.as_equation()], A.ambient_dim)
    restriction = restrict_to_flat(A, flat).arrangement
    return chi_by_deletion_restriction(deletion) - chi_by_deletion_restriction(restriction)


def cone_is_origin(eq_rows, ineq_rows, dim: int) -> bool:
    """Extreme-ray search: the cone {E z = 0, W z >= 0} equals {0}?

    The cone is nonzero iff its lineality space is nonzero or some subset of
    inequality rows cuts a one-dimensional kernel whose generator (either
    orientation) satisfies all inequalities.
    """
    all_rows = list(eq_rows) + list(ineq_rows)
    if linalg.nullspace_basis(all_rows, dim):
        return False  # nonzero lineality
    m = len(ineq_rows)
    for size in range(m + 1):
        for subset in combinations(range(m), size):
            rows = list(eq_rows) + [ineq_rows[i] for i in subset]
            kernel = linalg.nullspace_basis(rows, dim)
            if len(kernel) != 1:
                continue
            for z in (kernel[0], tuple(-x for x in kernel[0])):
                if all(
                    sum(a * b for a, b in zip(row, z)) >= 0 for row in ineq_rows
                ):
                    return False
    return True


def closure_is_bounded(P: PolyhedronDescr) -> bool:
    eqs = [normal for normal, _ in P.equalities]
    ineqs = [normal for normal, _ in P.weak] + [normal for normal, _ in P.strict]
    return cone_is_origin(eqs, ineqs, P.ambient_dim)


def stirling_by_partitions(n: int, l: int) -> int:
    from arrcomb.bijection import set_partitions

    return sum(1 for p in set_partitions(list(range(1, n + 1))) if len(p) == l)
