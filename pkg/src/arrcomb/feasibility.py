"""Strict feasibility of linear constraint systems with exact witnesses.

Two interchangeable engines sit behind strict_feasible():

* a two-phase exact simplex on a slack-maximization reformulation (works for
  arbitrary rational constraints), and
* a lexicographic Bellman-Ford on a doubled difference graph, applicable when
  every row is UTVPI-shaped (at most two nonzero entries, both +-1 after
  primitive scaling).  Deformed braid and type-B arrangements, and all their
  restrictions, stay UTVPI-shaped, which makes face enumeration cheap.

Strictness is tracked symbolically: weights live in Q x Z, a pair (c, s)
standing for c - s*epsilon, compared lexicographically.  A concrete epsilon
is extracted at the end, so witnesses are exact rational points.

Both engines are deterministic for a fixed input.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import lp
from .rationals import Vec, ZERO, ONE, dot, primitive_scaled

# A constraint is (coeffs, rel, rhs) with rel one of "=", ">=", ">".
Constraint = tuple[Vec, str, Fraction]

RELS = ("=", ">=", ">")


def is_utvpi_row(row: Sequence[Fraction]) -> bool:
    """True if the row, scaled primitive, has <= 2 nonzeros, all +-1."""
    nonzero = [x for x in row if x != 0]
    if not nonzero or len(nonzero) > 2:
        return False
    if all(x == 1 or x == -1 for x in nonzero):
        return True
    scaled, _ = primitive_scaled(row)
    return all(x == 1 or x == -1 for x in scaled if x != 0)


# A fact is (support, rhs, strict): sum of sign*x_i over support <= rhs,
# strictly when strict == 1.  support is ((index, +-1), ...), possibly empty.
Fact = tuple[tuple[tuple[int, int], ...], Fraction, int]


def _support_of(coeffs: Vec) -> tuple[tuple[tuple[int, int], ...], Fraction]:
    """Unit support of a UTVPI row and the rhs scale factor."""
    support = [(i, x) for i, x in enumerate(coeffs) if x != 0]
    if not support:
        return (), ONE
    if len(support) > 2:
        raise ValueError("constraint row is not UTVPI-shaped")
    if all(x == 1 or x == -1 for _, x in support):
        return tuple((i, 1 if x == 1 else -1) for i, x in support), ONE
    scaled, factor = primitive_scaled(coeffs)
    if any(scaled[i] != 1 and scaled[i] != -1 for i, _ in support):
        raise ValueError("constraint row is not UTVPI-shaped")
    return tuple((i, 1 if scaled[i] == 1 else -1) for i, _ in support), factor


def compile_facts(coeffs: Vec, rel: str, rhs: Fraction) -> tuple[Fact, ...]:
    """<=-facts of one constraint, with unit supports, for the graph engine."""
    support, factor = _support_of(coeffs)
    c = rhs * factor
    neg = tuple((i, -s) for i, s in support)
    if rel == "=":
        return ((support, c, 0), (neg, -c, 0))
    if rel == ">=":
        return ((neg, -c, 0),)
    if rel == ">":
        return ((neg, -c, 1),)
    raise ValueError(f"unknown relation {rel!r}")


def utvpi_witness_from_facts(num_vars: int, facts: Sequence[Fact]) -> Optional[Vec]:
    """Graph engine on pre-compiled facts; see compile_facts."""
    # Node layout: 2i = +x_i, 2i+1 = -x_i, 2*num_vars = zero anchor.
    anchor = 2 * num_vars
    raw_edges: list[tuple[int, int, Fraction, int]] = []  # y_u - y_v <= c - s*eps
    for support, c, s in facts:
        if not support:
            if c < 0 or (c == 0 and s > 0):
                return None
            continue
        if len(support) == 1:
            i, si = support[0]
            if si == 1:  # x_i <= c
                raw_edges.append((anchor, 2 * i, c, s))
                raw_edges.append((2 * i + 1, anchor, c, s))
            else:  # -x_i <= c
                raw_edges.append((anchor, 2 * i + 1, c, s))
                raw_edges.append((2 * i, anchor, c, s))
        else:
            (i, si), (j, sj) = support
            if si == 1 and sj == -1:  # x_i - x_j <= c
                raw_edges.append((2 * j, 2 * i, c, s))
                raw_edges.append((2 * i + 1, 2 * j + 1, c, s))
            elif si == -1 and sj == 1:  # x_j - x_i <= c
                raw_edges.append((2 * i, 2 * j, c, s))
                raw_edges.append((2 * j + 1, 2 * i + 1, c, s))
            elif si == 1 and sj == 1:  # x_i + x_j <= c
                raw_edges.append((2 * j + 1, 2 * i, c, s))
                raw_edges.append((2 * i + 1, 2 * j, c, s))
            else:  # -x_i - x_j <= c
                raw_edges.append((2 * j, 2 * i + 1, c, s))
                raw_edges.append((2 * i, 2 * j + 1, c, s))
    # Bellman-Ford over integers: weights scaled by the common denominator.
    denom = 1
    for _, _, c, _ in raw_edges:
        d = c.denominator
        if d != 1:
            denom = denom * d // gcd(denom, d)
    edges = [
        (v, u, c.numerator * (denom // c.denominator), s) for v, u, c, s in raw_edges
    ]
    nnodes = 2 * num_vars + 1
    pot_a = [0] * nnodes  # numerators over denom
    pot_b = [0] * nnodes  # strictness counts
    changed = True
    for _ in range(nnodes):
        changed = False
        for v, u, c, s in edges:
            ca = pot_a[v] + c
            cb = pot_b[v] + s
            ua = pot_a[u]
            if ca < ua or (ca == ua and cb > pot_b[u]):
                pot_a[u] = ca
                pot_b[u] = cb
                changed = True
        if not changed:
            break
    if changed:
        return None  # epsilon-negative cycle: no strict solution
    # Symmetrize: x_i = (p(+i) - p(-i)) / 2 in (value, eps-count) form.
    two_d = 2 * denom
    val = [Fraction(pot_a[2 * i] - pot_a[2 * i + 1], two_d) for i in range(num_vars)]
    cnt = [Fraction(pot_b[2 * i] - pot_b[2 * i + 1], 2) for i in range(num_vars)]
    # Choose epsilon small enough that every fact keeps its guaranteed sign.
    eps = ONE
    for support, c, s in facts:
        alpha = -c
        beta = ZERO
        for i, si in support:
            alpha += val[i] if si == 1 else -val[i]
            beta += cnt[i] if si == 1 else -cnt[i]
        grow = s - beta  # value(eps) + s*eps = alpha + grow*eps must stay <= 0
        if alpha < 0:
            if grow > 0:
                bound = -alpha / grow
                if bound < eps:
                    eps = bound
        elif alpha > 0 or beta < s:
            raise RuntimeError("potential symmetrization violated a fact")
    return tuple(v - b * eps for v, b in zip(val, cnt))


def _utvpi_witness(num_vars: int, constraints: Sequence[Constraint]) -> Optional[Vec]:
    facts = [f for con in constraints for f in compile_facts(*con)]
    return utvpi_witness_from_facts(num_vars, facts)


def _simplex_witness(num_vars: int, constraints: Sequence[Constraint]) -> Optional[Vec]:
    prob = lp.FreeLP(num_vars)
    has_strict = any(rel == ">" for _, rel, _ in constraints)
    s_var = prob.add_var() if has_strict else None
    for coeffs, rel, rhs in constraints:
        coeff_map = {i: x for i, x in enumerate(coeffs) if x != 0}
        if rel == "=":
            prob.add_constraint(coeff_map, "=", rhs)
        elif rel == ">=":
            prob.add_constraint(coeff_map, ">=", rhs)
        elif rel == ">":
            coeff_map[s_var] = -ONE
            prob.add_constraint(coeff_map, ">=", rhs)
        else:
            raise ValueError(f"unknown relation {rel!r}")
    if has_strict:
        prob.add_constraint({s_var: -ONE}, ">=", -ONE)  # cap s <= 1
        res = prob.maximize({s_var: ONE})
        if res.status != lp.OPTIMAL or res.value <= 0:
            return None
        return res.x[0]
    res = prob.maximize({})
    if res.status != lp.OPTIMAL:
        return None
    return res.x[0]


def strict_feasible(num_vars: int, constraints: Sequence[Constraint], method: str = "auto") -> Optional[Vec]:
    """Exact point satisfying every constraint (">" strictly), or None.

    method: "auto" picks the graph engine when all rows are UTVPI-shaped,
    "graph" forces it (raising on non-UTVPI rows), "simplex" forces simplex.
    """
    for coeffs, rel, _ in constraints:
        if len(coeffs) != num_vars:
            raise ValueError("constraint dimension mismatch")
        if rel not in RELS:
            raise ValueError(f"unknown relation {rel!r}")
    if method == "auto":
        use_graph = all(
            not any(row) or is_utvpi_row(row) for row, _, _ in constraints
        )
    elif method == "graph":
        use_graph = True
    elif method == "simplex":
        use_graph = False
    else:
        raise ValueError(f"unknown method {method!r}")
    if use_graph:
        return _utvpi_witness(num_vars, constraints)
    return _simplex_witness(num_vars, constraints)
