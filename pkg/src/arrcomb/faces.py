"""Face enumeration with dimensions and levels, plus the face digraph.

Faces of an arrangement are the regions of its restrictions to flats: the
enumerator walks the flats in canonical poset order and, per flat, runs a
depth-first sign assignment over the restriction's hyperplanes.  Each node
keeps an exact strict-interior witness of its prefix cell, so only the far
side of each new hyperplane ever needs a feasibility call; when the witness
lies on the hyperplane both sides are provably nonempty and the witness is
nudged exactly.  Output order is deterministic: flats by (codim, canonical
equations), then faces by full sign vector.

Levels come from the recession cone of the face closure (smallest subspace
the face stays near); for deformed braid faces Proposition-style digraph
counting gives the same number by an independent route, and both are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import feasibility, linalg
from .arrangement import Arrangement, DeformedBraidSpec, Restriction, restrict_to_flat
from .exactgeom import Flat, PolyhedronDescr, cone_span_dim, recession_span_dim
from .poset import poset_of
from .rationals import Vec, ZERO, ONE, dot, vadd, vscale, zero_vec

_FLIP = {"+": "-", "-": "+"}


@dataclass(frozen=True)
class Face:
    """One face: supporting flat, sign vector over the arrangement's
    hyperplane order, an exact relative-interior point, dimension and level."""

    flat: Flat
    sign_vector: str
    witness: Vec
    dim: int
    level: int


@dataclass(frozen=True)
class FaceDigraph:
    """Digraph on [n] attached to a face of a deformed braid arrangement.

    components is empty for a raw digraph; order_components fills it with the
    strong components in the unique order having all cross edges forward.
    """

    n: int
    edges: frozenset
    components: tuple = ()


class FaceCountTable:
    """Counts f(d,l) of faces by dimension and level, relatively bounded
    counts b(d), and the number of regions r."""

    def __init__(self, n: int, f: dict, b: dict):
        self.n = n
        self.f = dict(f)
        self.b = dict(b)
        self.r = sum(cnt for (d, _), cnt in self.f.items() if d == n)

    def f_count(self, d: int, l: int) -> int:
        return self.f.get((d, l), 0)

    def b_count(self, d: int) -> int:
        return self.b.get(d, 0)

    def total_faces(self) -> int:
        return sum(self.f.values())

    def to_csv(self) -> str:
        header = "d," + ",".join(str(l) for l in range(self.n + 1)) + ",b"
        lines = [header]
        for d in range(self.n + 1):
            row = [str(d)] + [str(self.f_count(d, l)) for l in range(self.n + 1)]
            row.append(str(self.b_count(d)))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "f": {f"{d},{l}": cnt for (d, l), cnt in sorted(self.f.items())},
            "b": {str(d): cnt for d, cnt in sorted(self.b.items())},
            "r": self.r,
        }


def _nudge(w: Vec, direction: Vec, signs, hyperplanes) -> Fraction:
    """Largest safe step so w + delta*direction keeps all prefix signs strict."""
    delta = ONE
    for sign, h in zip(signs, hyperplanes):
        rate = dot(h.normal, direction)
        if rate == 0:
            continue
        slack = h.eval(w)
        if sign == "-":
            slack = -slack
            rate = -rate
        # need slack + step*rate > 0 for step in (-delta, delta)
        bound = slack / (2 * abs(rate))
        if bound < delta:
            delta = bound
    return delta


def region_signs(sub: Arrangement) -> list[tuple[str, Vec]]:
    """Regions of an arrangement as (sign string, strict witness), sorted.

    Depth-first over hyperplanes in order; the witness of a prefix cell is
    reused for the side it lies on, so one feasibility call per far side
    suffices, and none at all when the witness sits on the new hyperplane.
    """
    k = sub.ambient_dim
    graph_mode = all(feasibility.is_utvpi_row(h.normal) for h in sub.hyperplanes)
    plus_con = {}
    minus_con = {}
    for h in sub.hyperplanes:
        if graph_mode:
            plus_con[h] = feasibility.compile_facts(h.normal, ">", h.offset)[0]
            minus_con[h] = feasibility.compile_facts(
                tuple(-x for x in h.normal), ">", -h.offset
            )[0]
        else:
            plus_con[h] = (h.normal, ">", h.offset)
            minus_con[h] = (tuple(-x for x in h.normal), ">", -h.offset)

    def far_point(cons):
        if graph_mode:
            return feasibility.utvpi_witness_from_facts(k, cons)
        return feasibility.strict_feasible(k, cons, method="simplex")

    # leaf: (sign list, witness, shared constraint list of the prefix)
    leaves: list[tuple[list, Vec, list]] = [([], zero_vec(k), [])]
    for h in sub.hyperplanes:
        new = []
        for signs, w, cons in leaves:
            value = h.eval(w)
            if value == 0:
                delta = _nudge(w, h.normal, signs, sub.hyperplanes)
                step = vscale(delta, h.normal)
                new.append((signs + ["+"], vadd(w, step), cons + [plus_con[h]]))
                new.append(
                    (signs + ["-"], vadd(w, vscale(-1, step)), cons + [minus_con[h]])
                )
                continue
            if value > 0:
                near_con, far_con, near, far = plus_con[h], minus_con[h], "+", "-"
            else:
                near_con, far_con, near, far = minus_con[h], plus_con[h], "-", "+"
            new.append((signs + [near], w, cons + [near_con]))
            far_cons = cons + [far_con]
            far_witness = far_point(far_cons)
            if far_witness is not None:
                new.append((signs + [far], far_witness, far_cons))
        leaves = new
    return sorted(("".join(signs), w) for signs, w, _ in leaves)


def _assemble_sign(R: Restriction, sub_sign: str) -> str:
    out = []
    for entry in R.hyperplane_map:
        if entry[0] == "zero":
            out.append("0")
        elif entry[0] == "const":
            out.append(entry[1])
        else:
            _, idx, flipped = entry
            s = sub_sign[idx]
            out.append(_FLIP[s] if flipped else s)
    return "".join(out)


def _restriction_complement_rows(A: Arrangement, basis: tuple[Vec, ...]) -> tuple[Vec, ...]:
    """Rows cutting span(W(A)) out of the flat chart's coordinates."""
    comp = linalg.nullspace_basis(A.normal_span_basis, A.ambient_dim)
    rows = []
    for nrow in comp:
        row = tuple(dot(nrow, v) for v in basis)
        rows.append(row)
    return tuple(rows)


@lru_cache(maxsize=None)
def _geometry(A: Arrangement):
    """Canonical face list plus, per face, the relative-boundedness flag."""
    P = poset_of(A)
    faces: list[Face] = []
    bounded: list[bool] = []
    for X in P.flats:
        R = restrict_to_flat(A, X)
        k = X.dim
        sub_normals = [h.normal for h in R.arrangement.hyperplanes]
        comp_rows = _restriction_complement_rows(A, R.basis)
        local: list[tuple[str, Face, bool]] = []
        for sub_sign, w_u in region_signs(R.arrangement):
            sign = _assemble_sign(R, sub_sign)
            cone_rows = [
                normal if s == "+" else tuple(-x for x in normal)
                for s, normal in zip(sub_sign, sub_normals)
            ]
            level = cone_span_dim(k, cone_rows)
            is_bounded = cone_span_dim(k, cone_rows, comp_rows) == 0
            face = Face(X, sign, R.to_ambient(w_u), k, level)
            local.append((sign, face, is_bounded))
        local.sort(key=lambda item: item[0])
        for sign, face, flag in local:
            faces.append(face)
            bounded.append(flag)
    return tuple(faces), tuple(bounded)


def enumerate_faces(A: Arrangement) -> tuple[Face, ...]:
    """All faces of A in canonical order, levels filled by the recession route."""
    return _geometry(A)[0]


def count_table(A: Arrangement) -> FaceCountTable:
    faces, bounded = _geometry(A)
    f: dict[tuple[int, int], int] = {}
    b: dict[int, int] = {}
    for face, flag in zip(faces, bounded):
        key = (face.dim, face.level)
        f[key] = f.get(key, 0) + 1
        if flag:
            b[face.dim] = b.get(face.dim, 0) + 1
    return FaceCountTable(A.ambient_dim, f, b)


def closure_polyhedron(A: Arrangement, F: Face) -> PolyhedronDescr:
    """Closed H-description of a face from its sign vector."""
    eqs, weak = [], []
    for sign, h in zip(F.sign_vector, A.hyperplanes):
        if sign == "0":
            eqs.append((h.normal, h.offset))
        elif sign == "+":
            weak.append((h.normal, h.offset))
        else:
            weak.append((tuple(-x for x in h.normal), -h.offset))
    return PolyhedronDescr(A.ambient_dim, equalities=tuple(eqs), weak=tuple(weak))


def level_by_recession(A: Arrangement, F: Face) -> int:
    """Level as the span dimension of the recession cone of the face closure."""
    return recession_span_dim(closure_polyhedron(A, F))


def sign_vector_of_point(A: Arrangement, x: Sequence[Fraction]) -> str:
    return "".join(h.side(x) for h in A.hyperplanes)


@lru_cache(maxsize=None)
def _sign_index(A: Arrangement) -> dict:
    return {face.sign_vector: i for i, face in enumerate(enumerate_faces(A))}


def face_containing(A: Arrangement, x: Sequence[Fraction]) -> Face:
    """The unique face whose relative interior contains x."""
    sign = sign_vector_of_point(A, x)
    idx = _sign_index(A).get(sign)
    if idx is None:
        raise ValueError(f"no face with sign vector {sign}")
    return enumerate_faces(A)[idx]


def face_index(A: Arrangement, F: Face) -> int:
    idx = _sign_index(A).get(F.sign_vector)
    if idx is None:
        raise ValueError("face does not belong to the arrangement")
    return idx


# --- the face digraph -------------------------------------------------------


def face_digraph(A: Arrangement, F: Face) -> FaceDigraph:
    """Digraph on [n]: i->j when x_i - x_j >= first offset of the pair,
    j->i when x_i - x_j <= last offset.  Independent of the witness choice."""
    spec = A.spec
    if A.kind != "deformed_braid" or not isinstance(spec, DeformedBraidSpec):
        raise ValueError("face digraph is defined only for deformed braid arrangements")
    x = F.witness
    edges = set()
    for (i, j), vals in spec.pairs():
        d = x[i - 1] - x[j - 1]
        if d >= vals[0]:
            edges.add((i, j))
        if d <= vals[-1]:
            edges.add((j, i))
    return FaceDigraph(spec.n, frozenset(edges))


def _strong_components(n: int, edges: frozenset) -> list[list[int]]:
    """Tarjan's algorithm; components returned with sorted vertex lists."""
    adjacency = {v: [] for v in range(1, n + 1)}
    for u, v in sorted(edges):
        adjacency[u].append(v)
    index = {}
    low = {}
    stack: list[int] = []
    on_stack = set()
    counter = [0]
    out: list[list[int]] = []

    def visit(v: int) -> None:
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in adjacency[v]:
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on_stack.remove(w)
                comp.append(w)
                if w == v:
                    break
            out.append(sorted(comp))

    for v in range(1, n + 1):
        if v not in index:
            visit(v)
    return out


def order_components(G: FaceDigraph) -> FaceDigraph:
    """Fill components in the unique order with all cross edges forward.

    Raises ValueError when the condensation is not a transitive tournament;
    for digraphs arising from faces that indicates an upstream bug.
    """
    comps = _strong_components(G.n, G.edges)
    forward: dict[tuple[int, int], bool] = {}
    for a in range(len(comps)):
        for b in range(len(comps)):
            if a == b:
                continue
            has = any((u, v) in G.edges for u in comps[a] for v in comps[b])
            complete = all(
                ((u, v) in G.edges) != ((v, u) in G.edges)
                for u in comps[a]
                for v in comps[b]
            )
            if not complete:
                raise ValueError("condensation is not a transitive tournament")
            if has and any((u, v) not in G.edges for u in comps[a] for v in comps[b]):
                raise ValueError("condensation is not a transitive tournament")
            forward[(a, b)] = has
    order = sorted(
        range(len(comps)),
        key=lambda a: sum(1 for b in range(len(comps)) if a != b and forward[(a, b)]),
        reverse=True,
    )
    outdegrees = [
        sum(1 for b in range(len(comps)) if a != b and forward[(a, b)]) for a in order
    ]
    if outdegrees != list(range(len(comps) - 1, -1, -1)):
        raise ValueError("condensation is not a transitive tournament")
    ordered = tuple(tuple(comps[a]) for a in order)
    return FaceDigraph(G.n, G.edges, ordered)


def level_by_components(A: Arrangement, F: Face) -> int:
    """Level as the number of strong components of the face digraph."""
    return len(order_components(face_digraph(A, F)).components)
