"""Arrangements: deformed braid (type A), non-degenerate type-B, and generic.

Hyperplanes are canonicalized to primitive integer normals with positive
leading coordinate, so the hyperplane list of an arrangement deduplicates by
simple equality and downstream sign vectors index into a deterministic order:

* deformed braid: pairs (i, j) lexicographic, offsets ascending;
* type B: difference pairs, then sum pairs, then axis hyperplanes, offsets
  ascending within each;
* generic: order given by the caller (after dedup).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import linalg
from .exactgeom import DimensionMismatchError, Flat, ambient_flat, flat_from_hyperplanes
from .rationals import Vec, ZERO, ONE, dot, is_zero_vec, primitive_scaled, rat, vsub, zero_vec


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane normal.x = offset in canonical form."""

    normal: Vec
    offset: Fraction

    @staticmethod
    def canonical(normal: Sequence[Fraction], offset: Fraction) -> "Hyperplane":
        h, flipped = canonicalize_equation(tuple(normal), offset)
        return h

    def eval(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence[Fraction]) -> str:
        v = self.eval(x)
        return "0" if v == 0 else ("+" if v > 0 else "-")

    def as_equation(self) -> tuple[Vec, Fraction]:
        return (self.normal, self.offset)


def canonicalize_equation(normal: Vec, offset: Fraction) -> tuple[Hyperplane, bool]:
    """Canonical hyperplane plus whether the normal orientation was flipped."""
    if is_zero_vec(normal):
        raise ValueError("hyperplane normal must be nonzero")
    scaled, factor = primitive_scaled(normal)
    off = offset * factor
    flipped = False
    first = next(x for x in scaled if x != 0)
    if first < 0:
        scaled = tuple(-x for x in scaled)
        off = -off
        flipped = True
    return Hyperplane(scaled, off), flipped


def _validate_offsets(values: Sequence[Fraction], what: str) -> tuple[Fraction, ...]:
    vals = tuple(rat(v) for v in values)
    if not vals:
        raise ValueError(f"{what}: offset list must be nonempty")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError(f"{what}: offsets must be strictly increasing, got {vals}")
    return vals


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class DeformedBraidSpec:
    """Offsets a_ij for the hyperplanes x_i - x_j = a_ij^(k), 1 <= i < j <= n."""

    n: int
    offsets: tuple[tuple[tuple[int, int], tuple[Fraction, ...]], ...]

    @staticmethod
    def make(n: int, offsets: Mapping[tuple[int, int], Sequence]) -> "DeformedBraidSpec":
        if n < 1:
            raise ValueError("n must be >= 1")
        expected = _pairs(n)
        table = []
        for pair in expected:
            if pair not in offsets:
                raise ValueError(f"missing offsets for pair {pair}")
            table.append((pair, _validate_offsets(offsets[pair], f"pair {pair}")))
        extra = set(offsets) - set(expected)
        if extra:
            raise ValueError(f"offsets given for invalid pairs {sorted(extra)}")
        return DeformedBraidSpec(n, tuple(table))

    def offsets_for(self, i: int, j: int) -> tuple[Fraction, ...]:
        for pair, vals in self.offsets:
            if pair == (i, j):
                return vals
        raise KeyError((i, j))

    def pairs(self):
        return self.offsets

    @property
    def max_abs_offset(self) -> Fraction:
        best = ZERO
        for _, vals in self.offsets:
            for v in vals:
                if abs(v) > best:
                    best = abs(v)
        return best


@dataclass(frozen=True)
class TypeBSpec:
    """Non-degenerate type-B deformation: x_i - x_j = a, x_i + x_j = b, x_i = c."""

    n: int
    diff_offsets: tuple[tuple[tuple[int, int], tuple[Fraction, ...]], ...]
    sum_offsets: tuple[tuple[tuple[int, int], tuple[Fraction, ...]], ...]
    axis_offsets: tuple[tuple[int, tuple[Fraction, ...]], ...]

    @staticmethod
    def make(
        n: int,
        diff_offsets: Mapping[tuple[int, int], Sequence],
        sum_offsets: Mapping[tuple[int, int], Sequence],
        axis_offsets: Mapping[int, Sequence],
    ) -> "TypeBSpec":
        if n < 1:
            raise ValueError("n must be >= 1")
        expected = _pairs(n)
        for name, table in (("diff", diff_offsets), ("sum", sum_offsets)):
            missing = set(expected) - set(table)
            if missing:
                raise ValueError(f"{name} offsets missing pairs {sorted(missing)}")
            extra = set(table) - set(expected)
            if extra:
                raise ValueError(f"{name} offsets for invalid pairs {sorted(extra)}")
        missing_axis = set(range(1, n + 1)) - set(axis_offsets)
        if missing_axis:
            raise ValueError(f"axis offsets missing indices {sorted(missing_axis)}")
        diffs = tuple((p, _validate_offsets(diff_offsets[p], f"diff {p}")) for p in expected)
        sums = tuple((p, _validate_offsets(sum_offsets[p], f"sum {p}")) for p in expected)
        axes = tuple((i, _validate_offsets(axis_offsets[i], f"axis {i}")) for i in range(1, n + 1))
        return TypeBSpec(n, diffs, sums, axes)

    @property
    def max_abs_offset(self) -> Fraction:
        best = ZERO
        for table in (self.diff_offsets, self.sum_offsets, self.axis_offsets):
            for _, vals in table:
                for v in vals:
                    if abs(v) > best:
                        best = abs(v)
        return best


Spec = Union[DeformedBraidSpec, TypeBSpec, None]


@dataclass(frozen=True)
class Arrangement:
    ambient_dim: int
    hyperplanes: tuple[Hyperplane, ...]
    kind: str  # "generic" | "deformed_braid" | "type_b"
    spec: Spec
    normal_span_basis: tuple[Vec, ...]

    def __post_init__(self):
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise ValueError("duplicate hyperplanes in arrangement")

    @property
    def num_hyperplanes(self) -> int:
        return len(self.hyperplanes)


def _normal_span(hyperplanes: Sequence[Hyperplane], n: int) -> tuple[Vec, ...]:
    if not hyperplanes:
        return ()
    reduced, _ = linalg.rref([h.normal for h in hyperplanes])
    return reduced


def _assemble(hyperplanes: Sequence[Hyperplane], n: int, kind: str, spec: Spec) -> Arrangement:
    hs = tuple(hyperplanes)
    return Arrangement(n, hs, kind, spec, _normal_span(hs, n))


def _diff_normal(n: int, i: int, j: int) -> Vec:
    return tuple(ONE if k == i else (-ONE if k == j else ZERO) for k in range(1, n + 1))


def _sum_normal(n: int, i: int, j: int) -> Vec:
    return tuple(ONE if k in (i, j) else ZERO for k in range(1, n + 1))


def _axis_normal(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(1, n + 1))


def build_deformed_braid(spec: DeformedBraidSpec) -> Arrangement:
    hyperplanes = []
    for (i, j), vals in spec.pairs():
        normal = _diff_normal(spec.n, i, j)
        for a in vals:
            hyperplanes.append(Hyperplane(normal, a))
    return _assemble(hyperplanes, spec.n, "deformed_braid", spec)


FAMILIES = ("braid", "shi", "catalan", "semiorder", "linial")


def family_spec(family: str, n: int, a: int = 1) -> DeformedBraidSpec:
    """Per-pair offsets of the classic families (a = extension parameter)."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if a < 1:
        raise ValueError("extension parameter a must be >= 1")
    if family == "braid":
        offsets = [ZERO]
    elif family == "shi":
        offsets = [Fraction(k) for k in range(-a + 1, a + 1)]
    elif family == "catalan":
        offsets = [Fraction(k) for k in range(-a, a + 1)]
    elif family == "semiorder":
        offsets = [Fraction(k) for k in range(-a, a + 1) if k != 0]
    else:  # linial
        offsets = [ONE]
    return DeformedBraidSpec.make(n, {pair: offsets for pair in _pairs(n)})


def build_family(family: str, n: int, a: int = 1) -> Arrangement:
    return build_deformed_braid(family_spec(family, n, a))


def build_type_b(spec: TypeBSpec) -> Arrangement:
    n = spec.n
    hyperplanes = []
    for (i, j), vals in spec.diff_offsets:
        normal = _diff_normal(n, i, j)
        for a in vals:
            hyperplanes.append(Hyperplane(normal, a))
    for (i, j), vals in spec.sum_offsets:
        normal = _sum_normal(n, i, j)
        for b in vals:
            hyperplanes.append(Hyperplane(normal, b))
    for i, vals in spec.axis_offsets:
        normal = _axis_normal(n, i)
        for c in vals:
            hyperplanes.append(Hyperplane(normal, c))
    return _assemble(hyperplanes, n, "type_b", spec)


def build_generic(hyperplanes: Iterable[tuple[Sequence[Fraction], Fraction]], ambient_dim: int) -> Arrangement:
    """Generic arrangement from (normal, offset) pairs; canonicalizes and dedupes."""
    seen = {}
    for normal, offset in hyperplanes:
        if len(normal) != ambient_dim:
            raise DimensionMismatchError("hyperplane normal of wrong length")
        h = Hyperplane.canonical(tuple(normal), rat(offset))
        seen.setdefault(h, None)
    return _assemble(tuple(seen), ambient_dim, "generic", None)


# --- derived arrangements ---------------------------------------------------


@dataclass(frozen=True)
class Restriction:
    """Arrangement induced on a flat, with the affine chart used.

    arrangement lives in R^k, k = flat.dim, via x = point + basis @ u.
    hyperplane_map records, per hyperplane of base, how it meets the flat:
    ("zero",) contains it, ("const", sign) misses it with constant sign,
    ("proj", idx, flipped) restricts to arrangement.hyperplanes[idx].
    """

    base: Arrangement
    flat: Flat
    arrangement: Arrangement
    point: Vec
    basis: tuple[Vec, ...]
    hyperplane_map: tuple[tuple, ...]

    def to_ambient(self, u: Sequence[Fraction]) -> Vec:
        x = list(self.point)
        for coord, direction in zip(u, self.basis):
            if coord != 0:
                x = [xi + coord * di for xi, di in zip(x, direction)]
        return tuple(x)


def _flat_inside_hyperplane(X: Flat, point: Vec, basis: tuple[Vec, ...], h: Hyperplane) -> bool:
    if h.eval(point) != 0:
        return False
    return all(dot(h.normal, v) == 0 for v in basis)


def is_flat_of(A: Arrangement, X: Flat) -> bool:
    """True iff X is an intersection of hyperplanes of A (or the ambient space)."""
    if X.ambient_dim != A.ambient_dim:
        return False
    point, basis = X.chart()
    containing = [
        h.as_equation()
        for h in A.hyperplanes
        if _flat_inside_hyperplane(X, point, basis, h)
    ]
    return flat_from_hyperplanes(containing, A.ambient_dim) == X


def restrict_to_flat(A: Arrangement, X: Flat) -> Restriction:
    """Restriction A/X: distinct nonempty H intersect X with X not inside H.

    Raises ValueError when X is not a flat of A.
    """
    if not is_flat_of(A, X):
        raise ValueError("X is not a flat of the arrangement")
    point, basis = X.chart()
    return _restrict(A, X, point, basis, len(basis))


def _restrict(A: Arrangement, X: Flat, point: Vec, basis: tuple[Vec, ...], k: int) -> Restriction:
    sub_hyperplanes: list[Hyperplane] = []
    sub_index: dict[Hyperplane, int] = {}
    mapping: list[tuple] = []
    for h in A.hyperplanes:
        w = tuple(dot(h.normal, v) for v in basis)
        d = h.eval(point)  # value of normal.x - offset on the flat when w = 0
        if is_zero_vec(w):
            if d == 0:
                mapping.append(("zero",))
            else:
                mapping.append(("const", "+" if d > 0 else "-"))
            continue
        sub_h, flipped = canonicalize_equation(w, h.offset - dot(h.normal, point))
        idx = sub_index.get(sub_h)
        if idx is None:
            idx = len(sub_hyperplanes)
            sub_index[sub_h] = idx
            sub_hyperplanes.append(sub_h)
        mapping.append(("proj", idx, flipped))
    sub = _assemble(tuple(sub_hyperplanes), k, "generic", None)
    return Restriction(A, X, sub, point, basis, tuple(mapping))


def centralize(A: Arrangement) -> Arrangement:
    """Zero all offsets and merge duplicates.

    A deformed braid arrangement centralizes to the braid arrangement; a
    type-B deformation centralizes to the corresponding Coxeter-type one.
    """
    seen: dict[Hyperplane, None] = {}
    for h in A.hyperplanes:
        seen.setdefault(Hyperplane.canonical(h.normal, ZERO), None)
    hyperplanes = tuple(seen)
    if A.kind == "deformed_braid" and A.spec is not None:
        spec = DeformedBraidSpec.make(A.spec.n, {p: [ZERO] for p in _pairs(A.spec.n)})
        return _assemble(hyperplanes, A.ambient_dim, "deformed_braid", spec)
    if A.kind == "type_b" and A.spec is not None:
        n = A.spec.n
        spec = TypeBSpec.make(
            n,
            {p: [ZERO] for p in _pairs(n)},
            {p: [ZERO] for p in _pairs(n)},
            {i: [ZERO] for i in range(1, n + 1)},
        )
        return _assemble(hyperplanes, A.ambient_dim, "type_b", spec)
    return _assemble(hyperplanes, A.ambient_dim, "generic", None)


def localize(A: Arrangement, V: Flat) -> Arrangement:
    """Sub-arrangement of hyperplanes containing V or disjoint from V.

    V must be a flat of centralize(A); order is inherited from A.
    """
    if not is_flat_of(centralize(A), V):
        raise ValueError("V is not a flat of the centralization")
    point, basis = V.chart()
    kept = []
    for h in A.hyperplanes:
        w_zero = all(dot(h.normal, v) == 0 for v in basis)
        if not w_zero:
            continue  # H meets V in a proper subset, so neither contains nor misses it
        kept.append(h)  # h.eval(point) == 0 means V inside H, otherwise disjoint
    return _assemble(tuple(kept), A.ambient_dim, "generic", None)


def induced_subarrangement(spec: DeformedBraidSpec, S: Sequence[int]) -> DeformedBraidSpec:
    """Relabelled spec on [k] keeping only pairs inside the sorted subset S."""
    members = sorted(set(S))
    if not members:
        raise ValueError("S must be nonempty")
    if members[0] < 1 or members[-1] > spec.n:
        raise ValueError(f"S out of range for n={spec.n}")
    k = len(members)
    table = {}
    for a in range(k):
        for b in range(a + 1, k):
            table[(a + 1, b + 1)] = spec.offsets_for(members[a], members[b])
    return DeformedBraidSpec.make(k, table)
