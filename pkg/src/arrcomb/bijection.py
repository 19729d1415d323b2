"""The level decomposition map and its inverse.

A level-l face maps to an ordered l-partition of [n] (the strong components
of its digraph, cross edges forward) together with one level-1 face of the
induced sub-arrangement per block, read off by restricting the witness to the
block's coordinates.  The inverse re-assembles a point by translating each
block's witness with a block-constant shift large enough that every
cross-block difference clears all offsets, then locates the containing face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .arrangement import Arrangement, DeformedBraidSpec, build_deformed_braid, induced_subarrangement
from .faces import Face, face_containing, face_digraph, order_components
from .rationals import ONE, ZERO


@dataclass(frozen=True)
class OrderedPartition:
    """Tuple of disjoint nonempty sorted blocks covering [n]."""

    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def make(blocks: Sequence[Sequence[int]], n: int) -> "OrderedPartition":
        norm = tuple(tuple(sorted(b)) for b in blocks)
        seen: set[int] = set()
        for b in norm:
            if not b:
                raise ValueError("empty block in ordered partition")
            for v in b:
                if v in seen:
                    raise ValueError(f"element {v} appears in two blocks")
                seen.add(v)
        if seen != set(range(1, n + 1)):
            raise ValueError(f"blocks do not cover [{n}]")
        return OrderedPartition(norm)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


@lru_cache(maxsize=None)
def _arrangement_of(spec: DeformedBraidSpec) -> Arrangement:
    return build_deformed_braid(spec)


def phi(spec: DeformedBraidSpec, F: Face) -> tuple[OrderedPartition, tuple[Face, ...]]:
    """Decompose a face into (ordered partition, level-1 parts).

    Block p is the p-th strong component of the face digraph; part p is the
    face of the induced sub-arrangement containing the witness coordinates
    restricted to that block.
    """
    A = _arrangement_of(spec)
    G = order_components(face_digraph(A, F))
    blocks = G.components
    parts = []
    for block in blocks:
        sub = induced_subarrangement(spec, block)
        y = tuple(F.witness[i - 1] for i in block)
        parts.append(face_containing(_arrangement_of(sub), y))
    return OrderedPartition.make(blocks, spec.n), tuple(parts)


def phi_inverse(
    spec: DeformedBraidSpec, pi: OrderedPartition, parts: Sequence[Face]
) -> Face:
    """Reassemble the unique face mapping to (pi, parts).

    Each block's witness is translated by a block-constant shift, strictly
    decreasing across blocks, so that every cross-block coordinate difference
    exceeds the largest absolute offset of the spec.
    """
    blocks = OrderedPartition.make(pi.blocks, spec.n).blocks
    if len(parts) != len(blocks):
        raise ValueError("need exactly one part per block")
    for block, part in zip(blocks, parts):
        if part.level != 1:
            raise ValueError("parts must have level 1")
        if len(part.witness) != len(block):
            raise ValueError("part witness does not match block size")
    coords = [c for part in parts for c in part.witness]
    spread = (max(coords) - min(coords)) if coords else ZERO
    gap = spec.max_abs_offset + spread + ONE
    l = len(blocks)
    x: list[Fraction] = [ZERO] * spec.n
    for p, (block, part) in enumerate(zip(blocks, parts), start=1):
        shift = (l - p) * gap
        for pos, coord in zip(block, part.witness):
            x[pos - 1] = coord + shift
    return face_containing(_arrangement_of(spec), tuple(x))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All partitions of items into unordered nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1 :]
        yield [[first]] + smaller


def ordered_partitions(n: int, l: int) -> Iterator[OrderedPartition]:
    """All ordered partitions of [n] into exactly l blocks."""
    from itertools import permutations

    for partition in set_partitions(list(range(1, n + 1))):
        if len(partition) != l:
            continue
        for perm in permutations(partition):
            yield OrderedPartition.make(perm, n)
