"""Separation of vertices by simple cycles.

Removing the dual edges of a cycle's edges splits the dual graph into two
components (the combinatorial Jordan curve theorem).  Every off-cycle vertex
inherits the label of the component holding its incident faces; component 0
is the one containing face 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Sequence

from . import config, kernels
from .embedding import Embedding
from .errors import (
    BudgetExceeded,
    HypothesisNotMet,
    NotACycle,
    SupportTooLarge,
    VertexOnCycle,
)


class Side(IntEnum):
    ON_CYCLE = -1
    SIDE0 = 0
    SIDE1 = 1


@dataclass(frozen=True, eq=False)
class CycleTuple:
    """A simple cycle, remembered both as given and in canonical form.

    Equality, hashing and ordering use the canonical tuple only: the least
    vertex first, read in the direction whose second vertex is smaller.
    """

    raw: tuple[int, ...]
    canonical: tuple[int, ...]

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.canonical)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        c = self.canonical
        return frozenset((min(a, b), max(a, b)) for a, b in zip(c, c[1:] + c[:1]))

    def __len__(self) -> int:
        return len(self.canonical)

    def __iter__(self):
        return iter(self.canonical)

    def __contains__(self, v: object) -> bool:
        return v in self.vertex_set

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycleTuple):
            return self.canonical == other.canonical
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __lt__(self, other: CycleTuple) -> bool:
        return (len(self.canonical), self.canonical) < (len(other.canonical), other.canonical)

    def __repr__(self) -> str:
        return f"CycleTuple({list(self.canonical)})"


def canonical_form(seq: Sequence[int]) -> tuple[int, ...]:
    """Least rotation/reflection of a duplicate-free cyclic sequence."""
    k = seq.index(min(seq))
    rot = tuple(seq[k:]) + tuple(seq[:k])
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def collapse_repeats(raw: Sequence[int]) -> list[int]:
    """Drop cyclically contiguous repetitions: [1, 1, 2, 3, 3, 1] -> [1, 2, 3]."""
    out: list[int] = []
    for v in raw:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def canonicalize_cycle(e: Embedding, raw: Sequence[int]) -> CycleTuple:
    """Validate a vertex sequence read along a simple cycle and canonicalize it.

    Raises:
        UnknownVertex: a vertex id is not in the embedding.
        NotACycle: a vertex repeats non-contiguously, two consecutive
            vertices are not adjacent, or fewer than 3 vertices remain.
    """
    raw = tuple(raw)
    if not raw:
        raise NotACycle("empty sequence")
    for v in raw:
        e.index(v)
    seq = collapse_repeats(raw)
    if len(set(seq)) != len(seq):
        raise NotACycle(f"{list(raw)} repeats a vertex non-contiguously")
    if len(seq) < 3:
        raise NotACycle(f"{list(raw)} has fewer than 3 distinct vertices")
    for a, b in zip(seq, seq[1:] + seq[:1]):
        if not e.has_edge(a, b):
            raise NotACycle(f"{a} and {b} are not adjacent")
    return CycleTuple(raw, canonical_form(seq))


def as_cycle(e: Embedding, c: CycleTuple | Sequence[int]) -> CycleTuple:
    return c if isinstance(c, CycleTuple) else canonicalize_cycle(e, c)


@dataclass(frozen=True, eq=False)
class SideAssignment:
    """Side labels of every vertex and face with respect to one cycle."""

    embedding: Embedding = field(repr=False)
    cycle: CycleTuple
    labels: tuple[int, ...] = field(repr=False)
    face_labels: tuple[int, ...] = field(repr=False)
    n_components: int

    def side_of(self, v: int) -> Side:
        return Side(self.labels[self.embedding.index(v)])

    @property
    def side(self) -> dict[int, Side]:
        return {v: Side(lab) for v, lab in zip(self.embedding.vertices, self.labels)}

    @property
    def face_side(self) -> dict[int, Side]:
        return {f: Side(lab) for f, lab in enumerate(self.face_labels)}

    def members(self, label: int) -> set[int]:
        return {v for v, lab in zip(self.embedding.vertices, self.labels) if lab == label}

    def same_side(self, a: int, b: int) -> bool:
        la, lb = self.side_of(a), self.side_of(b)
        return la != Side.ON_CYCLE and la == lb


_CACHE_LIMIT = 1 << 15


def side_assignment(e: Embedding, c: CycleTuple | Sequence[int]) -> SideAssignment:
    c = as_cycle(e, c)
    cache = e._side_cache
    hit = cache.get(c.canonical)
    if hit is not None:
        return hit
    t = e.tables
    edge_mask = bytearray(t.m)
    vertex_mask = bytearray(t.n)
    ids = c.canonical
    for a, b in zip(ids, ids[1:] + ids[:1]):
        ia, ib = t.index[a], t.index[b]
        edge_mask[t.edge_index[(ia, ib) if ia < ib else (ib, ia)]] = 1
        vertex_mask[ia] = 1
    labels, face_labels, ncomp = kernels.side_labels(t, edge_mask, vertex_mask)
    sa = SideAssignment(e, c, tuple(labels), tuple(face_labels), ncomp)
    if len(cache) >= _CACHE_LIMIT:
        cache.clear()
    cache[c.canonical] = sa
    return sa


def vertex_faces_agree(e: Embedding, sa: SideAssignment) -> bool:
    """Every off-cycle vertex has all its incident faces in one component."""
    for v, lab in zip(e.vertices, sa.labels):
        if lab == -1:
            continue
        if {sa.face_labels[f] for f in e.faces_at(v)} != {lab}:
            return False
    return True


def r_predicate(e: Embedding, a: int, b: int, raw: Sequence[int]) -> bool:
    """R_n(a, b, c_1..c_n): the tuple reads a simple cycle avoiding a and b,
    and a, b lie on the same side of it.  Malformed tuples give False."""
    e.index(a)
    e.index(b)
    for v in raw:
        e.index(v)
    try:
        c = canonicalize_cycle(e, raw)
    except NotACycle:
        return False
    if a in c or b in c:
        return False
    return side_assignment(e, c).same_side(a, b)


def side_sets(e: Embedding, c: CycleTuple | Sequence[int], a: int) -> tuple[set[int], set[int]]:
    """(D+, D-): vertices on a's side of c, and those on the other side."""
    c = as_cycle(e, c)
    e.index(a)
    if a in c:
        raise VertexOnCycle(f"{a} lies on {list(c.canonical)}")
    sa = side_assignment(e, c)
    mine = sa.labels[e.index(a)]
    pos = {v for v, lab in zip(e.vertices, sa.labels) if lab == mine}
    neg = {v for v, lab in zip(e.vertices, sa.labels) if lab not in (-1, mine)}
    return pos, neg


def single_side(e: Embedding, c1: CycleTuple, c2: CycleTuple, with_edges: bool = False) -> bool:
    """True when the vertices of c1 off c2 lie on a single side of c2.

    With ``with_edges`` the edges of c1 that are not edges of c2 count too
    (an edge off c2 sits in one side, the side of its incident faces), which
    is the reading of c1 minus c2 as a set of points on the sphere.
    """
    sa = side_assignment(e, c2)
    rest = c1.vertex_set - c2.vertex_set
    labels = {sa.labels[e.index(v)] for v in rest}
    if with_edges:
        t = e.tables
        for a, b in c1.edge_set - c2.edge_set:
            d = t.dart_of[(t.index[a], t.index[b])]
            labels.add(sa.face_labels[t.face_of_dart[d]])
    return len(labels) <= 1


def crosses(
    e: Embedding, c1: CycleTuple | Sequence[int], c2: CycleTuple | Sequence[int], with_edges: bool = False
) -> bool:
    """True when c1 minus its common part with c2 meets both sides of c2.

    Only this direction is evaluated.  On vertices alone the relation is
    not symmetric once c1 uses chords of c2 (or the vertex set of one cycle
    contains the other's); with ``with_edges`` it is.
    """
    c1, c2 = as_cycle(e, c1), as_cycle(e, c2)
    if c1 == c2:
        raise HypothesisNotMet("crossing is only defined for distinct cycles")
    return not single_side(e, c1, c2, with_edges)


@dataclass(frozen=True)
class RegionPartition:
    support: frozenset[int]
    classes: tuple[frozenset[int], ...]

    def class_of(self, v: int) -> frozenset[int] | None:
        for cl in self.classes:
            if v in cl:
                return cl
        return None

    def __len__(self) -> int:
        return len(self.classes)


def _partition(e: Embedding, support: frozenset[int], cycles: Iterable[CycleTuple]) -> RegionPartition:
    rest = [v for v in e.vertices if v not in support]
    key: dict[int, tuple[int, ...]] = {v: () for v in rest}
    for c in cycles:
        sa = side_assignment(e, c)
        for v in rest:
            key[v] = key[v] + (sa.labels[e.index(v)],)
    groups: dict[tuple[int, ...], set[int]] = {}
    for v in rest:
        groups.setdefault(key[v], set()).add(v)
    classes = sorted((frozenset(g) for g in groups.values()), key=min)
    return RegionPartition(support, tuple(classes))


def joint_classes(e: Embedding, c1: CycleTuple | Sequence[int], c2: CycleTuple | Sequence[int]) -> RegionPartition:
    """Classes of the simultaneous same-side relation of two cycles."""
    c1, c2 = as_cycle(e, c1), as_cycle(e, c2)
    if c1 == c2:
        raise HypothesisNotMet("joint classes need two distinct cycles")
    return _partition(e, c1.vertex_set | c2.vertex_set, (c1, c2))


def cycles_within(e: Embedding, support: Iterable[int], max_len: int | None = None, budget: int | None = None) -> list[CycleTuple]:
    from .cycles import enumerate_cycles

    support = frozenset(support)
    if len(support) < 3:
        return []
    bound = len(support) if max_len is None else min(max_len, len(support))
    return list(enumerate_cycles(e, bound, within=support, budget=budget))


def complementary_regions(
    e: Embedding, support: Iterable[int], max_len: int | None = None, budget: int | None = None
) -> RegionPartition:
    """Classes of V minus ``support`` under "same side of every cycle inside support".

    ``max_len`` defaults to ``len(support)``, which makes the enumeration
    complete.  Raises SupportTooLarge past the cycle budget.
    """
    support = frozenset(e.check_vertex(v) for v in support)
    if max_len is not None and max_len < 3:
        raise ValueError("max_len must be at least 3")
    try:
        cycles = cycles_within(e, support, max_len, config.budget(budget))
    except BudgetExceeded as exc:
        raise SupportTooLarge(str(exc)) from None
    return _partition(e, support, cycles)


@dataclass(frozen=True)
class RegionWitness:
    region: frozenset[int]
    cycle: CycleTuple | None
    anchor: int


@dataclass(frozen=True)
class NonTouchingReport:
    witnesses: tuple[RegionWitness, ...]

    @property
    def counterexamples(self) -> tuple[RegionWitness, ...]:
        return tuple(w for w in self.witnesses if w.cycle is None)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_non_touching(
    e: Embedding, c1: CycleTuple | Sequence[int], c2: CycleTuple | Sequence[int], budget: int | None = None
) -> NonTouchingReport:
    """Match each complementary region of c1 ∪ c2 with a cycle d inside the
    union and a vertex b of the region such that region == D+_d(b)."""
    c1, c2 = as_cycle(e, c1), as_cycle(e, c2)
    if len(c1.vertex_set & c2.vertex_set) < 2:
        raise HypothesisNotMet("the two cycles must share at least two vertices")
    support = c1.vertex_set | c2.vertex_set
    try:
        cycles = cycles_within(e, support, budget=config.budget(budget))
    except BudgetExceeded as exc:
        raise SupportTooLarge(str(exc)) from None
    regions = _partition(e, support, cycles)
    out = []
    for region in regions.classes:
        b = min(region)
        ib = e.index(b)
        found = None
        for d in cycles:
            sa = side_assignment(e, d)
            lab = sa.labels[ib]
            if sum(1 for x in sa.labels if x == lab) == len(region) and sa.members(lab) == region:
                found = d
                break
        out.append(RegionWitness(region, found, b))
    return NonTouchingReport(tuple(out))
