"""Cages, nests, their regions, and the fits-into relation.

A cage is an ordered family of at least three u-v paths meeting only at
the poles u != v; a nest is an ordered family of at least three cycles that
are pairwise disjoint or pairwise meet in one common pole.  Indices are
0-based positions in the family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .cycles import PathTuple, enumerate_paths, make_path
from .embedding import Embedding
from .errors import (
    AxiomViolation,
    IndexOutOfRange,
    NotACycle,
    NotAFamily,
    TooFewMembers,
)
from .separation import CycleTuple, as_cycle, canonicalize_cycle, side_assignment


@dataclass(frozen=True, eq=False)
class Cage:
    poles: tuple[int, int]
    paths: tuple[PathTuple, ...]
    _cycles: dict = field(default_factory=dict, repr=False)
    _regions: dict = field(default_factory=dict, repr=False)

    @property
    def pol(self) -> frozenset[int]:
        return frozenset(self.poles)

    @property
    def members(self) -> tuple[PathTuple, ...]:
        return self.paths

    def __len__(self) -> int:
        return len(self.paths)

    def open_member(self, j: int) -> tuple[int, ...]:
        """Interior vertices of path j (the path minus the poles)."""
        return self.paths[j].interior

    def member_vertices(self, j: int) -> frozenset[int]:
        return frozenset(self.paths[j].vertices)

    def cycle(self, e: Embedding, i: int, k: int) -> CycleTuple:
        """The cycle formed by path i followed by path k reversed."""
        key = (min(i, k), max(i, k))
        c = self._cycles.get(key)
        if c is None:
            a, b = self.paths[key[0]].vertices, self.paths[key[1]].vertices
            c = canonicalize_cycle(e, a + b[-2:0:-1])
            self._cycles[key] = c
        return c


@dataclass(frozen=True, eq=False)
class Nest:
    pole: int | None
    cycles: tuple[CycleTuple, ...]
    _regions: dict = field(default_factory=dict, repr=False)
    _sides: dict = field(default_factory=dict, repr=False)

    @property
    def pol(self) -> frozenset[int]:
        return frozenset() if self.pole is None else frozenset({self.pole})

    @property
    def members(self) -> tuple[CycleTuple, ...]:
        return self.cycles

    def __len__(self) -> int:
        return len(self.cycles)

    def open_member(self, j: int) -> tuple[int, ...]:
        return tuple(v for v in self.cycles[j].canonical if v != self.pole)

    def member_vertices(self, j: int) -> frozenset[int]:
        return self.cycles[j].vertex_set

    def inner_side(self, e: Embedding, j: int) -> frozenset[int]:
        """The side N_j of cycle j, chosen so that N_j grows with j."""
        hit = self._sides.get(j)
        if hit is not None:
            return hit
        sa = side_assignment(e, self.cycles[j])
        ref = 1 if j == 0 else 0
        probe = self.open_member(ref)[0]
        lab = sa.labels[e.index(probe)]
        if j == 0:
            lab = 1 - lab
        out = frozenset(sa.members(lab))
        self._sides[j] = out
        return out


Structure = Union[Cage, Nest]


@dataclass(frozen=True)
class Region:
    kind: str  # "cage" or "nest"
    j: int
    k: int
    vertices: frozenset[int]


# -- construction and axioms --------------------------------------------------


def _label(e: Embedding, c: CycleTuple, v: int) -> int:
    return side_assignment(e, c).labels[e.index(v)]


def cage_axiom_holds(e: Embedding, cage: Cage) -> bool:
    """Check that cycle(i, k) separates the open paths j and l exactly when
    one of j, l sits strictly between i and k."""
    p = len(cage)
    reps = [cage.open_member(j)[0] for j in range(p)]
    for i, k in itertools.combinations(range(p), 2):
        c = cage.cycle(e, i, k)
        labels = [None if j in (i, k) else _label(e, c, reps[j]) for j in range(p)]
        others = [j for j in range(p) if j not in (i, k)]
        for j, l in itertools.combinations(others, 2):
            separated = labels[j] != labels[l]
            interleaved = (i < j < k) != (i < l < k)
            if separated != interleaved:
                return False
    return True


def nest_axiom_holds(e: Embedding, nest: Nest) -> bool:
    """For i < j < k, cycle j separates cycle k minus j from cycle i minus j,
    and the chosen sides are strictly increasing."""
    q = len(nest)
    for i, j, k in itertools.combinations(range(q), 3):
        cj = nest.cycles[j]
        sa = side_assignment(e, cj)
        li = {sa.labels[e.index(v)] for v in nest.cycles[i].vertex_set - cj.vertex_set}
        lk = {sa.labels[e.index(v)] for v in nest.cycles[k].vertex_set - cj.vertex_set}
        if len(li) != 1 or len(lk) != 1 or li == lk:
            return False
    for j in range(q - 1):
        if not nest.inner_side(e, j) < nest.inner_side(e, j + 1):
            return False
    return True


def axiom_holds(e: Embedding, d: Structure) -> bool:
    return cage_axiom_holds(e, d) if isinstance(d, Cage) else nest_axiom_holds(e, d)


def _check_paths(e: Embedding, paths: Sequence[PathTuple]) -> tuple[int, int]:
    if len(paths) < 3:
        raise TooFewMembers("a cage needs at least three paths")
    ends = {frozenset(p.endpoints) for p in paths}
    if len(ends) != 1 or len(next(iter(ends))) != 2:
        raise NotAFamily("paths must share the same two distinct endpoints")
    u, v = paths[0].endpoints
    for p in paths:
        if not p.interior:
            raise NotAFamily(f"path {list(p.vertices)} has no interior vertex")
    for a, b in itertools.combinations(paths, 2):
        if set(a.vertices) & set(b.vertices) != {u, v}:
            raise NotAFamily(f"paths {list(a.vertices)} and {list(b.vertices)} meet off the poles")
    return u, v


def make_cage(e: Embedding, poles: tuple[int, int], paths: Sequence[PathTuple | Sequence[int]], check: bool = True) -> Cage:
    """Build a cage in the given order; with ``check`` the axioms are verified."""
    u, v = poles
    norm = []
    for p in paths:
        p = p if isinstance(p, PathTuple) else make_path(e, p)
        if p.vertices[0] == v and p.vertices[-1] == u:
            p = p.reversed()
        norm.append(p)
    _check_paths(e, norm)
    if norm[0].vertices[0] != u or norm[0].vertices[-1] != v:
        raise NotAFamily("poles do not match the path endpoints")
    cage = Cage((u, v), tuple(norm))
    if check and not cage_axiom_holds(e, cage):
        raise AxiomViolation("the given path order does not satisfy the cage axiom")
    return cage


def _check_cycles(cycles: Sequence[CycleTuple]) -> int | None:
    if len(cycles) < 3:
        raise TooFewMembers("a nest needs at least three cycles")
    if len(set(cycles)) != len(cycles):
        raise NotAFamily("a cycle is repeated")
    meets = {frozenset(a.vertex_set & b.vertex_set) for a, b in itertools.combinations(cycles, 2)}
    if meets == {frozenset()}:
        return None
    if len(meets) == 1:
        (common,) = meets
        if len(common) == 1:
            (pole,) = common
            return pole
    raise NotAFamily("cycles must be pairwise disjoint or pairwise meet in one common vertex")


def make_nest(e: Embedding, cycles: Sequence[CycleTuple | Sequence[int]], check: bool = True) -> Nest:
    cs = [as_cycle(e, c) for c in cycles]
    nest = Nest(_check_cycles(cs), tuple(cs))
    if check and not nest_axiom_holds(e, nest):
        raise AxiomViolation("the given cycle order does not satisfy the nest axiom")
    return nest


def order_family(e: Embedding, family: Sequence[PathTuple | CycleTuple | Sequence[int]]) -> Structure:
    """Order an unordered family of pole-to-pole paths or cycles.

    Paths are ordered by the rotation at the smaller pole, starting from the
    path whose first edge ends at the least vertex id.  Cycles are ordered
    by side containment, starting from the end cycle with the least
    canonical form.  The result is checked against the axioms.

    Raises:
        NotAFamily: the members do not intersect as a cage or nest must.
        AxiomViolation: no valid order exists (e.g. cycles through a common
            vertex that sit side by side instead of nested).
    """
    items = list(family)
    if not items:
        raise TooFewMembers("empty family")
    if all(isinstance(x, CycleTuple) for x in items):
        return _order_nest(e, items)
    if all(isinstance(x, PathTuple) for x in items):
        return _order_cage(e, items)
    seqs = [tuple(x) for x in items]
    ends = {frozenset((s[0], s[-1])) for s in seqs}
    if len(ends) == 1 and len(next(iter(ends))) == 2 and all(len(set(s)) == len(s) for s in seqs):
        try:
            return _order_cage(e, [make_path(e, s) for s in seqs])
        except NotAFamily:
            pass
    try:
        return _order_nest(e, [canonicalize_cycle(e, s) for s in seqs])
    except NotACycle as exc:
        raise NotAFamily(str(exc)) from None


def _order_cage(e: Embedding, paths: list[PathTuple]) -> Cage:
    u, v = _check_paths(e, paths)
    u, v = min(u, v), max(u, v)
    oriented = [p if p.vertices[0] == u else p.reversed() for p in paths]
    rot = e.rotation[u]
    oriented.sort(key=lambda p: rot.index(p.vertices[1]))
    start = min(range(len(oriented)), key=lambda j: oriented[j].vertices[1])
    ordered = oriented[start:] + oriented[:start]
    cage = Cage((u, v), tuple(ordered))
    if not cage_axiom_holds(e, cage):
        raise AxiomViolation("rotation order fails the cage axiom; the embedding is inconsistent")
    return cage


def _order_nest(e: Embedding, cycles: list[CycleTuple]) -> Nest:
    pole = _check_cycles(cycles)

    def rep(c: CycleTuple) -> int:
        return next(v for v in c.canonical if v != pole)

    ends = []
    for c in cycles:
        sa = side_assignment(e, c)
        labs = {sa.labels[e.index(rep(d))] for d in cycles if d is not c}
        if len(labs) == 1:
            ends.append(c)
    if not ends:
        raise AxiomViolation("no cycle of the family has all others on one side")
    first = min(ends, key=lambda c: c.canonical)
    probe = rep(first)

    def inner_size(c: CycleTuple) -> int:
        sa = side_assignment(e, c)
        return len(sa.members(sa.labels[e.index(probe)]))

    rest = sorted((c for c in cycles if c is not first), key=lambda c: (inner_size(c), c.canonical))
    nest = Nest(pole, (first, *rest))
    if not nest_axiom_holds(e, nest):
        raise AxiomViolation("the cycles are not nested")
    return nest


# -- regions ----------------------------------------------------------------


def _check_index(d: Structure, *idx: int) -> None:
    for j in idx:
        if not 0 <= j < len(d):
            raise IndexOutOfRange(f"index {j} outside 0..{len(d) - 1}")


def cage_region(e: Embedding, c: Cage, j: int, k: int) -> Region:
    """C_{j,k}: the side of cycle(j, k) holding the paths strictly between
    j and k, equivalently the side away from the paths outside [j, k].

    Every available witness path is evaluated; disagreement raises
    AxiomViolation.
    """
    _check_index(c, j, k)
    if j == k:
        raise IndexOutOfRange("region indices must differ")
    j, k = min(j, k), max(j, k)
    hit = c._regions.get((j, k))
    if hit is not None:
        return hit
    cyc = c.cycle(e, j, k)
    sa = side_assignment(e, cyc)
    answers = set()
    for l in range(len(c)):
        if l in (j, k):
            continue
        lab = sa.labels[e.index(c.open_member(l)[0])]
        if j < l < k:
            answers.add(frozenset(sa.members(lab)))
        else:
            answers.add(frozenset(sa.members(1 - lab)))
    if len(answers) != 1:
        raise AxiomViolation(f"C_{{{j},{k}}} depends on the witness path")
    region = Region("cage", j, k, answers.pop())
    c._regions[(j, k)] = region
    return region


def nest_region(e: Embedding, n: Nest, j: int, k: int) -> Region:
    """N_{j,k} = N_k minus (cycle j and N_j), for j < k."""
    _check_index(n, j, k)
    if j == k:
        raise IndexOutOfRange("region indices must differ")
    j, k = min(j, k), max(j, k)
    hit = n._regions.get((j, k))
    if hit is not None:
        return hit
    verts = n.inner_side(e, k) - n.cycles[j].vertex_set - n.inner_side(e, j)
    region = Region("nest", j, k, frozenset(verts))
    n._regions[(j, k)] = region
    return region


def region(e: Embedding, d: Structure, j: int, k: int) -> Region:
    return cage_region(e, d, j, k) if isinstance(d, Cage) else nest_region(e, d, j, k)


@dataclass(frozen=True)
class Interior:
    int: frozenset[int]
    ext: frozenset[int]
    clint: frozenset[int]


def interior(e: Embedding, d: Structure) -> Interior:
    inside: set[int] = set()
    for j, k in itertools.combinations(range(len(d)), 2):
        inside |= region(e, d, j, k).vertices
    inn = frozenset(inside)
    return Interior(inn, frozenset(e.vertices) - inn, inn | d.pol)


# -- fits into ----------------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    fits: bool
    reason: str
    triples: dict[tuple[int, int, int], tuple[int, int, int, int]]
    coverage: dict[tuple[int, int], int]

    def __bool__(self) -> bool:
        return self.fits

    def to_json(self) -> dict:
        return {
            "fits": self.fits,
            "reason": self.reason,
            "triples": [{"seq_indices": list(t), "structure_indices": list(w)} for t, w in sorted(self.triples.items())],
            "coverage": [{"region": list(r), "seq_index": i} for r, i in sorted(self.coverage.items())],
        }


def _triple_witness(
    regions: dict[tuple[int, int], frozenset[int]], size: int, triple: tuple[int, int, int]
) -> tuple[int, int, int, int] | None:
    t = set(triple)

    def search(level: int, start: int, acc: list[int]):
        if level == 3:
            return tuple(acc)
        want = triple[level]
        for nxt in range(start + 1, size):
            if regions[(start, nxt)] & t == {want}:
                found = search(level + 1, nxt, acc + [nxt])
                if found:
                    return found
        return None

    for j0 in range(size):
        found = search(0, j0, [j0])
        if found:
            return found
    return None


def fits_into(e: Embedding, seq: Sequence[int], d: Structure) -> FitResult:
    """Decide whether a vertex sequence fits into a cage or nest.

    Three conditions are checked: no element lies on a member; every
    triple i0 < i1 < i2 is captured one element per region by some
    j0 < j1 < j2 < j3; and every region C_{j,k}, j < k, holds an element.
    ``triples`` maps each triple to its witness, ``coverage`` each region
    to the first element inside it.
    """
    seq = [e.check_vertex(a) for a in seq]
    if len(seq) < 3:
        raise TooFewMembers("the sequence needs at least three elements")
    if len(set(seq)) != len(seq):
        raise ValueError("sequence elements must be distinct")
    on = set().union(*(d.member_vertices(j) for j in range(len(d))))
    bad = [a for a in seq if a in on]
    if bad:
        return FitResult(False, f"vertex {bad[0]} lies on a member", {}, {})
    size = len(d)
    regions = {
        (j, k): region(e, d, j, k).vertices for j, k in itertools.combinations(range(size), 2)
    }
    coverage = {}
    for jk, verts in regions.items():
        hit = next((i for i, a in enumerate(seq) if a in verts), None)
        if hit is None:
            return FitResult(False, f"region {jk} contains no element", {}, coverage)
        coverage[jk] = hit
    triples = {}
    for tri in itertools.combinations(range(len(seq)), 3):
        w = _triple_witness(regions, size, tuple(seq[i] for i in tri))
        if w is None:
            return FitResult(False, f"no separating indices for positions {tri}", triples, coverage)
        triples[tri] = w
    return FitResult(True, "ok", triples, coverage)


# -- trimming and search --------------------------------------------------------


def trim(e: Embedding, d: Structure, keep: Iterable[int]) -> Structure:
    """Sub-cage or sub-nest on the kept indices, order preserved."""
    idx = sorted(set(keep))
    if len(idx) < 3:
        raise TooFewMembers("keep at least three members")
    _check_index(d, *idx)
    if isinstance(d, Cage):
        return make_cage(e, d.poles, [d.paths[j] for j in idx])
    return make_nest(e, [d.cycles[j] for j in idx])


def satisfying_orders(e: Embedding, d: Structure) -> set[tuple[int, ...]]:
    """All permutations of ``d``'s members (as index tuples) that satisfy the axiom."""
    out = set()
    for perm in itertools.permutations(range(len(d))):
        if isinstance(d, Cage):
            cand: Structure = Cage(d.poles, tuple(d.paths[j] for j in perm))
        else:
            cand = Nest(d.pole, tuple(d.cycles[j] for j in perm))
        if axiom_holds(e, cand):
            out.add(perm)
    return out


def symmetry_class(order: Sequence[int], cyclic: bool) -> set[tuple[int, ...]]:
    """The order and its inversion, plus all rotations when ``cyclic``."""
    base = tuple(order)
    variants = {base, base[::-1]}
    if cyclic:
        variants = {v[r:] + v[:r] for v in variants for r in range(len(v))}
    return variants


def maximal_cages(
    e: Embedding, u: int, v: int, max_len: int, limit: int = 10, budget: int | None = None
) -> list[Cage]:
    """Greedy maximal families of internally disjoint u-v paths, as cages.

    Paths with an interior are taken shortest first; each candidate seeds a
    greedy pass.  Distinct families with at least three paths are returned
    in discovery order, at most ``limit`` of them.
    """
    paths = sorted(
        (p for p in enumerate_paths(e, u, v, max_len, budget=budget) if p.interior),
        key=lambda p: (len(p), p.vertices),
    )
    seen = set()
    out = []
    for seed in paths:
        chosen = [seed]
        used = set(seed.interior)
        for p in paths:
            if p is seed or used & set(p.interior):
                continue
            chosen.append(p)
            used |= set(p.interior)
        key = frozenset(p.vertices for p in chosen)
        if len(chosen) < 3 or key in seen:
            continue
        seen.add(key)
        out.append(_order_cage(e, chosen))
        if len(out) >= limit:
            break
    return out
