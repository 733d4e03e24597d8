"""Separator families, their closures, the node, and envelopes of a marked
vertex sequence.

Given marked vertices a_0..a_{k-1} and a cycle-length bound, for each j:

* ``separators[j]``: cycles of length <= max_len separating a_j from every
  other marked vertex (none of them on the cycle);
* ``x_set[j]``: union over those cycles of (a_j's side + the cycle);
* ``external[j]``: vertices of ``x_set[j]`` on no a_j side, i.e. only on
  separator cycles;
* ``nod``: the single vertex lying on every path between any two nonempty
  X-sets, when there is one;
* ``h_set[j]``: vertices reachable from ``x_set[j]`` without passing ``nod``;
* ``env[j]``: ``h_set[j]`` plus, for each cycle inside ``h_set[j]`` and the
  node, the side away from an auxiliary marked vertex a_{j'}.

The construction is computed for any input; nothing here assumes the
sequence has special structure, so facts that only hold for well-behaved sequences are
reported as diagnostics rather than enforced.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import config
from .cycles import enumerate_cycles
from .embedding import Embedding
from .errors import HypothesisNotMet, TooFewMembers
from .separation import CycleTuple, as_cycle, r_predicate, side_assignment, side_sets


@dataclass(frozen=True)
class MarkedSequence:
    seq: tuple[int, ...]
    max_len: int = config.DEFAULT_MAX_LEN

    def __post_init__(self) -> None:
        object.__setattr__(self, "seq", tuple(self.seq))
        if len(self.seq) < 3:
            raise TooFewMembers("a marked sequence needs at least three vertices")
        if len(set(self.seq)) != len(self.seq):
            raise ValueError("marked vertices must be distinct")
        if self.max_len < 3:
            raise ValueError("max_len must be at least 3")

    def __len__(self) -> int:
        return len(self.seq)

    def others(self, j: int) -> tuple[int, ...]:
        return self.seq[:j] + self.seq[j + 1 :]


def _check(e: Embedding, m: MarkedSequence, j: int) -> None:
    for a in m.seq:
        e.index(a)
    if not 0 <= j < len(m):
        raise IndexError(f"index {j} outside 0..{len(m) - 1}")


def separators_of(e: Embedding, m: MarkedSequence, j: int, budget: int | None = None) -> tuple[CycleTuple, ...]:
    """Cycles avoiding every marked vertex with a_j alone on its side."""
    _check(e, m, j)
    marked = set(m.seq)
    allowed = [v for v in e.vertices if v not in marked]
    ia = e.index(m.seq[j])
    rest = [e.index(a) for a in m.others(j)]
    out = []
    for c in enumerate_cycles(e, m.max_len, within=allowed, budget=budget):
        labels = side_assignment(e, c).labels
        mine = labels[ia]
        if all(labels[i] != mine for i in rest):
            out.append(c)
    return tuple(out)


def separators_by_filter(e: Embedding, m: MarkedSequence, j: int, budget: int | None = None) -> tuple[CycleTuple, ...]:
    """Same family as :func:`separators_of`, found by filtering every cycle
    through the R predicate.  Kept as an independent cross-check."""
    _check(e, m, j)
    a = m.seq[j]
    out = []
    for c in enumerate_cycles(e, m.max_len, budget=budget):
        if any(x in c for x in m.seq):
            continue
        if not any(r_predicate(e, a, b, c.canonical) for b in m.others(j)):
            out.append(c)
    return tuple(out)


def x_set(
    e: Embedding, m: MarkedSequence, j: int, separators: Sequence[CycleTuple] | None = None
) -> tuple[frozenset[int], frozenset[int]]:
    """(X_j, external vertices of X_j)."""
    if separators is None:
        separators = separators_of(e, m, j)
    a = m.seq[j]
    xs: set[int] = set()
    positive: set[int] = set()
    for c in separators:
        pos, _ = side_sets(e, c, a)
        positive |= pos
        xs |= pos | c.vertex_set
    return frozenset(xs), frozenset(xs - positive)


def min_vertex_cut(e: Embedding, a: set[int], b: set[int]) -> int:
    """Maximum number of vertex-disjoint a-b paths (= minimum a-b vertex separator).

    Unit-capacity max-flow on the split graph: every vertex becomes an
    in/out pair joined by a capacity-1 arc.
    """
    cap: dict[tuple[Any, Any], int] = {}
    adj: dict[Any, list[Any]] = {}

    def arc(x: Any, y: Any, c: int) -> None:
        if (x, y) not in cap:
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
            cap.setdefault((y, x), 0)
        cap[(x, y)] = cap.get((x, y), 0) + c

    big = len(e.vertices) + 1
    for v in e.vertices:
        arc(("in", v), ("out", v), 1)
    for u, v in e.edges:
        arc(("out", u), ("in", v), big)
        arc(("out", v), ("in", u), big)
    for v in a:
        arc("S", ("in", v), big)
    for v in b:
        arc(("out", v), "T", big)
    flow = 0
    while True:
        parent: dict[Any, Any] = {"S": None}
        todo = deque(["S"])
        while todo and "T" not in parent:
            x = todo.popleft()
            for y in adj.get(x, ()):
                if y not in parent and cap[(x, y)] > 0:
                    parent[y] = x
                    todo.append(y)
        if "T" not in parent:
            return flow
        y = "T"
        while parent[y] is not None:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1


def single_vertex_cuts(e: Embedding, xa: frozenset[int], xb: frozenset[int]) -> set[int]:
    """Vertices u such that every path from xa to xb passes through u."""
    out = set()
    for u in e.vertices:
        src = xa - {u}
        dst = xb - {u}
        if src & dst:
            continue
        if not (e.reachable(src, avoid={u}) & dst):
            out.add(u)
    return out


def nod(e: Embedding, m: MarkedSequence, xsets: dict[int, frozenset[int]]) -> tuple[int | None, dict[str, Any]]:
    """Common cut vertex of all pairs of nonempty X-sets, with diagnostics."""
    live = [j for j in range(len(m)) if xsets[j]]
    diag: dict[str, Any] = {"pairs": []}
    if len(live) < 2:
        diag["reason"] = "fewer than two nonempty X-sets"
        return None, diag
    common: set[int] | None = None
    for i, j in ((i, j) for i in live for j in live if i < j):
        cuts = single_vertex_cuts(e, xsets[i], xsets[j])
        diag["pairs"].append(
            {"pair": [i, j], "cut_vertices": sorted(cuts), "min_cut": min_vertex_cut(e, set(xsets[i]), set(xsets[j]))}
        )
        common = cuts if common is None else common & cuts
    assert common is not None
    if not common:
        diag["reason"] = "no single vertex separates every pair of X-sets"
        diag["no_common_cut"] = True
        return None, diag
    if len(common) > 1:
        diag["ambiguous"] = sorted(common)
    diag["reason"] = "ok"
    return min(common), diag


def h_set(e: Embedding, xs: frozenset[int], node: int | None) -> frozenset[int]:
    if not xs:
        return frozenset()
    avoid = () if node is None else (node,)
    return frozenset(e.reachable(xs, avoid=avoid))


def env_with_aux(
    e: Embedding, m: MarkedSequence, j: int, aux: int, hs: frozenset[int], node: int | None, budget: int | None = None
) -> frozenset[int]:
    """env(a_j) computed with a_aux as the auxiliary marked vertex.

    Cycles passing through a_aux have no side "away from a_aux" and are
    skipped.
    """
    if aux == j:
        raise ValueError("the auxiliary index must differ from j")
    out = set(hs)
    support = set(hs) | ({node} if node is not None else set())
    if len(support) >= 3:
        b = m.seq[aux]
        for c in enumerate_cycles(e, min(m.max_len, len(support)), within=support, budget=budget):
            if b in c:
                continue
            _, neg = side_sets(e, c, b)
            out |= neg
    return frozenset(out)


@dataclass
class EnvelopeData:
    seq: tuple[int, ...]
    max_len: int
    separators: dict[int, tuple[CycleTuple, ...]]
    x_set: dict[int, frozenset[int]]
    external: dict[int, frozenset[int]]
    nod: int | None
    h_set: dict[int, frozenset[int]]
    env: dict[int, frozenset[int]]
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        def idx_map(d: dict[int, Any], f) -> dict[str, Any]:
            return {str(j): f(v) for j, v in sorted(d.items())}

        return {
            "seq": list(self.seq),
            "max_len": self.max_len,
            "completeness": f"separators are complete among cycles of length <= {self.max_len}",
            "separators": idx_map(self.separators, lambda cs: [list(c.canonical) for c in cs]),
            "x_set": idx_map(self.x_set, sorted),
            "external": idx_map(self.external, sorted),
            "nod": self.nod,
            "h_set": idx_map(self.h_set, sorted),
            "env": idx_map(self.env, sorted),
            "diagnostics": self.diagnostics,
        }


def compute_envelope(e: Embedding, m: MarkedSequence, budget: int | None = None) -> EnvelopeData:
    """Run the staged pipeline separators -> X-sets -> node -> H-sets -> envelopes."""
    k = len(m)
    for a in m.seq:
        e.index(a)
    seps = {j: separators_of(e, m, j, budget) for j in range(k)}
    xs, ext = {}, {}
    for j in range(k):
        xs[j], ext[j] = x_set(e, m, j, seps[j])
    node, nod_diag = nod(e, m, xs)
    hs = {j: h_set(e, xs[j], node) for j in range(k)}
    envs = {}
    mismatched = []
    for j in range(k):
        first = 0 if j != 0 else 1
        last = k - 1 if j != k - 1 else k - 2
        envs[j] = env_with_aux(e, m, j, first, hs[j], node, budget)
        if last != first and env_with_aux(e, m, j, last, hs[j], node, budget) != envs[j]:
            mismatched.append(j)
    diagnostics = {
        "nod": nod_diag,
        "env_aux_mismatch": mismatched,
        "x_pairwise_overlap": [
            [i, j, sorted(xs[i] & xs[j])] for i in range(k) for j in range(i + 1, k) if len(xs[i] & xs[j]) > 1
        ],
    }
    return EnvelopeData(m.seq, m.max_len, seps, xs, ext, node, hs, envs, diagnostics)


def env_of(e: Embedding, m: MarkedSequence, j: int, budget: int | None = None) -> frozenset[int]:
    return compute_envelope(e, m, budget).env[j]


def verify_cycle_nesting(
    e: Embedding,
    c: CycleTuple | Sequence[int],
    c2: CycleTuple | Sequence[int],
    d: CycleTuple | Sequence[int],
    a: int,
    a2: int,
    b: int,
    v: int,
) -> str:
    """Check the closure of c around a against the closure of d around b.

    Hypotheses (HypothesisNotMet otherwise): a, a2 off c and c2; the
    closures of (c, a) and (c2, a2) meet in at most {v}; d is joined to c2
    by a path avoiding v; c and d meet in at most {v}; b is off d.

    Returns "contained" when closure(c, a) is inside closure(d, b),
    "touching" when the two closures meet in at most {v}, and "neither"
    when both fail (a counterexample).
    """
    c, c2, d = as_cycle(e, c), as_cycle(e, c2), as_cycle(e, d)
    for x in (a, a2, b, v):
        e.index(x)
    if a in c or a in c2 or a2 in c or a2 in c2:
        raise HypothesisNotMet("a and a2 must lie off both c and c2")
    if b in d:
        raise HypothesisNotMet("b must lie off d")
    closure = side_sets(e, c, a)[0] | c.vertex_set
    closure2 = side_sets(e, c2, a2)[0] | c2.vertex_set
    if not closure & closure2 <= {v}:
        raise HypothesisNotMet("the closures of (c, a) and (c2, a2) meet outside {v}")
    if not e.reachable(c2.vertex_set - {v}, avoid={v}) & (d.vertex_set - {v}):
        raise HypothesisNotMet("d is not joined to c2 by a path avoiding v")
    if not c.vertex_set & d.vertex_set <= {v}:
        raise HypothesisNotMet("c and d meet outside {v}")
    closure_d = side_sets(e, d, b)[0] | d.vertex_set
    if closure <= closure_d:
        return "contained"
    if closure & closure_d <= {v}:
        return "touching"
    return "neither"
