"""Randomised property checks, with shrinking and replayable witnesses.

Each property draws one instance per trial from a seeded generator, runs
its check, and records a failure as ``(trial seed, document, witness)``.
Stacked triangulations are shrunk by deleting inserted vertices newest
first while the check still fails.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import config, kernels
from .cages import (
    Cage,
    cage_axiom_holds,
    fits_into,
    nest_axiom_holds,
    order_family,
    region,
    satisfying_orders,
    symmetry_class,
)
from .cycles import PathTuple, enumerate_cycles
from .embedding import Embedding, euler_characteristic, load_embedding
from .envelope import MarkedSequence, compute_envelope, env_with_aux, separators_by_filter, separators_of
from .errors import UnknownProperty
from .generators import GeneratorConfig, gen, shrink_stacked
from .oracle import geometric_oracle
from .separation import (
    CycleTuple,
    as_cycle,
    crosses,
    joint_classes,
    side_assignment,
    single_side,
    vertex_faces_agree,
    verify_non_touching,
)

SideFn = Callable[[Embedding, CycleTuple], Sequence[int]]


def default_side(e: Embedding, c: CycleTuple) -> Sequence[int]:
    return side_assignment(e, c).labels


@dataclass
class Context:
    side: SideFn = default_side


@dataclass
class Outcome:
    samples: int
    witness: dict[str, Any] | None = None


# -- sampling helpers -----------------------------------------------------------


def random_cycle(e: Embedding, rng: random.Random, max_len: int | None = None, tries: int = 50) -> CycleTuple | None:
    """Loop of a non-backtracking random walk, optionally capped in length."""
    verts = e.vertices
    for _ in range(tries):
        start = rng.choice(verts)
        walk = [start]
        pos = {start: 0}
        prev = None
        while True:
            x = walk[-1]
            options = [w for w in e.neighbors(x) if w != prev]
            if not options:
                break
            w = rng.choice(options)
            if w in pos:
                loop = walk[pos[w] :]
                if len(loop) >= 3 and (max_len is None or len(loop) <= max_len):
                    return as_cycle(e, loop)
                break
            pos[w] = len(walk)
            walk.append(w)
            prev = x
    return None


def ball(e: Embedding, v: int, radius: int) -> set[int]:
    dist = {v: 0}
    todo = deque([v])
    while todo:
        x = todo.popleft()
        if dist[x] == radius:
            continue
        for w in e.neighbors(x):
            if w not in dist:
                dist[w] = dist[x] + 1
                todo.append(w)
    return set(dist)


def local_cycles(e: Embedding, v: int, max_len: int, radius: int = 2) -> list[CycleTuple]:
    return list(enumerate_cycles(e, max_len, through=[v], within=ball(e, v, radius)))


def random_path(e: Embedding, rng: random.Random, a: int, b: int) -> PathTuple:
    """Loop-erased random walk from a to b (the graph must be connected)."""
    walk = [a]
    pos = {a: 0}
    while walk[-1] != b:
        w = rng.choice(e.neighbors(walk[-1]))
        if w in pos:
            for x in walk[pos[w] + 1 :]:
                del pos[x]
            del walk[pos[w] + 1 :]
        else:
            pos[w] = len(walk)
            walk.append(w)
    return PathTuple(tuple(walk))


def overlapping_pair(e: Embedding, rng: random.Random, max_len: int = 6) -> tuple[CycleTuple, CycleTuple] | None:
    """Two distinct cycles through a common vertex."""
    v = rng.choice(e.vertices)
    near = local_cycles(e, v, max_len)
    if len(near) < 2:
        return None
    c1, c2 = rng.sample(near, 2)
    return c1, c2


def cycle_pair(e: Embedding, rng: random.Random) -> tuple[CycleTuple, CycleTuple] | None:
    if rng.random() < 0.5:
        return overlapping_pair(e, rng)
    c1, c2 = random_cycle(e, rng), random_cycle(e, rng)
    if c1 is None or c2 is None or c1 == c2:
        return None
    return c1, c2


def is_run_on_cycle(run: Sequence[int], c: CycleTuple) -> bool:
    """True when ``run`` visits cycle vertices in cyclic order, in one direction."""
    ring = list(c.raw)
    for seq in (ring, ring[::-1]):
        k = seq.index(run[0])
        rotated = seq[k:] + seq[:k]
        it = iter(rotated)
        if all(x in it for x in run):
            return True
    return False


def intersection_is_path(c1: CycleTuple, c2: CycleTuple) -> bool:
    """The common subgraph (shared vertices, shared edges) is one path."""
    common = c1.vertex_set & c2.vertex_set
    if not common:
        return False
    edges = c1.edge_set & c2.edge_set
    if len(edges) != len(common) - 1:
        return False
    adj: dict[int, set[int]] = {v: set() for v in common}
    for edge in edges:
        a, b = tuple(edge)
        adj[a].add(b)
        adj[b].add(a)
    start = next(iter(common))
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj[x] - seen:
            seen.add(y)
            todo.append(y)
    return seen == common


def disjoint_paths(e: Embedding, u: int, v: int, max_len: int) -> list[PathTuple]:
    """Greedy internally disjoint u-v paths with an interior, by repeated BFS."""
    used: set[int] = set()
    out = []
    while True:
        prev = {u: None}
        todo = deque([u])
        while todo:
            x = todo.popleft()
            for w in e.neighbors(x):
                if w in prev or w in used:
                    continue
                if x == u and w == v:
                    continue
                prev[w] = x
                if w != v:
                    todo.append(w)
        if v not in prev:
            return out
        path = [v]
        while path[-1] != u:
            path.append(prev[path[-1]])
        if len(path) - 1 > max_len:
            return out
        out.append(PathTuple(tuple(reversed(path))))
        used |= set(path[1:-1])


# -- checks -------------------------------------------------------------------------


def _cyc(c: CycleTuple) -> list[int]:
    return list(c.canonical)


def check_euler(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    chi = euler_characteristic(e)
    t = e.tables
    total = sum(len(f) for f in t.face_darts)
    if chi != 2 or total != 2 * t.m:
        return Outcome(1, {"euler": chi, "dart_total": total, "edges": t.m})
    return Outcome(1)


def check_jordan(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    seen, bad = kernels.jordan_census(e.tables, 8, config.budget())
    vid = e.tables.vid
    if bad:
        cyc, ncomp = bad[0]
        return Outcome(seen, {"cycle": [vid[i] for i in cyc], "components": ncomp})
    for _ in range(10):
        c = random_cycle(e, rng, max_len=8)
        if c is not None and not vertex_faces_agree(e, side_assignment(e, c)):
            return Outcome(seen, {"cycle": _cyc(c), "reason": "vertex label disagrees with an incident face"})
    return Outcome(seen)


def check_oracle(e: Embedding, doc: dict, rng: random.Random, ctx: Context, queries: int = 500) -> Outcome:
    coords = e.coords
    assert coords is not None
    done = 0
    while done < queries:
        c = random_cycle(e, rng)
        if c is None:
            break
        labels = ctx.side(e, c)
        off = [v for v in e.vertices if v not in c]
        if not off:
            continue
        pairing: dict[int, int] = {}
        back: dict[int, int] = {}
        for v in rng.sample(off, min(len(off), 20, queries - done)):
            comb = labels[e.index(v)]
            geo = geometric_oracle(coords, c.raw, v)
            done += 1
            if pairing.setdefault(comb, geo) != geo or back.setdefault(geo, comb) != comb:
                return Outcome(done, {"cycle": list(c.raw), "vertex": v, "combinatorial": comb, "geometric": geo})
    return Outcome(done)


def check_prop_a(e: Embedding, doc: dict, rng: random.Random, ctx: Context, pairs: int = 25) -> Outcome:
    done = 0
    for _ in range(pairs * 4):
        if done == pairs:
            break
        c = random_cycle(e, rng)
        if c is None:
            continue
        labels = ctx.side(e, c)
        sides: dict[int, list[int]] = {0: [], 1: []}
        for v, lab in zip(e.vertices, labels):
            if lab in sides:
                sides[lab].append(v)
        if not sides[0] or not sides[1]:
            continue
        a, b = rng.choice(sides[0]), rng.choice(sides[1])
        path = random_path(e, rng, a, b).vertices
        done += 1
        lab = [labels[e.index(x)] if x not in c else -1 for x in path]
        ok = False
        for j, jj in itertools.combinations(range(len(path)), 2):
            if jj - j < 2 or lab[j] < 0 or lab[jj] < 0 or lab[j] == lab[jj]:
                continue
            run = path[j + 1 : jj]
            if all(x in c for x in run) and is_run_on_cycle(run, c):
                ok = True
                break
        if not ok:
            return Outcome(done, {"cycle": list(c.raw), "path": list(path)})
    return Outcome(done)


def check_prop_b(
    e: Embedding, doc: dict, rng: random.Random, ctx: Context, pairs: int = 10, with_edges: bool = False
) -> Outcome:
    done = 0
    for _ in range(pairs * 4):
        if done == pairs:
            break
        pair = cycle_pair(e, rng)
        if pair is None:
            continue
        c1, c2 = pair
        done += 1
        if crosses(e, c1, c2, with_edges) != crosses(e, c2, c1, with_edges):
            return Outcome(done, {"c1": _cyc(c1), "c2": _cyc(c2)})
    return Outcome(done)


def check_prop_b_edges(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    return check_prop_b(e, doc, rng, ctx, with_edges=True)


def check_prop_c(e: Embedding, doc: dict, rng: random.Random, ctx: Context, pairs: int = 10) -> Outcome:
    done = 0
    for _ in range(pairs * 4):
        if done == pairs:
            break
        pair = cycle_pair(e, rng)
        if pair is None:
            continue
        c1, c2 = pair
        if not single_side(e, c1, c2):
            continue
        done += 1
        classes = joint_classes(e, c1, c2).classes
        if len(classes) > 3:
            return Outcome(done, {"c1": _cyc(c1), "c2": _cyc(c2), "classes": [sorted(k) for k in classes]})
    return Outcome(done)


def check_single_path_meet(e: Embedding, doc: dict, rng: random.Random, ctx: Context, pairs: int = 10) -> Outcome:
    done = 0
    for _ in range(pairs * 6):
        if done == pairs:
            break
        pair = overlapping_pair(e, rng)
        if pair is None or not intersection_is_path(*pair):
            continue
        c1, c2 = pair
        done += 1
        if not single_side(e, c1, c2) or not single_side(e, c2, c1):
            return Outcome(done, {"c1": _cyc(c1), "c2": _cyc(c2)})
    return Outcome(done)


def _family(e: Embedding, doc: dict, rng: random.Random) -> list[PathTuple] | None:
    meta = doc.get("meta", {})
    if "paths" in meta:
        pool = [PathTuple(tuple(p)) for p in meta["paths"]]
    else:
        verts = list(e.vertices)
        pool = []
        for _ in range(20):
            u, v = rng.sample(verts, 2)
            if e.has_edge(u, v):
                continue
            pool = disjoint_paths(e, u, v, 6)
            if len(pool) >= 3:
                break
        if len(pool) < 3:
            return None
    size = rng.randint(3, min(5, len(pool)))
    chosen = rng.sample(pool, size)
    return [p if rng.random() < 0.5 else p.reversed() for p in chosen]


def check_order(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    family = _family(e, doc, rng)
    if family is None:
        return Outcome(0)
    cage = order_family(e, family)
    assert isinstance(cage, Cage)
    wit = {"family": [list(p.vertices) for p in family]}
    if not cage_axiom_holds(e, cage):
        return Outcome(1, {**wit, "reason": "returned order fails the axiom"})
    found = satisfying_orders(e, cage)
    expected = symmetry_class(range(len(cage)), cyclic=True)
    if found != expected:
        return Outcome(1, {**wit, "reason": "satisfying orders differ", "found": sorted(map(list, found))})
    return Outcome(1)


def check_non_touching(e: Embedding, doc: dict, rng: random.Random, ctx: Context, pairs: int = 4) -> Outcome:
    done = 0
    for _ in range(pairs * 6):
        if done == pairs:
            break
        pair = overlapping_pair(e, rng, max_len=6)
        if pair is None:
            continue
        c1, c2 = pair
        if len(c1.vertex_set & c2.vertex_set) < 2:
            continue
        done += 1
        report = verify_non_touching(e, c1, c2)
        if not report.ok:
            bad = report.counterexamples[0]
            return Outcome(done, {"c1": _cyc(c1), "c2": _cyc(c2), "region": sorted(bad.region)})
    return Outcome(done)


def check_onion(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    rings = doc["meta"]["rings"]
    family = [as_cycle(e, r) for r in rings]
    rng.shuffle(family)
    nest = order_family(e, family)
    got = [c.vertex_set for c in nest.cycles]
    want = [frozenset(r) for r in rings]
    if not nest_axiom_holds(e, nest) or (got != want and got != want[::-1]):
        return Outcome(1, {"recovered": [_cyc(c) for c in nest.cycles]})
    return Outcome(1)


def check_grapes(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    meta = doc["meta"]
    data = compute_envelope(e, MarkedSequence(meta["marked"], 6))
    if data.nod != meta["hub"]:
        return Outcome(1, {"nod": data.nod, "hub": meta["hub"], "diagnostics": data.diagnostics["nod"]})
    return Outcome(1)


def check_planted_cage(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    meta = doc["meta"]
    family = [PathTuple(tuple(p)) for p in meta["paths"]]
    rng.shuffle(family)
    cage = order_family(e, family)
    seq = meta["marked"]
    res = fits_into(e, seq, cage)
    if not res.fits:
        return Outcome(1, {"reason": res.reason})
    for tri, w in res.triples.items():
        members = {seq[i] for i in tri}
        if not all(w[t] < w[t + 1] for t in range(3)):
            return Outcome(1, {"reason": "witness indices not increasing", "triple": list(tri)})
        for t in range(3):
            if region(e, cage, w[t], w[t + 1]).vertices & members != {seq[tri[t]]}:
                return Outcome(1, {"reason": "witness region does not isolate its element", "triple": list(tri)})
    for (j, k), i in res.coverage.items():
        if seq[i] not in region(e, cage, j, k).vertices:
            return Outcome(1, {"reason": "coverage entry outside its region", "region": [j, k]})
    return Outcome(1)


def _marked(e: Embedding, doc: dict, rng: random.Random) -> list[int]:
    meta = doc.get("meta", {})
    if "marked" in meta:
        return list(meta["marked"])
    return rng.sample(list(e.vertices), 3)


def check_separators(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    m = MarkedSequence(_marked(e, doc, rng), 6)
    for j in range(len(m)):
        a, b = separators_of(e, m, j), separators_by_filter(e, m, j)
        if a != b:
            return Outcome(1, {"seq": list(m.seq), "j": j, "direct": len(a), "filtered": len(b)})
    return Outcome(1)


def check_env_aux(e: Embedding, doc: dict, rng: random.Random, ctx: Context) -> Outcome:
    m = MarkedSequence(_marked(e, doc, rng), 6)
    data = compute_envelope(e, m)
    for j in range(len(m)):
        envs = {
            aux: env_with_aux(e, m, j, aux, data.h_set[j], data.nod) for aux in range(len(m)) if aux != j
        }
        if len(set(envs.values())) > 1:
            return Outcome(1, {"seq": list(m.seq), "j": j, "env": {str(k): sorted(v) for k, v in envs.items()}})
    return Outcome(1)


# -- instances ------------------------------------------------------------------------


def _mixed(seed: int, rng: random.Random) -> GeneratorConfig:
    kind = rng.choice(("stacked_triangulation", "stacked_triangulation", "onion", "grapes", "planted_cage"))
    if kind == "onion":
        k = rng.randint(1, 5)
        return GeneratorConfig(kind, rng.randint(3 * k, 200), seed, k=k)
    if kind == "grapes":
        k = rng.randint(3, 6)
        return GeneratorConfig(kind, rng.randint(4 * k + 1, 120), seed, k=k, touching=rng.random() < 0.3)
    if kind == "planted_cage":
        p = rng.randint(4, 10)
        return GeneratorConfig(kind, 200, seed, paths=p, spread=rng.choice((1, 3, 5, 7)))
    return GeneratorConfig(kind, rng.randint(3, 200), seed)


def _stacked(lo: int, hi: int) -> Callable[[int, random.Random], GeneratorConfig]:
    return lambda seed, rng: GeneratorConfig("stacked_triangulation", rng.randint(lo, hi), seed)


def _onion(seed: int, rng: random.Random) -> GeneratorConfig:
    k = rng.randint(3, 5)
    return GeneratorConfig("onion", k * rng.randint(3, 8), seed, k=k)


def _grapes(seed: int, rng: random.Random) -> GeneratorConfig:
    k = rng.randint(3, 5)
    return GeneratorConfig("grapes", 4 * k + 1 + rng.randint(0, 3 * k), seed, k=k)


def _cage(seed: int, rng: random.Random) -> GeneratorConfig:
    p = rng.randint(4, 7)
    return GeneratorConfig("planted_cage", 100, seed, paths=p, spread=rng.choice((1, 3, 5)))


def _cage_or_stacked(seed: int, rng: random.Random) -> GeneratorConfig:
    if rng.random() < 0.5:
        return GeneratorConfig("planted_cage", 100, seed, paths=rng.randint(4, 6), spread=3)
    return GeneratorConfig("stacked_triangulation", rng.randint(12, 40), seed)


def _grapes_or_stacked(seed: int, rng: random.Random) -> GeneratorConfig:
    if rng.random() < 0.5:
        return _grapes(seed, rng)
    return GeneratorConfig("stacked_triangulation", rng.randint(10, 22), seed)


@dataclass(frozen=True)
class Property:
    id: str
    description: str
    instance: Callable[[int, random.Random], GeneratorConfig]
    check: Callable[[Embedding, dict, random.Random, Context], Outcome]


PROPERTIES: dict[str, Property] = {
    p.id: p
    for p in (
        Property("euler", "|V| - |E| + |F| = 2 and faces use every dart once", _mixed, check_euler),
        Property("jordan_split", "every cycle of length <= 8 splits the dual into two parts", _stacked(10, 60), check_jordan),
        Property("oracle_agreement", "combinatorial sides match ray casting", _stacked(10, 60), check_oracle),
        Property("prop_A_subpath", "a path between separated vertices runs along the cycle", _stacked(10, 40), check_prop_a),
        Property("prop_B_symmetry", "lying on one side of each other is symmetric", _stacked(8, 40), check_prop_b),
        Property(
            "prop_B_symmetry_edges",
            "crossing is symmetric once edges off the other cycle count",
            _stacked(8, 40),
            check_prop_b_edges,
        ),
        Property("prop_C_three_classes", "non-crossing pairs leave at most three classes", _stacked(8, 40), check_prop_c),
        Property("single_path_meet", "cycles meeting in one path do not cross", _stacked(8, 40), check_single_path_meet),
        Property("order_property", "the axiom-satisfying orders of a cage form one dihedral class", _cage_or_stacked, check_order),
        Property("non_touching", "each complementary region is one side of a cycle in the union", _stacked(10, 30), check_non_touching),
        Property("planted_onion", "onion rings come back as a nest in order", _onion, check_onion),
        Property("planted_grapes", "the node of a grape instance is its hub", _grapes, check_grapes),
        Property("planted_cage", "planted marks fit into the planted cage", _cage, check_planted_cage),
        Property("separator_crosscheck", "direct separator search equals filtering all cycles", _grapes_or_stacked, check_separators),
        Property("env_aux_invariance", "envelopes do not depend on the auxiliary index", _grapes_or_stacked, check_env_aux),
    )
}


# -- driver ----------------------------------------------------------------------------


def trial_seed(seed: int, trial: int) -> int:
    return (seed * 1_000_003 + trial) % (1 << 64)


@dataclass
class Failure:
    trial: int
    seed: int
    document: dict[str, Any]
    witness: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"trial": self.trial, "seed": self.seed, "document": self.document, "witness": self.witness}


@dataclass
class PropertyReport:
    property: str
    trials: int
    seed: int
    instances: int = 0
    samples: int = 0
    failures: list[Failure] = field(default_factory=list)
    errors: list[dict[str, Any]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and not self.errors

    def to_json(self, timing: bool = False) -> dict[str, Any]:
        out = {
            "property": self.property,
            "trials": self.trials,
            "seed": self.seed,
            "instances": self.instances,
            "samples": self.samples,
            "failures": [f.to_json() for f in self.failures],
            "errors": self.errors,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def get_property(pid: str) -> Property:
    try:
        return PROPERTIES[pid]
    except KeyError:
        raise UnknownProperty(f"unknown property {pid!r}; known: {', '.join(PROPERTIES)}") from None


def _run(prop: Property, doc: dict, seed: int, ctx: Context) -> Outcome:
    return prop.check(load_embedding(doc), doc, random.Random(seed), ctx)


def verify(pid: str, trials: int = 200, seed: int = 0, side_fn: SideFn | None = None) -> PropertyReport:
    """Run property ``pid`` on ``trials`` fresh instances."""
    prop = get_property(pid)
    ctx = Context(side_fn or default_side)
    report = PropertyReport(pid, trials, seed)
    start = time.perf_counter()
    for t in range(trials):
        s = trial_seed(seed, t)
        cfg = prop.instance(s, random.Random(s))
        doc = gen(cfg)
        try:
            out = _run(prop, doc, s, ctx)
        except Exception as exc:  # a crash is a finding, not a harness failure
            report.errors.append({"trial": t, "seed": s, "config": cfg.to_json(), "error": f"{type(exc).__name__}: {exc}"})
            continue
        report.instances += 1
        report.samples += out.samples
        if out.witness is None:
            continue
        if cfg.kind == "stacked_triangulation":
            doc = shrink_stacked(doc, lambda d: _run(prop, d, s, ctx).witness is not None)
            out = _run(prop, doc, s, ctx)
        report.failures.append(Failure(t, s, doc, out.witness or {}))
    report.elapsed = time.perf_counter() - start
    return report


def replay(report: dict[str, Any], side_fn: SideFn | None = None) -> list[dict[str, Any]]:
    """Re-run every failure in a serialized report; returns one record per failure."""
    prop = get_property(report["property"])
    ctx = Context(side_fn or default_side)
    out = []
    for f in report.get("failures", []):
        res = _run(prop, f["document"], f["seed"], ctx)
        out.append({"trial": f["trial"], "seed": f["seed"], "fails": res.witness is not None, "witness": res.witness})
    return out
