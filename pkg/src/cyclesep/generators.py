"""Seeded generators for planar embedding documents.

Every generator places vertices at exact rational coordinates and derives
the rotation by sorting neighbours by angle, so the straight-line drawing is
the embedding.  The ``meta`` block records the planted structure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import BadConfig
from .oracle import ccw_order, fraction_to_json

KINDS = ("stacked_triangulation", "onion", "grapes", "planted_cage")

_GRID = 1 << 20


@dataclass(frozen=True)
class GeneratorConfig:
    kind: str = "stacked_triangulation"
    n: int = 10
    seed: int = 0
    emit_coords: bool = True
    k: int = 3
    paths: int = 4
    spread: int = 3
    touching: bool = False
    relabel: bool = True

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "n": self.n,
            "seed": self.seed,
            "emit_coords": self.emit_coords,
            "k": self.k,
            "paths": self.paths,
            "spread": self.spread,
            "touching": self.touching,
            "relabel": self.relabel,
        }


@dataclass
class _Builder:
    coords: dict[int, tuple[Fraction, Fraction]] = field(default_factory=dict)
    adj: dict[int, set[int]] = field(default_factory=dict)

    def add(self, x: Fraction, y: Fraction) -> int:
        v = len(self.coords)
        self.coords[v] = (x, y)
        self.adj[v] = set()
        return v

    def polar(self, r: float, angle: float) -> int:
        return self.add(_snap(r * math.cos(angle)), _snap(r * math.sin(angle)))

    def edge(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)

    def document(self, cfg: GeneratorConfig, meta: dict[str, Any], perm: list[int] | None = None) -> dict[str, Any]:
        if perm is None:
            perm = list(range(len(self.coords)))
        coords = {perm[v]: p for v, p in self.coords.items()}
        adj = {perm[v]: {perm[w] for w in ws} for v, ws in self.adj.items()}
        rotation = {v: ccw_order(coords[v], {w: coords[w] for w in adj[v]}) for v in sorted(adj)}
        doc: dict[str, Any] = {
            "vertices": sorted(adj),
            "rotation": {str(v): rotation[v] for v in sorted(adj)},
        }
        if cfg.emit_coords:
            doc["coords"] = {str(v): [fraction_to_json(coords[v][0]), fraction_to_json(coords[v][1])] for v in sorted(adj)}
        doc["meta"] = {"generator": cfg.to_json(), **meta}
        return doc


def _snap(x: float) -> Fraction:
    return Fraction(round(x * _GRID), _GRID)


def _centroid(*pts: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    return sum((p[0] for p in pts), Fraction(0)) / len(pts), sum((p[1] for p in pts), Fraction(0)) / len(pts)


def _stack_into(b: _Builder, rng: random.Random, faces: list[tuple[int, int, int]], count: int) -> list[list[int]]:
    """Insert ``count`` vertices at centroids of random triangles in ``faces`` (mutated)."""
    log = []
    for _ in range(count):
        i = rng.randrange(len(faces))
        x, y, z = faces[i]
        w = b.add(*_centroid(b.coords[x], b.coords[y], b.coords[z]))
        for t in (x, y, z):
            b.edge(w, t)
        faces[i] = (x, y, w)
        faces.extend([(y, z, w), (z, x, w)])
        log.append([w, x, y, z])
    return log


def stacked_triangulation(cfg: GeneratorConfig) -> dict[str, Any]:
    if cfg.n < 3:
        raise BadConfig("stacked_triangulation needs n >= 3")
    rng = random.Random(cfg.seed)
    b = _Builder()
    a = b.add(Fraction(0), Fraction(0))
    c = b.add(Fraction(1), Fraction(0))
    d = b.add(Fraction(0), Fraction(1))
    b.edge(a, c)
    b.edge(c, d)
    b.edge(d, a)
    log = _stack_into(b, rng, [(a, c, d)], cfg.n - 3)
    return b.document(cfg, {"insertions": log})


def onion(cfg: GeneratorConfig) -> dict[str, Any]:
    """``k`` concentric rings joined by spokes, with random diagonals."""
    k = cfg.k
    if k < 1:
        raise BadConfig("onion needs k >= 1")
    size = cfg.n // k
    if size < 3:
        raise BadConfig(f"onion with k={k} needs n >= {3 * k}")
    rng = random.Random(cfg.seed)
    b = _Builder()
    rings = []
    for r in range(k):
        rings.append([b.polar(r + 1, 2 * math.pi * i / size) for i in range(size)])
    for r, ring in enumerate(rings):
        for i in range(size):
            b.edge(ring[i], ring[(i + 1) % size])
            if r + 1 < k:
                outer = rings[r + 1]
                b.edge(ring[i], outer[i])
                pick = rng.randrange(3)
                if pick == 1:
                    b.edge(ring[i], outer[(i + 1) % size])
                elif pick == 2:
                    b.edge(ring[(i + 1) % size], outer[i])
    perm = list(range(len(b.coords)))
    if cfg.relabel:
        rng.shuffle(perm)
    return b.document(cfg, {"rings": [[perm[v] for v in ring] for ring in rings]}, perm)


def grapes(cfg: GeneratorConfig) -> dict[str, Any]:
    """``k`` triangle lobes around marked vertices, each hung off one hub.

    Each lobe is a triangle x, y, z with its marked vertex a inside; the hub
    is joined to x and, at random, to y.  Leftover vertices are stacked
    inside the lobes.  With ``touching`` two neighbouring lobes are also
    joined directly, which destroys the single cut vertex.
    """
    k = cfg.k
    if k < 3:
        raise BadConfig("grapes needs k >= 3")
    if cfg.n < 4 * k + 1:
        raise BadConfig(f"grapes with k={k} needs n >= {4 * k + 1}")
    rng = random.Random(cfg.seed)
    b = _Builder()
    hub = b.add(Fraction(0), Fraction(0))
    half = math.pi / (3 * k)
    lobes, marked, faces = [], [], []
    for j in range(k):
        theta = 2 * math.pi * j / k
        x = b.polar(2, theta - half)
        y = b.polar(2, theta + half)
        z = b.polar(4, theta)
        a = b.add(*_centroid(b.coords[x], b.coords[y], b.coords[z]))
        for s, t in ((x, y), (y, z), (z, x), (a, x), (a, y), (a, z)):
            b.edge(s, t)
        b.edge(hub, x)
        if rng.random() < 0.5:
            b.edge(hub, y)
        lobes.append([x, y, z, a])
        marked.append(a)
        faces.append([(x, y, a), (y, z, a), (z, x, a)])
    extra = [0] * k
    for _ in range(cfg.n - 4 * k - 1):
        extra[rng.randrange(k)] += 1
    for j in range(k):
        for w, *_ in _stack_into(b, rng, faces[j], extra[j]):
            lobes[j].append(w)
    if cfg.touching:
        b.edge(lobes[0][1], lobes[1][0])
    return b.document(
        cfg, {"hub": hub, "marked": marked, "lobes": [sorted(lobe) for lobe in lobes], "touching": cfg.touching}
    )


def planted_cage(cfg: GeneratorConfig) -> dict[str, Any]:
    """Two poles joined by ``paths`` vertical paths, one marked vertex per gap.

    Pole 0 sits on top, pole 1 at the bottom.  Path j is column 2j with an
    odd number (3 to ``spread``) of interior vertices spanning heights 2/3
    down to 1/3, so all fan edges end on two common lines; with ``spread``
    below 3, or too small an ``n``, every path has one vertex at height 1/2.
    Long paths are shortened until the total fits in ``n``.  The mark of
    gap j sits at (2j+1, 1/2), joined to path j's middle vertex.  The marks in left-to-right order fit into the cage.
    """
    p = cfg.paths
    if p < 4:
        raise BadConfig("planted_cage needs paths >= 4 (at least three gaps)")
    if cfg.spread < 1:
        raise BadConfig("planted_cage needs spread >= 1")
    rng = random.Random(cfg.seed)
    if cfg.n < 2 * p + 1:
        raise BadConfig(f"planted_cage with {p} paths needs n >= {2 * p + 1}")
    if cfg.spread < 3 or cfg.n < 4 * p + 1:
        lengths = [1] * p
    else:
        lengths = [2 * rng.randrange((cfg.spread - 1) // 2) + 3 for _ in range(p)]
        while 2 + sum(lengths) + p - 1 > cfg.n:
            lengths[lengths.index(max(lengths))] -= 2
    b = _Builder()
    mid = Fraction(2 * p - 1, 2)
    top = b.add(mid, Fraction(1))
    bottom = b.add(mid, Fraction(0))
    paths, middles = [], []
    for j, length in enumerate(lengths):
        x = Fraction(2 * j)
        if length == 1:
            heights = [Fraction(1, 2)]
        else:
            heights = [Fraction(2, 3) - Fraction(t, 3 * (length - 1)) for t in range(length)]
        col = [b.add(x, h) for h in heights]
        chain = [top, *col, bottom]
        for s, t in zip(chain, chain[1:]):
            b.edge(s, t)
        paths.append(chain)
        middles.append(col[length // 2])
    marks = []
    for j in range(p - 1):
        m = b.add(Fraction(2 * j + 1), Fraction(1, 2))
        b.edge(m, middles[j])
        marks.append(m)
    return b.document(cfg, {"poles": [top, bottom], "paths": paths, "marked": marks})


_DISPATCH = {
    "stacked_triangulation": stacked_triangulation,
    "onion": onion,
    "grapes": grapes,
    "planted_cage": planted_cage,
}


def gen(cfg: GeneratorConfig) -> dict[str, Any]:
    """Generate one embedding document; identical configs give identical documents."""
    try:
        fn = _DISPATCH[cfg.kind]
    except KeyError:
        raise BadConfig(f"unknown kind {cfg.kind!r}; expected one of {', '.join(KINDS)}") from None
    return fn(cfg)


def shrink_stacked(doc: dict[str, Any], keep_failing) -> dict[str, Any]:
    """Remove stacked vertices (newest first) while ``keep_failing(doc)`` stays true.

    A vertex inserted into a triangle has degree 3 once everything inserted
    after it is gone, so every intermediate document is a triangulation.
    """
    log = list(doc.get("meta", {}).get("insertions", []))
    current = doc
    for entry in reversed(log):
        w = entry[0]
        trial = remove_vertex(current, w)
        if trial is None:
            continue
        if keep_failing(trial):
            current = trial
    return current


def remove_vertex(doc: dict[str, Any], w: int) -> dict[str, Any] | None:
    """Document with degree-3 vertex ``w`` deleted, or None if it has other degree."""
    rot = doc["rotation"]
    if str(w) not in rot or len(rot[str(w)]) != 3:
        return None
    out = {
        "vertices": [v for v in doc["vertices"] if v != w],
        "rotation": {k: [x for x in ws if x != w] for k, ws in rot.items() if k != str(w)},
    }
    if "coords" in doc:
        out["coords"] = {k: p for k, p in doc["coords"].items() if k != str(w)}
    if "orientation" in doc:
        out["orientation"] = doc["orientation"]
    meta = dict(doc.get("meta", {}))
    if "insertions" in meta:
        meta["insertions"] = [e for e in meta["insertions"] if e[0] != w]
    out["meta"] = meta
    return out
