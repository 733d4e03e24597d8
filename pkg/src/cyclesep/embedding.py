"""Combinatorial sphere embeddings given by rotation systems.

An :class:`Embedding` is a connected simple graph together with a cyclic
order of neighbours around every vertex.  Faces are traced with the rule

    next((u, v)) = (v, w),  w = the neighbour right after u in rotation[v]

and the embedding is accepted only when ``|V| - |E| + |F| == 2``.

Vertex ids are arbitrary non-negative integers.  Internally vertices are
renumbered ``0..n-1`` in increasing id order, so index order and id order
agree; everything public speaks ids.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

from . import oracle
from .errors import (
    AsymmetricAdjacency,
    Disconnected,
    InvalidDrawing,
    MalformedDocument,
    NotGenusZero,
    SelfLoopOrMultiEdge,
    UnknownVertex,
)

Point = oracle.Point


@dataclass(frozen=True, order=True)
class Dart:
    tail: int
    head: int

    def reverse(self) -> Dart:
        return Dart(self.head, self.tail)


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple[Dart, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d.tail for d in self.boundary)

    def __len__(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple[int, ...]
    dual_edges: tuple[tuple[int, int, tuple[int, int]], ...]

    def degree(self, node: int) -> int:
        return sum((a == node) + (b == node) for a, b, _ in self.dual_edges)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj: dict[int, set[int]] = {f: set() for f in self.nodes}
        for a, b, _ in self.dual_edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.nodes[0]}
        todo = [self.nodes[0]]
        while todo:
            f = todo.pop()
            for g in adj[f] - seen:
                seen.add(g)
                todo.append(g)
        return len(seen) == len(self.nodes)


class Tables:
    """Flat index arrays derived from an embedding.

    Plain lists feed the pure-Python kernels; :attr:`arrays` holds numpy
    copies for the compiled ones.
    """

    def __init__(self, vertices: Sequence[int], rotation: Mapping[int, Sequence[int]]):
        self.vid = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vid)}
        n = self.n = len(self.vid)
        ix = self.index

        self.rot_ptr = [0] * (n + 1)
        self.rot_head: list[int] = []
        self.dart_tail: list[int] = []
        for i, v in enumerate(self.vid):
            heads = [ix[w] for w in rotation[v]]
            self.rot_head.extend(heads)
            self.dart_tail.extend([i] * len(heads))
            self.rot_ptr[i + 1] = len(self.rot_head)
        n_darts = len(self.rot_head)
        dart_of = {(self.dart_tail[d], self.rot_head[d]): d for d in range(n_darts)}
        self.dart_of = dart_of
        self.dart_rev = [dart_of[(self.rot_head[d], self.dart_tail[d])] for d in range(n_darts)]

        self.edges: list[tuple[int, int]] = sorted(
            (self.dart_tail[d], self.rot_head[d]) for d in range(n_darts) if self.dart_tail[d] < self.rot_head[d]
        )
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        self.dart_edge = [
            self.edge_index[(min(t, h), max(t, h))] for t, h in zip(self.dart_tail, self.rot_head)
        ]
        self.m = len(self.edges)

        self.adj_ptr = [0] * (n + 1)
        self.adj_idx: list[int] = []
        for i in range(n):
            self.adj_idx.extend(sorted(self.rot_head[self.rot_ptr[i] : self.rot_ptr[i + 1]]))
            self.adj_ptr[i + 1] = len(self.adj_idx)
        self.adj_edge = [
            self.edge_index[(min(i, j), max(i, j))]
            for i in range(n)
            for j in self.adj_idx[self.adj_ptr[i] : self.adj_ptr[i + 1]]
        ]

        self._trace_faces()

    def next_dart(self, d: int) -> int:
        r = self.dart_rev[d]
        v = self.dart_tail[r]
        lo, hi = self.rot_ptr[v], self.rot_ptr[v + 1]
        return lo + (r - lo + 1) % (hi - lo)

    def _trace_faces(self) -> None:
        n_darts = len(self.rot_head)
        self.face_of_dart = [-1] * n_darts
        self.face_darts: list[list[int]] = []
        for d in sorted(range(n_darts), key=lambda d: (self.dart_tail[d], self.rot_head[d])):
            if self.face_of_dart[d] != -1:
                continue
            f = len(self.face_darts)
            cycle = []
            x = d
            while self.face_of_dart[x] == -1:
                self.face_of_dart[x] = f
                cycle.append(x)
                x = self.next_dart(x)
            self.face_darts.append(cycle)
        self.n_faces = len(self.face_darts) if n_darts else 1

        self.dual_ptr = [0] * (self.n_faces + 1)
        self.dual_face: list[int] = []
        self.dual_edge: list[int] = []
        for f, darts in enumerate(self.face_darts):
            for d in darts:
                self.dual_face.append(self.face_of_dart[self.dart_rev[d]])
                self.dual_edge.append(self.dart_edge[d])
            self.dual_ptr[f + 1] = len(self.dual_face)

    @cached_property
    def arrays(self) -> Any:
        import numpy as np

        class _Arrays:
            pass

        out = _Arrays()
        for name in (
            "rot_ptr",
            "rot_head",
            "adj_ptr",
            "adj_idx",
            "adj_edge",
            "dual_ptr",
            "dual_face",
            "dual_edge",
            "face_of_dart",
        ):
            setattr(out, name, np.asarray(getattr(self, name), dtype=np.int64))
        return out


class Embedding:
    """A connected simple graph with a genus-0 rotation system.

    Construction validates every invariant eagerly and raises a subclass of
    :class:`~cyclesep.errors.EmbeddingError` on the first violation.  The
    object is immutable afterwards.

    Args:
        rotation: vertex id -> cyclic sequence of neighbour ids.
        coords: optional vertex id -> (x, y); values may be int, float,
            Fraction, or ``"p/q"`` strings.
        orientation: ``"ccw"`` (default) or ``"cw"``; a clockwise rotation
            system is reversed on load.  When coords are present the
            orientation is read from them instead.
    """

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        coords: Mapping[int, Sequence[Any]] | None = None,
        orientation: str = "ccw",
    ):
        rot = _check_rotation(rotation)
        self._vertices = tuple(sorted(rot))
        parsed: dict[int, Point] | None = None
        if coords is not None:
            parsed = _parse_coords(coords, self._vertices)
            orientation = _drawing_orientation(rot, parsed)
        elif orientation not in ("ccw", "cw"):
            raise MalformedDocument(f"orientation must be 'ccw' or 'cw', got {orientation!r}")
        if orientation == "cw":
            rot = {v: tuple(reversed(ns)) for v, ns in rot.items()}
        self._rotation = MappingProxyType(rot)
        self._coords = MappingProxyType(parsed) if parsed is not None else None
        self.tables = Tables(self._vertices, rot)
        chi = self.tables.n - self.tables.m + self.tables.n_faces
        if chi != 2:
            raise NotGenusZero(
                f"V - E + F = {self.tables.n} - {self.tables.m} + {self.tables.n_faces} = {chi}, expected 2"
            )
        self._side_cache: dict[tuple[int, ...], Any] = {}

    # -- basic accessors ----------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def rotation(self) -> Mapping[int, tuple[int, ...]]:
        return self._rotation

    @property
    def coords(self) -> Mapping[int, Point] | None:
        return self._coords

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        vid = self.tables.vid
        return tuple((vid[a], vid[b]) for a, b in self.tables.edges)

    @property
    def n_faces(self) -> int:
        return self.tables.n_faces

    def index(self, v: int) -> int:
        try:
            return self.tables.index[v]
        except (KeyError, TypeError):
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def check_vertex(self, v: int) -> int:
        self.index(v)
        return v

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self._rotation[self.check_vertex(v)]))

    def has_edge(self, u: int, v: int) -> bool:
        t = self.tables
        return (t.index.get(u, -1), t.index.get(v, -1)) in t.dart_of

    def degree(self, v: int) -> int:
        return len(self._rotation[self.check_vertex(v)])

    def __repr__(self) -> str:
        return f"Embedding(|V|={self.tables.n}, |E|={self.tables.m}, |F|={self.tables.n_faces})"

    # -- derived structure --------------------------------------------------

    def face_of(self, tail: int, head: int) -> int:
        """Id of the face whose boundary contains dart (tail, head)."""
        t = self.tables
        d = t.dart_of.get((self.index(tail), self.index(head)))
        if d is None:
            raise UnknownVertex(f"({tail}, {head}) is not an edge")
        return t.face_of_dart[d]

    def faces_at(self, v: int) -> set[int]:
        t = self.tables
        i = self.index(v)
        return {t.face_of_dart[d] for d in range(t.rot_ptr[i], t.rot_ptr[i + 1])}

    def induced_components(self, removed: Iterable[int]) -> list[set[int]]:
        """Connected components of the graph with ``removed`` deleted."""
        gone = set(removed)
        seen: set[int] = set()
        comps = []
        for s in self._vertices:
            if s in gone or s in seen:
                continue
            comp = {s}
            todo = deque([s])
            while todo:
                x = todo.popleft()
                for y in self._rotation[x]:
                    if y not in gone and y not in comp:
                        comp.add(y)
                        todo.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def reachable(self, sources: Iterable[int], avoid: Iterable[int] = ()) -> set[int]:
        """Vertices joined to ``sources`` by a path avoiding ``avoid``."""
        blocked = set(avoid)
        out = {s for s in sources if s not in blocked}
        todo = deque(out)
        while todo:
            x = todo.popleft()
            for y in self._rotation[x]:
                if y not in blocked and y not in out:
                    out.add(y)
                    todo.append(y)
        return out

    # -- serialisation ------------------------------------------------------

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "vertices": list(self._vertices),
            "rotation": {str(v): list(self._rotation[v]) for v in self._vertices},
        }
        if self._coords is not None:
            doc["coords"] = {
                str(v): [oracle.fraction_to_json(x), oracle.fraction_to_json(y)]
                for v, (x, y) in self._coords.items()
            }
        return doc


# -- validation helpers ------------------------------------------------------


def _is_vertex_id(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def _check_rotation(rotation: Mapping[int, Sequence[int]]) -> dict[int, tuple[int, ...]]:
    if not isinstance(rotation, Mapping) or not rotation:
        raise MalformedDocument("rotation must be a non-empty mapping")
    rot: dict[int, tuple[int, ...]] = {}
    for v, ns in rotation.items():
        if not _is_vertex_id(v):
            raise MalformedDocument(f"vertex id {v!r} is not a non-negative integer")
        if isinstance(ns, (str, bytes)) or not isinstance(ns, Sequence):
            raise MalformedDocument(f"rotation[{v}] must be a list")
        for w in ns:
            if not _is_vertex_id(w):
                raise MalformedDocument(f"neighbour {w!r} of {v} is not a non-negative integer")
        if v in ns:
            raise SelfLoopOrMultiEdge(f"self-loop at vertex {v}")
        if len(set(ns)) != len(ns):
            raise SelfLoopOrMultiEdge(f"vertex {v} lists a neighbour twice")
        rot[v] = tuple(ns)
    for v, ns in rot.items():
        for w in ns:
            if w not in rot:
                raise AsymmetricAdjacency(f"{v} lists {w}, which is not a vertex")
            if v not in rot[w]:
                raise AsymmetricAdjacency(f"{v} lists {w} but {w} does not list {v}")
    start = min(rot)
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in rot[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    if len(seen) != len(rot):
        missing = min(set(rot) - seen)
        raise Disconnected(f"vertex {missing} is not reachable from {start}")
    return rot


def _parse_coords(coords: Mapping[int, Sequence[Any]], vertices: Sequence[int]) -> dict[int, Point]:
    if set(coords) != set(vertices):
        raise MalformedDocument("coords must cover exactly the vertex set")
    out: dict[int, Point] = {}
    for v in vertices:
        xy = coords[v]
        if isinstance(xy, (str, bytes)) or len(xy) != 2:
            raise MalformedDocument(f"coords[{v}] must be an [x, y] pair")
        try:
            out[v] = (oracle.to_fraction(xy[0]), oracle.to_fraction(xy[1]))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedDocument(f"coords[{v}]: {exc}") from None
    if len(set(out.values())) != len(out):
        raise InvalidDrawing("two vertices share a position")
    return out


def _same_cyclic(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    k = b.index(a[0]) if a[0] in b else -1
    return k >= 0 and all(a[i] == b[(k + i) % len(b)] for i in range(len(a)))


def _drawing_orientation(rot: Mapping[int, Sequence[int]], coords: Mapping[int, Point]) -> str:
    """Check the drawing and return the orientation it gives the rotation."""
    edges = sorted((u, w) for u, ns in rot.items() for w in ns if u < w)
    hit = oracle.find_crossing(coords, edges)
    if hit is not None:
        raise InvalidDrawing(f"edges {hit[0]} and {hit[1]} cross")
    votes = set()
    for v, ns in rot.items():
        if len(ns) < 3:
            continue
        ccw = oracle.ccw_order(coords[v], {w: coords[w] for w in ns})
        if _same_cyclic(list(ns), ccw):
            votes.add("ccw")
        elif _same_cyclic(list(ns), ccw[::-1]):
            votes.add("cw")
        else:
            raise InvalidDrawing(f"rotation at {v} does not match the angular order of its neighbours")
    if len(votes) > 1:
        raise InvalidDrawing("rotation system mixes clockwise and counterclockwise vertices")
    return votes.pop() if votes else "ccw"


# -- public operations -------------------------------------------------------

_DOC_KEYS = {"vertices", "rotation", "coords", "orientation", "meta"}


def _int_key(k: Any) -> int:
    if isinstance(k, str) and k.strip().lstrip("-").isdigit():
        return int(k)
    if _is_vertex_id(k):
        return k
    raise MalformedDocument(f"bad vertex key {k!r}")


def load_embedding(document: Mapping[str, Any] | str | os.PathLike) -> Embedding:
    """Validate an embedding document and build the :class:`Embedding`.

    ``document`` may be an already-parsed JSON object, a JSON string, or a
    path to a JSON file.
    """
    if isinstance(document, os.PathLike) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        try:
            with open(document, encoding="utf-8") as fh:
                document = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from None
    elif isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise MalformedDocument("document must be a JSON object")
    extra = set(document) - _DOC_KEYS
    if extra:
        raise MalformedDocument(f"unexpected keys: {sorted(extra)}")
    if "vertices" not in document or "rotation" not in document:
        raise MalformedDocument("document needs 'vertices' and 'rotation'")
    verts = document["vertices"]
    if not isinstance(verts, list) or not all(_is_vertex_id(v) for v in verts):
        raise MalformedDocument("'vertices' must be a list of non-negative integers")
    if len(set(verts)) != len(verts):
        raise MalformedDocument("'vertices' lists an id twice")
    raw_rot = document["rotation"]
    if not isinstance(raw_rot, Mapping):
        raise MalformedDocument("'rotation' must be an object")
    rotation = {_int_key(k): v for k, v in raw_rot.items()}
    if set(rotation) != set(verts):
        raise MalformedDocument("'rotation' keys must match 'vertices'")
    coords = None
    if document.get("coords") is not None:
        raw = document["coords"]
        if not isinstance(raw, Mapping):
            raise MalformedDocument("'coords' must be an object")
        coords = {_int_key(k): v for k, v in raw.items()}
    return Embedding(rotation, coords, orientation=document.get("orientation", "ccw"))


def compute_faces(e: Embedding) -> list[Face]:
    t = e.tables
    vid = t.vid
    return [
        Face(f, tuple(Dart(vid[t.dart_tail[d]], vid[t.rot_head[d]]) for d in darts))
        for f, darts in enumerate(t.face_darts)
    ]


def dual_graph(e: Embedding, faces: Sequence[Face] | None = None) -> DualGraph:
    """One dual edge per primal edge, joining the faces on its two sides.

    A bridge has the same face on both sides and becomes a dual self-loop.
    """
    if faces is None:
        faces = compute_faces(e)
    face_of = {d: f.id for f in faces for d in f.boundary}
    dual = []
    for u, v in e.edges:
        dual.append((face_of[Dart(u, v)], face_of[Dart(v, u)], (u, v)))
    return DualGraph(tuple(f.id for f in faces), tuple(dual))


def euler_characteristic(e: Embedding) -> int:
    return e.tables.n - e.tables.m + e.tables.n_faces


def angular_consistency(e: Embedding) -> bool:
    """True when every rotation equals the counterclockwise angular order."""
    if e.coords is None:
        return True
    for v in e.vertices:
        ns = e.rotation[v]
        if len(ns) >= 3 and not _same_cyclic(list(ns), oracle.ccw_order(e.coords[v], {w: e.coords[w] for w in ns})):
            return False
    return True


# -- export ------------------------------------------------------------------


def to_dot(e: Embedding, highlight: Iterable[int] = ()) -> str:
    marked = set(highlight)
    lines = ["graph embedding {", "  node [shape=circle];"]
    for v in e.vertices:
        attrs = []
        if e.coords is not None:
            x, y = e.coords[v]
            attrs.append(f'pos="{float(x):.6g},{float(y):.6g}!"')
        if v in marked:
            attrs.append("color=red")
        attrs.append(f'rotation="{",".join(map(str, e.rotation[v]))}"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in e.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(e: Embedding, size: int = 480, highlight: Iterable[int] = ()) -> str:
    if e.coords is None:
        raise MalformedDocument("SVG export needs coordinates")
    marked = set(highlight)
    xs = [float(p[0]) for p in e.coords.values()]
    ys = [float(p[1]) for p in e.coords.values()]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0) or 1.0
    pad = 20

    def tr(v: int) -> tuple[float, float]:
        x, y = e.coords[v]  # type: ignore[index]
        return (
            pad + (float(x) - x0) / span * (size - 2 * pad),
            size - pad - (float(y) - y0) / span * (size - 2 * pad),
        )

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for u, v in e.edges:
        (a, b), (c, d) = tr(u), tr(v)
        out.append(f'  <line x1="{a:.3f}" y1="{b:.3f}" x2="{c:.3f}" y2="{d:.3f}" stroke="black" stroke-width="1"/>')
    for v in e.vertices:
        a, b = tr(v)
        fill = "red" if v in marked else "white"
        out.append(f'  <circle cx="{a:.3f}" cy="{b:.3f}" r="6" fill="{fill}" stroke="black"/>')
        out.append(f'  <text x="{a:.3f}" y="{b + 3:.3f}" font-size="8" text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
