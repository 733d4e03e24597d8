"""Bounded enumeration of simple cycles and simple paths.

Both enumerators run a depth-first search with distance pruning: a partial
walk is abandoned as soon as its length plus the BFS distance back to the
target exceeds the bound.  For cycles the search from start vertex ``s``
only visits vertices greater than ``s``, so every cycle is found exactly
once from its least vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import config, kernels
from .embedding import Embedding
from .errors import NotAPath
from .separation import CycleTuple


@dataclass(frozen=True)
class PathTuple:
    vertices: tuple[int, ...]

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def __len__(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)

    def reversed(self) -> PathTuple:
        return PathTuple(self.vertices[::-1])


def make_path(e: Embedding, seq: Sequence[int]) -> PathTuple:
    seq = tuple(seq)
    for v in seq:
        e.index(v)
    if len(seq) < 2:
        raise NotAPath("a path needs at least two vertices")
    if len(set(seq)) != len(seq):
        raise NotAPath(f"{list(seq)} repeats a vertex")
    for a, b in zip(seq, seq[1:]):
        if not e.has_edge(a, b):
            raise NotAPath(f"{a} and {b} are not adjacent")
    return PathTuple(seq)


def _mask(e: Embedding, within: Iterable[int] | None) -> bytearray:
    t = e.tables
    if within is None:
        return bytearray(b"\x01") * t.n
    mask = bytearray(t.n)
    for v in within:
        mask[e.index(v)] = 1
    return mask


def enumerate_cycles(
    e: Embedding,
    max_len: int,
    through: Iterable[int] | None = None,
    within: Iterable[int] | None = None,
    budget: int | None = None,
) -> Iterator[CycleTuple]:
    """Yield every simple cycle of length <= max_len exactly once.

    Args:
        through: only cycles containing all of these vertices.
        within: only cycles whose vertices all lie in this set.
        budget: cap on the number of cycles found before filtering by
            ``through``; BudgetExceeded past it.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    t = e.tables
    need = frozenset(e.check_vertex(v) for v in through) if through else frozenset()
    allowed = _mask(e, within)
    for v in need:
        if not allowed[e.index(v)]:
            return
    found = kernels.simple_cycles(t, min(max_len, t.n), allowed, config.budget(budget))
    vid = t.vid
    for idx in found:
        ids = tuple(vid[i] for i in idx)
        if need and not need <= set(ids):
            continue
        yield CycleTuple(ids, ids)


def enumerate_paths(
    e: Embedding,
    u: int,
    v: int,
    max_len: int,
    within: Iterable[int] | None = None,
    budget: int | None = None,
) -> Iterator[PathTuple]:
    """Yield every simple u-v path with at most ``max_len`` edges, once each."""
    if u == v:
        raise ValueError("path endpoints must differ")
    iu, iv = e.index(u), e.index(v)
    allowed = _mask(e, within)
    allowed[iu] = allowed[iv] = 1
    vid = e.tables.vid
    for idx in kernels.simple_paths(e.tables, iu, iv, max_len, allowed, config.budget(budget)):
        yield PathTuple(tuple(vid[i] for i in idx))


def count_cycles(e: Embedding, max_len: int, **kw) -> int:
    return sum(1 for _ in enumerate_cycles(e, max_len, **kw))
