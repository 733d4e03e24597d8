"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
twin takes over.  Set ``CYCLESEP_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py


def _load() -> ModuleType:
    if os.environ.get("CYCLESEP_PURE", "") not in ("", "0"):
        return _kernels_py
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return _kernels_py
    return _kernels


_impl = _load()


def backend() -> str:
    return _impl.BACKEND


def use(name: str) -> None:
    """Switch backend at runtime ("cython" or "python"); used by the benchmark."""
    global _impl
    if name == "python":
        _impl = _kernels_py
    elif name == "cython":
        from . import _kernels  # type: ignore[attr-defined]

        _impl = _kernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def _src(tables):
    return tables.arrays if _impl is not _kernels_py else tables


def side_labels(tables, edge_mask: bytearray, vertex_mask: bytearray):
    t = _src(tables)
    return _impl.side_labels(
        t.dual_ptr,
        t.dual_face,
        t.dual_edge,
        t.rot_ptr,
        t.face_of_dart,
        tables.n,
        tables.n_faces,
        edge_mask,
        vertex_mask,
    )


def simple_cycles(tables, max_len: int, allowed: bytearray, budget: int):
    t = _src(tables)
    return _impl.simple_cycles(t.adj_ptr, t.adj_idx, tables.n, max_len, allowed, budget)


def simple_paths(tables, s: int, t_: int, max_len: int, allowed: bytearray, budget: int):
    t = _src(tables)
    return _impl.simple_paths(t.adj_ptr, t.adj_idx, tables.n, s, t_, max_len, allowed, budget)


def jordan_census(tables, max_len: int, budget: int):
    t = _src(tables)
    return _impl.jordan_census(
        t.adj_ptr,
        t.adj_idx,
        t.adj_edge,
        t.dual_ptr,
        t.dual_face,
        t.dual_edge,
        tables.n,
        tables.n_faces,
        tables.m,
        max_len,
        budget,
    )


def crossing_candidates(px, py, qx, qy, ea, eb, order, scale: float):
    if _impl is _kernels_py:
        return _impl.crossing_candidates(px, py, qx, qy, ea, eb, order, scale)
    import numpy as np

    f = [np.asarray(a, dtype=np.float64) for a in (px, py, qx, qy)]
    i = [np.asarray(a, dtype=np.int64) for a in (ea, eb, order)]
    return _impl.crossing_candidates(*f, *i, scale)
