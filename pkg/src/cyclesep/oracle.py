"""Exact planar geometry and the ray-casting side oracle.

Coordinates are :class:`fractions.Fraction` pairs so every predicate here is
exact.  Sign tests run in floating point first and only fall back to
rational arithmetic when the float result is too close to zero to trust.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Mapping, Sequence

from .errors import DegenerateGeometry

Point = tuple[Fraction, Fraction]
FPoint = tuple[float, float]

INSIDE = 1
OUTSIDE = 0


def to_fraction(value: object) -> Fraction:
    """Parse a JSON coordinate: int, float, or a ``"p/q"`` string."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a coordinate")
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    raise TypeError(f"cannot read coordinate {value!r}")


def fraction_to_json(q: Fraction) -> int | float | str:
    """Inverse of :func:`to_fraction`, preferring the plainest exact form."""
    if q.denominator == 1:
        return int(q)
    f = float(q)
    if Fraction(f) == q:
        return f
    return f"{q.numerator}/{q.denominator}"


def _float_sign(ax: float, ay: float, bx: float, by: float, scale: float) -> int:
    """Sign of ax*by - ay*bx from rounded inputs, or 0 when too close to call.

    Each input difference carries an absolute error of a few ulps of
    ``scale``; the bound covers that plus the rounding of the products.
    """
    det = ax * by - ay * bx
    bound = 1e-12 * scale * (abs(ax) + abs(ay) + abs(bx) + abs(by)) + 1e-14 * (abs(ax * by) + abs(ay * bx))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    return 0


def _orient(p: Point, q: Point, r: Point, fp: FPoint, fq: FPoint, fr: FPoint) -> int:
    scale = max(abs(fp[0]), abs(fp[1]), abs(fq[0]), abs(fq[1]), abs(fr[0]), abs(fr[1]), 1e-300)
    s = _float_sign(fq[0] - fp[0], fq[1] - fp[1], fr[0] - fp[0], fr[1] - fp[1], scale)
    if s:
        return s
    exact = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (exact > 0) - (exact < 0)


def _fl(p: Point) -> FPoint:
    return float(p[0]), float(p[1])


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the turn p -> q -> r: 1 left, -1 right, 0 collinear."""
    return _orient(p, q, r, _fl(p), _fl(q), _fl(r))


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    # r collinear with pq assumed
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def _intersect(pts: Sequence[Point], fls: Sequence[FPoint]) -> bool:
    p1, p2, q1, q2 = pts
    f1, f2, g1, g2 = fls
    d1 = _orient(q1, q2, p1, g1, g2, f1)
    d2 = _orient(q1, q2, p2, g1, g2, f2)
    d3 = _orient(p1, p2, q1, f1, f2, g1)
    d4 = _orient(p1, p2, q2, f1, f2, g2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Closed-segment intersection test (touching counts)."""
    pts = (p1, p2, q1, q2)
    return _intersect(pts, [_fl(p) for p in pts])


def find_crossing(
    coords: Mapping[int, Point], edges: Sequence[tuple[int, int]]
) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Return a pair of edges whose straight segments meet improperly, if any.

    Edges sharing an endpoint may only meet at that endpoint.  A float sweep
    (compiled when available) proposes candidate pairs; each candidate is
    then settled with exact arithmetic.
    """
    from . import kernels

    fl = {v: _fl(p) for v, p in coords.items()}
    ea = [u for u, _ in edges]
    eb = [v for _, v in edges]
    px = [fl[u][0] for u in ea]
    py = [fl[u][1] for u in ea]
    qx = [fl[v][0] for v in eb]
    qy = [fl[v][1] for v in eb]
    order = sorted(range(len(edges)), key=lambda i: (min(px[i], qx[i]), i))
    scale = max((max(abs(x), abs(y)) for x, y in fl.values()), default=0.0)
    for i, j in kernels.crossing_candidates(px, py, qx, qy, ea, eb, order, scale):
        (u, v), (s, t) = edges[i], edges[j]
        shared = {u, v} & {s, t}
        if shared:
            (w,) = shared
            a = v if u == w else u
            b = t if s == w else s
            pw, pa, pb = coords[w], coords[a], coords[b]
            if _orient(pw, pa, pb, fl[w], fl[a], fl[b]) == 0 and (_on_segment(pw, pa, pb) or _on_segment(pw, pb, pa)):
                return (u, v), (s, t)
        elif _intersect((coords[u], coords[v], coords[s], coords[t]), (fl[u], fl[v], fl[s], fl[t])):
            return (u, v), (s, t)
    return None


def ccw_order(center: Point, around: Mapping[int, Point]) -> list[int]:
    """Ids of ``around`` sorted counterclockwise by angle about ``center``.

    Angles start at the positive x axis; points on one ray break ties by id.
    """
    cx, cy = _fl(center)
    frel = {k: (float(p[0]) - cx, float(p[1]) - cy) for k, p in around.items()}
    scale = max((max(abs(x), abs(y)) for x, y in frel.values()), default=0.0) or 1e-300
    scale = max(scale, abs(cx), abs(cy))
    exact: dict[int, Point] = {}

    def rel(k: int) -> Point:
        if k not in exact:
            p = around[k]
            exact[k] = (p[0] - center[0], p[1] - center[1])
        return exact[k]

    def half_of(k: int) -> int:
        fx, fy = frel[k]
        tol = 1e-12 * scale
        if fy > tol:
            return 0
        if fy < -tol:
            return 1
        x, y = rel(k)
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    halves = {k: half_of(k) for k in around}

    def cmp(a: int, b: int) -> int:
        ha, hb = halves[a], halves[b]
        if ha != hb:
            return ha - hb
        s = _float_sign(*frel[a], *frel[b], scale)
        if not s:
            (xa, ya), (xb, yb) = rel(a), rel(b)
            cross = xa * yb - ya * xb
            s = (cross > 0) - (cross < 0)
        if s:
            return -s
        return (a > b) - (a < b)

    return sorted(around, key=cmp_to_key(cmp))


def point_in_polygon(point: Point, polygon: Sequence[Point]) -> bool:
    """Even-odd ray casting with a rightward horizontal ray.

    Raises DegenerateGeometry when the point lies on the polygon boundary.
    """
    x, y = point
    inside = False
    n = len(polygon)
    for i in range(n):
        a, b = polygon[i], polygon[(i + 1) % n]
        if orient(a, b, point) == 0 and _on_segment(a, b, point):
            raise DegenerateGeometry(f"point {point} lies on the polygon boundary")
        if (a[1] > y) != (b[1] > y):
            # x-coordinate of the edge at height y, compared exactly
            xi = a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x < xi:
                inside = not inside
    return inside


def geometric_oracle(coords: Mapping[int, Point], cycle: Sequence[int], vertex: int) -> int:
    """INSIDE or OUTSIDE for ``vertex`` against the straight-line polygon of ``cycle``."""
    if vertex in cycle:
        raise DegenerateGeometry(f"vertex {vertex} lies on the cycle")
    return INSIDE if point_in_polygon(coords[vertex], [coords[c] for c in cycle]) else OUTSIDE
