from __future__ import annotations

import math
from fractions import Fraction

import pytest

from cyclesep.embedding import load_embedding
from cyclesep.oracle import ccw_order, fraction_to_json


def doc_from_drawing(coords: dict[int, tuple], edges) -> dict:
    """Embedding document whose rotation is read off a straight-line drawing."""
    pts = {v: (Fraction(x), Fraction(y)) for v, (x, y) in coords.items()}
    adj: dict[int, set[int]] = {v: set() for v in pts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return {
        "vertices": sorted(pts),
        "rotation": {str(v): ccw_order(pts[v], {w: pts[w] for w in adj[v]}) for v in sorted(pts)},
        "coords": {str(v): [fraction_to_json(p[0]), fraction_to_json(p[1])] for v, p in pts.items()},
    }


def _polar(r: int, deg: int) -> tuple[Fraction, Fraction]:
    t = math.radians(deg)
    return Fraction(round(r * math.cos(t) * 1024), 1024), Fraction(round(r * math.sin(t) * 1024), 1024)


# Octahedron drawn as two nested triangles.  N=0 and S=5 are the poles and
# 1-2-3-4 is the equator, in rotation order around N.
N, E1, E2, E3, E4, S = 0, 1, 2, 3, 4, 5
OCTA_COORDS = {
    N: _polar(4, 90),
    E1: _polar(4, 210),
    E4: _polar(4, 330),
    S: _polar(1, 270),
    E3: _polar(1, 30),
    E2: _polar(1, 150),
}
OCTA_EDGES = [
    (N, E1), (E1, E4), (E4, N),
    (S, E3), (E3, E2), (E2, S),
    (N, E2), (N, E3), (E1, E2), (E1, S), (E4, S), (E4, E3),
]

CUBE_COORDS = {0: (0, 0), 1: (3, 0), 2: (3, 3), 3: (0, 3), 4: (1, 1), 5: (2, 1), 6: (2, 2), 7: (1, 2)}
CUBE_EDGES = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]

K4_COORDS = {0: (0, 0), 1: (4, 0), 2: (0, 4), 3: (1, 1)}
K4_EDGES = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]


@pytest.fixture
def octa():
    return load_embedding(doc_from_drawing(OCTA_COORDS, OCTA_EDGES))


@pytest.fixture
def octa_doc():
    return doc_from_drawing(OCTA_COORDS, OCTA_EDGES)


@pytest.fixture
def cube():
    return load_embedding(doc_from_drawing(CUBE_COORDS, CUBE_EDGES))


@pytest.fixture
def k4_doc():
    return doc_from_drawing(K4_COORDS, K4_EDGES)


@pytest.fixture
def k3():
    return load_embedding({"vertices": [1, 2, 3], "rotation": {"1": [2, 3], "2": [3, 1], "3": [1, 2]}})


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call":
                lines += [x for x in rep.capstdout.splitlines() if x.startswith(("PASS criterion", "FAIL criterion"))]
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda x: int(x.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
