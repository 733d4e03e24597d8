import os
import subprocess
import sys

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from cyclesep import kernels
from cyclesep.cycles import count_cycles, enumerate_cycles, enumerate_paths, make_path
from cyclesep.embedding import load_embedding
from cyclesep.errors import BudgetExceeded, NotAPath
from cyclesep.generators import GeneratorConfig, gen
from cyclesep.separation import canonical_form

from conftest import E1, E2, E3, E4, N, S

# counts from networkx.simple_cycles(length_bound=...)
OCTA_COUNTS = {3: 8, 4: 23, 5: 47, 6: 63}
CUBE_COUNTS = {4: 6, 6: 22, 8: 28}


def test_k3(k3):
    assert [c.canonical for c in enumerate_cycles(k3, 3)] == [(1, 2, 3)]


@pytest.mark.parametrize("max_len, count", OCTA_COUNTS.items())
def test_octahedron_counts(octa, max_len, count):
    assert count_cycles(octa, max_len) == count


@pytest.mark.parametrize("max_len, count", CUBE_COUNTS.items())
def test_cube_counts(cube, max_len, count):
    assert count_cycles(cube, max_len) == count


def test_through_and_within(octa):
    through = list(enumerate_cycles(octa, 6, through=[N, S]))
    assert through and all(N in c and S in c for c in through)
    inside = list(enumerate_cycles(octa, 6, within=[E1, E2, E3, E4]))
    assert [c.canonical for c in inside] == [(1, 2, 3, 4)]
    assert list(enumerate_cycles(octa, 6, through=[N], within=[E1, E2])) == []


def test_budget(octa):
    with pytest.raises(BudgetExceeded):
        list(enumerate_cycles(octa, 6, budget=10))
    with pytest.raises(ValueError):
        list(enumerate_cycles(octa, 2))


def test_budget_from_environment(tmp_path, octa_doc):
    import json

    p = tmp_path / "o.json"
    p.write_text(json.dumps(octa_doc))
    env = dict(os.environ, CYCLESEP_BUDGET="5")
    r = subprocess.run([sys.executable, "-m", "cyclesep", "cycles", str(p), "--max-len", "6"],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 2 and "more than 5" in r.stderr


def test_paths(k3, octa):
    assert sorted(p.vertices for p in enumerate_paths(k3, 1, 2, 2)) == [(1, 2), (1, 3, 2)]
    two = sorted(p.vertices for p in enumerate_paths(octa, N, S, 2))
    assert two == [(N, v, S) for v in (E1, E2, E3, E4)]


def test_make_path(octa):
    assert make_path(octa, [N, E1, S]).interior == (E1,)
    with pytest.raises(NotAPath):
        make_path(octa, [N, S])
    with pytest.raises(NotAPath):
        make_path(octa, [N, E1, N])


def _nx_cycles(e, max_len):
    g = nx.Graph(e.edges)
    return sorted(canonical_form(c) for c in nx.simple_cycles(g, length_bound=max_len) if len(c) >= 3)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(4, 18), max_len=st.integers(3, 7))
def test_cycles_match_networkx(seed, n, max_len):
    e = load_embedding(gen(GeneratorConfig(n=n, seed=seed)))
    ours = [c.canonical for c in enumerate_cycles(e, max_len)]
    assert len(ours) == len(set(ours))
    assert sorted(ours) == _nx_cycles(e, max_len)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(5, 16), max_len=st.integers(1, 6))
def test_paths_match_networkx(seed, n, max_len):
    e = load_embedding(gen(GeneratorConfig(n=n, seed=seed)))
    u, v = e.vertices[0], e.vertices[-1]
    g = nx.Graph(e.edges)
    want = sorted(tuple(p) for p in nx.all_simple_paths(g, u, v, cutoff=max_len))
    assert sorted(p.vertices for p in enumerate_paths(e, u, v, max_len)) == want


@pytest.mark.skipif(kernels.backend() != "cython", reason="compiled kernels not built")
@pytest.mark.parametrize("seed", range(5))
def test_backends_agree(seed):
    e = load_embedding(gen(GeneratorConfig(n=30, seed=seed)))
    t = e.tables
    allowed = bytearray(b"\x01") * t.n
    out = {}
    for name in ("cython", "python"):
        kernels.use(name)
        try:
            cyc = kernels.simple_cycles(t, 6, allowed, 10**6)
            census = kernels.jordan_census(t, 6, 10**6)
            paths = kernels.simple_paths(t, 0, t.n - 1, 4, allowed, 10**6)
            edge_mask, vertex_mask = bytearray(t.m), bytearray(t.n)
            c = cyc[len(cyc) // 2]
            for a, b in zip(c, c[1:] + c[:1]):
                edge_mask[t.edge_index[(min(a, b), max(a, b))]] = 1
                vertex_mask[a] = 1
            sides = kernels.side_labels(t, edge_mask, vertex_mask)
            out[name] = ([tuple(x) for x in cyc], census, [tuple(p) for p in paths],
                         tuple(map(tuple, sides[:2])) + (sides[2],))
        finally:
            kernels.use("cython")
    assert out["cython"] == out["python"]


def test_pure_backend_selected_by_environment():
    env = dict(os.environ, CYCLESEP_PURE="1")
    r = subprocess.run([sys.executable, "-c", "from cyclesep import kernels; print(kernels.backend())"],
                       capture_output=True, text=True, env=env)
    assert r.stdout.strip() == "python"
