import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclesep.embedding import load_embedding
from cyclesep.errors import BadConfig, DegenerateGeometry, UnknownProperty
from cyclesep.generators import KINDS, GeneratorConfig, gen, remove_vertex, shrink_stacked
from cyclesep.oracle import (
    INSIDE,
    OUTSIDE,
    ccw_order,
    geometric_oracle,
    orient,
    point_in_polygon,
    segments_intersect,
)
from cyclesep.properties import PROPERTIES, default_side, replay, trial_seed, verify

SQUARE = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))]


def test_point_in_polygon_basics():
    assert point_in_polygon((Fraction(1, 2), Fraction(1, 2)), SQUARE)
    assert not point_in_polygon((Fraction(50), Fraction(-7)), SQUARE)
    with pytest.raises(DegenerateGeometry):
        point_in_polygon((Fraction(1), Fraction(1, 2)), SQUARE)
    # the ray passes exactly through a polygon vertex
    tri = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(1)), (Fraction(0), Fraction(2))]
    assert point_in_polygon((Fraction(1, 2), Fraction(1)), tri)
    assert not point_in_polygon((Fraction(-1), Fraction(1)), tri)


def test_geometric_oracle_labels():
    coords = dict(enumerate(SQUARE))
    coords[4] = (Fraction(1, 3), Fraction(2, 3))
    coords[5] = (Fraction(3), Fraction(3))
    assert geometric_oracle(coords, [0, 1, 2, 3], 4) == INSIDE
    assert geometric_oracle(coords, [0, 1, 2, 3], 5) == OUTSIDE
    with pytest.raises(DegenerateGeometry):
        geometric_oracle(coords, [0, 1, 2, 3], 2)


def test_orientation_predicates():
    o, x, y = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    assert orient(o, x, y) == 1 and orient(o, y, x) == -1
    tiny = (Fraction(1, 10**30), Fraction(1, 10**30 + 1))
    assert orient(o, tiny, (Fraction(1), Fraction(1))) == 1  # beyond double precision
    assert segments_intersect(o, (Fraction(2), Fraction(2)), x, y)
    assert not segments_intersect(o, x, y, (Fraction(1), Fraction(1)))


def test_ccw_order():
    c = (Fraction(0), Fraction(0))
    around = {7: (Fraction(0), Fraction(1)), 3: (Fraction(1), Fraction(0)), 5: (Fraction(-1), Fraction(0)),
              9: (Fraction(0), Fraction(-1)), 1: (Fraction(1), Fraction(1))}
    assert ccw_order(c, around) == [3, 1, 7, 5, 9]


@pytest.mark.parametrize("kind", KINDS)
def test_generators_are_deterministic_and_valid(kind):
    cfg = GeneratorConfig(kind=kind, n=21, seed=9, paths=5, k=3)
    a, b = json.dumps(gen(cfg), sort_keys=True), json.dumps(gen(cfg), sort_keys=True)
    assert a == b
    e = load_embedding(a)
    assert e.tables.n - e.tables.m + e.n_faces == 2
    assert json.dumps(gen(GeneratorConfig(kind=kind, n=21, seed=10, paths=5, k=3)), sort_keys=True) != a


def test_generator_without_coords():
    doc = gen(GeneratorConfig(n=12, seed=1, emit_coords=False))
    assert "coords" not in doc
    assert load_embedding(doc).n_faces == 2 * 12 - 4


@pytest.mark.parametrize(
    "cfg",
    [
        GeneratorConfig(kind="nope"),
        GeneratorConfig(n=2),
        GeneratorConfig(kind="onion", n=5, k=2),
        GeneratorConfig(kind="grapes", k=2, n=20),
        GeneratorConfig(kind="grapes", k=3, n=12),
        GeneratorConfig(kind="planted_cage", paths=3, n=20),
        GeneratorConfig(kind="planted_cage", paths=4, n=8),
    ],
)
def test_bad_configs(cfg):
    with pytest.raises(BadConfig):
        gen(cfg)


def test_planted_metadata():
    doc = gen(GeneratorConfig(kind="planted_cage", paths=5, n=40, spread=5, seed=3))
    meta = doc["meta"]
    assert len(meta["paths"]) == 5 and len(meta["marked"]) == 4
    assert all(p[0] == meta["poles"][0] and p[-1] == meta["poles"][1] for p in meta["paths"])
    assert all(len(p) % 2 == 1 for p in meta["paths"])  # odd interior length
    assert len(doc["vertices"]) <= 40
    onion = gen(GeneratorConfig(kind="onion", n=12, k=3, seed=0))["meta"]["rings"]
    assert sorted(v for r in onion for v in r) == list(range(12))


def test_remove_vertex_and_shrink():
    doc = gen(GeneratorConfig(n=12, seed=4))
    last = doc["meta"]["insertions"][-1][0]
    smaller = remove_vertex(doc, last)
    assert load_embedding(smaller).tables.n == 11
    assert remove_vertex(doc, 0) is None  # a corner of the outer triangle has higher degree
    shrunk = shrink_stacked(doc, lambda d: True)
    assert shrunk["vertices"] == [0, 1, 2]
    keep_five = shrink_stacked(doc, lambda d: 5 in d["vertices"])
    assert 5 in keep_five["vertices"] and load_embedding(keep_five)


def test_trial_seeds():
    assert trial_seed(0, 3) == 3
    assert trial_seed(2, 0) == 2_000_006
    assert trial_seed(2**64, 1) == 1


def test_unknown_property():
    with pytest.raises(UnknownProperty):
        verify("no_such_property", 1, 0)


def test_report_is_deterministic():
    a = verify("oracle_agreement", 3, 5).to_json()
    b = verify("oracle_agreement", 3, 5).to_json()
    assert a == b and a["failures"] == [] and a["samples"] == 1500


def _flipping_side(e, c):
    labels = list(default_side(e, c))
    for i, lab in enumerate(labels):
        if lab != -1:
            labels[i] = 1 - lab  # corrupt exactly one vertex
            break
    return labels


def test_corrupted_side_function_is_caught():
    rep = verify("oracle_agreement", 5, 1, side_fn=_flipping_side)
    assert rep.failures
    data = json.loads(json.dumps(rep.to_json()))
    assert all(r["fails"] for r in replay(data, side_fn=_flipping_side))
    assert not any(r["fails"] for r in replay(data))


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**64 - 1))
def test_shrunk_witnesses_replay(seed):
    rep = verify("prop_B_symmetry", 2, seed)
    for r in replay(json.loads(json.dumps(rep.to_json()))):
        assert r["fails"]


def test_every_property_runs():
    for pid in PROPERTIES:
        rep = verify(pid, 2, 3)
        assert rep.instances + len(rep.errors) == 2
        assert rep.errors == [], rep.errors
