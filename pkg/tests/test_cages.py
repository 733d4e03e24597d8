import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclesep.cages import (
    Cage,
    Nest,
    axiom_holds,
    fits_into,
    interior,
    make_cage,
    make_nest,
    maximal_cages,
    order_family,
    region,
    satisfying_orders,
    symmetry_class,
    trim,
)
from cyclesep.cycles import PathTuple
from cyclesep.embedding import load_embedding
from cyclesep.errors import AxiomViolation, IndexOutOfRange, NotAFamily, TooFewMembers
from cyclesep.generators import GeneratorConfig, gen
from cyclesep.properties import disjoint_paths

from conftest import E1, E2, E3, E4, N, S

MERIDIANS = [[N, v, S] for v in (E1, E2, E3, E4)]


def planted(paths=6, n=None, seed=0, spread=3):
    doc = gen(GeneratorConfig(kind="planted_cage", paths=paths, n=n or 4 * paths + 1, seed=seed, spread=spread))
    return load_embedding(doc), doc["meta"]


def test_octahedron_cage_follows_rotation(octa):
    shuffled = [MERIDIANS[i] for i in (2, 0, 3, 1)]
    cage = order_family(octa, shuffled)
    assert isinstance(cage, Cage) and cage.poles == (N, S)
    assert [p.vertices[1] for p in cage.paths] == list(octa.rotation[N])
    assert axiom_holds(octa, cage)


def test_octahedron_regions(octa):
    cage = order_family(octa, MERIDIANS)
    assert region(octa, cage, 0, 2).vertices == {E2}
    assert region(octa, cage, 0, 1).vertices == frozenset()
    assert region(octa, cage, 1, 3).vertices == {E3}
    assert region(octa, cage, 0, 3).vertices == {E2, E3}
    inner = interior(octa, cage)
    assert inner.int == {E2, E3}
    assert inner.int | inner.ext == set(octa.vertices) and not inner.int & inner.ext
    assert inner.clint == {E2, E3, N, S}
    with pytest.raises(IndexOutOfRange):
        region(octa, cage, 0, 4)
    with pytest.raises(IndexOutOfRange):
        region(octa, cage, 1, 1)


def test_onion_nest_order():
    doc = gen(GeneratorConfig(kind="onion", n=9, k=3, seed=2))
    e = load_embedding(doc)
    rings = [frozenset(r) for r in doc["meta"]["rings"]]
    family = list(reversed(doc["meta"]["rings"]))
    nest = order_family(e, family)
    assert isinstance(nest, Nest) and nest.pole is None
    got = [c.vertex_set for c in nest.cycles]
    assert got in (rings, rings[::-1])
    # the middle ring is the only vertex set strictly between the ends
    inner = interior(e, nest)
    assert rings[1] <= inner.int


def test_nest_with_pole():
    # three triangles through vertex 0, drawn nested
    from conftest import doc_from_drawing

    coords = {0: (0, 0), 1: (1, 1), 2: (1, -1), 3: (2, 3), 4: (2, -3), 5: (3, 6), 6: (3, -6)}
    edges = [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6), (1, 3), (2, 4), (3, 5), (4, 6),
             (1, 4), (3, 6)]
    e = load_embedding(doc_from_drawing(coords, edges))
    nest = order_family(e, [[0, 3, 4], [0, 5, 6], [0, 1, 2]])
    assert nest.pole == 0
    assert [c.canonical for c in nest.cycles] in ([(0, 1, 2), (0, 3, 4), (0, 5, 6)], [(0, 5, 6), (0, 3, 4), (0, 1, 2)])
    # cycle 1 lies strictly between the ends, so its open part is N_{0,2}
    assert region(e, nest, 0, 2).vertices == {3, 4}
    with pytest.raises(AxiomViolation):
        make_nest(e, [nest.cycles[1], nest.cycles[0], nest.cycles[2]])


def test_family_errors(octa):
    with pytest.raises(TooFewMembers):
        order_family(octa, MERIDIANS[:2])
    with pytest.raises(NotAFamily):
        order_family(octa, [[N, E1, S], [N, E1, E2, S], [N, E3, S]])
    with pytest.raises(NotAFamily):
        order_family(octa, [[N, E1, E2], [N, E1, E2, E3, E4], [S, E3, E4]])
    with pytest.raises(AxiomViolation):
        make_cage(octa, (N, S), [MERIDIANS[i] for i in (0, 2, 1, 3)])


def test_monotone_regions_in_planted_cage():
    e, meta = planted(paths=6, seed=5)
    cage = order_family(e, meta["paths"])
    for (j, k), (j2, k2) in itertools.product(itertools.combinations(range(6), 2), repeat=2):
        if j2 <= j and k <= k2:
            assert region(e, cage, j, k).vertices <= region(e, cage, j2, k2).vertices


def test_planted_marks_fit():
    e, meta = planted(paths=6, seed=1, spread=5, n=40)
    cage = order_family(e, meta["paths"])
    res = fits_into(e, meta["marked"], cage)
    assert res.fits, res.reason
    assert set(res.triples) == set(itertools.combinations(range(5), 3))


def test_three_marks_in_six_paths_miss_regions():
    # marks in C_{0,1}, C_{2,3}, C_{4,5} only; region C_{1,2} stays empty
    e, meta = planted(paths=6, seed=1)
    cage = order_family(e, meta["paths"])
    marks = meta["marked"]
    res = fits_into(e, [marks[0], marks[2], marks[4]], cage)
    assert not res.fits and "contains no element" in res.reason


def test_fit_failures(octa):
    e, meta = planted(paths=4, seed=3)
    cage = order_family(e, meta["paths"])
    marks = meta["marked"]
    assert not fits_into(e, [cage.poles[0], *marks[:2]], cage)
    assert not fits_into(e, [marks[1], marks[0], marks[2]], cage)
    with pytest.raises(TooFewMembers):
        fits_into(e, marks[:2], cage)


def test_fit_into_nest():
    doc = gen(GeneratorConfig(kind="onion", n=25, k=5, seed=7))
    e = load_embedding(doc)
    rings = doc["meta"]["rings"]
    nest = order_family(e, [rings[0], rings[2], rings[4]])
    inner_first = nest.cycles[0].vertex_set == frozenset(rings[0])
    seq = [rings[1][0], rings[3][0], rings[3][1]]
    res = fits_into(e, seq if inner_first else seq[::-1], nest)
    assert not res.fits  # region N_{0,1} holds two of them: no triple witness exists


def test_trim():
    e, meta = planted(paths=4, seed=0)
    cage = order_family(e, meta["paths"])
    sub = trim(e, cage, [0, 1, 3])
    assert len(sub) == 3 and axiom_holds(e, sub)
    with pytest.raises(TooFewMembers):
        trim(e, cage, [0, 1])
    doc = gen(GeneratorConfig(kind="onion", n=25, k=5, seed=1))
    e2 = load_embedding(doc)
    nest = order_family(e2, doc["meta"]["rings"])
    kept = trim(e2, nest, [0, 2, 4])
    assert kept.pole == nest.pole and [c for c in kept.cycles] == [nest.cycles[j] for j in (0, 2, 4)]


def test_trim_keeps_fit_when_witnesses_survive():
    e, meta = planted(paths=5, seed=2)
    cage = order_family(e, meta["paths"])
    marks = meta["marked"]
    res = fits_into(e, marks[:3], cage)
    assert not res.fits  # C_{3,4} is empty of these marks
    full = fits_into(e, marks, cage)
    assert full.fits
    sub = trim(e, cage, [0, 1, 2, 3])
    assert fits_into(e, marks[:3], sub).fits


def test_maximal_cages(octa):
    cages = maximal_cages(octa, N, S, 4)
    assert cages and all(len(c) >= 3 and axiom_holds(octa, c) for c in cages)
    assert any(len(c) == 4 for c in cages)


@pytest.mark.parametrize("size", [3, 4, 5])
def test_only_dihedral_orders_satisfy_cage_axiom(size):
    e, meta = planted(paths=5, seed=size)
    cage = order_family(e, [PathTuple(tuple(p)) for p in meta["paths"][:size]])
    assert satisfying_orders(e, cage) == symmetry_class(range(size), cyclic=True)


def test_only_reversal_satisfies_nest_axiom():
    doc = gen(GeneratorConfig(kind="onion", n=20, k=4, seed=3))
    e = load_embedding(doc)
    nest = order_family(e, doc["meta"]["rings"])
    assert satisfying_orders(e, nest) == symmetry_class(range(4), cyclic=False)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_random_families_order(seed):
    e = load_embedding(gen(GeneratorConfig(n=30, seed=seed)))
    rng = random.Random(seed)
    for _ in range(20):
        u, v = rng.sample(list(e.vertices), 2)
        if e.has_edge(u, v):
            continue
        paths = disjoint_paths(e, u, v, 6)
        if len(paths) >= 3:
            break
    else:
        return
    cage = order_family(e, paths[:5])
    assert satisfying_orders(e, cage) == symmetry_class(range(len(cage)), cyclic=True)
