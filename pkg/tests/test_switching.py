import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from eppa import (
    Graph,
    PartialMap,
    StructureError,
    TwoGraph,
    associated_two_graph,
    find_switch_set,
    is_switching_isomorphism,
    is_switching_witness,
    seidel_switch,
)
from eppa.oracle import all_partial_maps, all_switch_sets, enumerate_graphs, enumerate_two_graphs
from eppa.parity import ParityConflict, solve_parity

from conftest import graph_and_subset, graphs

PATH = Graph(3, frozenset({(0, 1), (1, 2)}))
TRIANGLE = Graph.complete(3)


def test_switch_examples():
    assert seidel_switch(PATH, {1}) == Graph.empty(3)
    assert seidel_switch(PATH, set()) == PATH
    assert seidel_switch(PATH, {0, 1, 2}) == PATH
    with pytest.raises(StructureError):
        seidel_switch(PATH, {3})


def test_associated_two_graph_examples():
    assert associated_two_graph(TRIANGLE).triples == {(0, 1, 2)}
    assert associated_two_graph(PATH).triples == frozenset()
    assert associated_two_graph(Graph(3, frozenset({(0, 1)}))).triples == {(0, 1, 2)}


@given(graph_and_subset(max_n=8), st.data())
def test_switching_is_an_involution_and_composes(gs, data):
    g, s = gs
    assert seidel_switch(seidel_switch(g, s), s) == g
    s2 = frozenset(data.draw(st.sets(st.integers(0, g.n - 1)))) if g.n else frozenset()
    assert seidel_switch(seidel_switch(g, s), s2) == seidel_switch(g, s ^ s2)


@given(graph_and_subset(max_n=10))
def test_two_graph_is_switching_invariant(gs):
    g, s = gs
    assert associated_two_graph(seidel_switch(g, s)) == associated_two_graph(g)


def test_find_switch_set_examples():
    edge = Graph(2, frozenset({(0, 1)}))
    ident = PartialMap.identity(range(2))
    assert find_switch_set(edge, Graph.empty(2), ident) == {1}
    assert find_switch_set(PATH, PATH, PartialMap.identity(range(3))) == frozenset()
    assert find_switch_set(PATH, PATH, PartialMap((), ())) == frozenset()
    with pytest.raises(StructureError):
        find_switch_set(PATH, PATH, PartialMap((0,), (7,)))


def test_find_switch_set_recovers_a_random_switch():
    rng = random.Random(5)
    for _ in range(30):
        g = Graph(6, frozenset(p for p in combinations(range(6), 2) if rng.random() < 0.5))
        s0 = {v for v in range(6) if rng.random() < 0.5}
        h = seidel_switch(g, s0)
        s = find_switch_set(g, h, PartialMap.identity(range(6)))
        assert seidel_switch(g, s) == h
        assert s in (frozenset(s0), frozenset(range(6)) - s0)
        assert 0 not in s
        brute = all_switch_sets(g, h, PartialMap.identity(range(6)))
        assert sorted(map(sorted, brute)) == sorted(map(sorted, {frozenset(s0), frozenset(range(6)) - s0}))


def test_is_switching_isomorphism_examples():
    assert is_switching_isomorphism(PATH, PATH, PartialMap.identity(range(3)))
    for perm in [(0, 1, 2), (1, 2, 0), (2, 1, 0)]:
        assert not is_switching_isomorphism(TRIANGLE, Graph.empty(3), PartialMap((0, 1, 2), perm))
    g = Graph(3, frozenset({(0, 1)}))
    assert is_switching_isomorphism(g, seidel_switch(g, {0}), PartialMap.identity(range(3)))


@pytest.mark.parametrize("n", range(5))
def test_find_switch_set_matches_exhaustive_search(n):
    graphs_n = list(enumerate_graphs(n))
    rng = random.Random(n)
    pairs = [(g, h) for g in graphs_n for h in graphs_n]
    if len(pairs) > 300:
        pairs = rng.sample(pairs, 300)
    for g, h in pairs:
        for f in all_partial_maps(n):
            s = find_switch_set(g, h, f)
            brute = all_switch_sets(g, h, f)
            if s is None:
                assert brute == []
                continue
            assert s in brute
            assert is_switching_witness(g, h, f, s)
            # canonical: the smallest domain vertex stays put
            if f.dom:
                assert min(f.dom) not in s


def _maps_two_graph(t1: TwoGraph, t2: TwoGraph, f: PartialMap) -> bool:
    return all(
        t1.has_triple(*tr) == t2.has_triple(*(f(x) for x in tr))
        for tr in combinations(f.dom, 3)
    )


@settings(max_examples=200)
@given(graphs(max_n=5), graphs(max_n=5), st.data())
def test_switching_isomorphism_iff_two_graph_isomorphism(g, h, data):
    k = data.draw(st.integers(0, min(g.n, h.n)))
    dom = data.draw(st.permutations(range(g.n)))[:k]
    img = data.draw(st.permutations(range(h.n)))[:k]
    f = PartialMap(tuple(dom), tuple(img))
    expect = _maps_two_graph(associated_two_graph(g), associated_two_graph(h), f)
    assert is_switching_isomorphism(g, h, f) == expect


def test_two_graph_counts():
    # frozen from the oracle's parity-filter enumeration
    counts = [1, 1, 1, 2, 8, 64, 1024]
    for k, expected in enumerate(counts[:6]):
        via_graphs = {associated_two_graph(g) for g in enumerate_graphs(k)}
        assert len(via_graphs) == expected
        assert via_graphs == set(enumerate_two_graphs(k))


def test_solve_parity_canonical_and_conflict():
    sol = solve_parity(["a", "b", "c", "d"], [("a", "b", 1), ("b", "c", 0)])
    assert sol == {"a": 0, "b": 1, "c": 1, "d": 0}
    with pytest.raises(ParityConflict) as exc:
        solve_parity([0, 1, 2], [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    cycle = exc.value.cycle
    assert set(cycle) == {0, 1, 2}


@given(st.integers(1, 9), st.data())
def test_solve_parity_satisfies_consistent_systems(n, data):
    truth = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    pairs = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20))
    cons = [(u, v, truth[u] ^ truth[v]) for u, v in pairs if u != v]
    sol = solve_parity(list(range(n)), cons)
    assert all(sol[u] ^ sol[v] == c for u, v, c in cons)
