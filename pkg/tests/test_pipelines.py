import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from eppa import (
    Graph,
    PartialMap,
    StructureError,
    SwitchingPartialMap,
    TwoGraph,
    associated_two_graph,
    extend_plain_iso,
    extend_switching_iso,
    extend_two_graph_partial,
    find_switch_set,
    seidel_switch,
    switching_eppa_witness,
    two_graph_eppa_witness,
)
from eppa.oracle import enumerate_graphs, enumerate_two_graphs, verify_plain_graph_coherence
from eppa.pipelines import apa_counterexample_report

from conftest import graphs

EDGE = Graph(2, frozenset({(0, 1)}))


def _is_embedding(h: Graph, g: Graph, emb) -> bool:
    return all(g.has_edge(u, v) == h.has_edge(emb[u], emb[v]) for u, v in combinations(range(g.n), 2))


def test_small_certificates():
    assert switching_eppa_witness(Graph.empty(1)).h_order == 1
    cert = switching_eppa_witness(EDGE)
    assert cert.h_order == 4
    h = cert.h_graph()
    assert h.n == 4 and _is_embedding(h, EDGE, cert.embedding)


def test_h_indexing_round_trips():
    cert = switching_eppa_witness(Graph.complete(4))
    for i in range(cert.h_order):
        v = cert.h_vertex(i)
        assert cert.witness.pode_value(v) == 0
        assert cert.h_index(v) == i
    indices = [cert.witness.index(cert.h_vertex(i)) for i in range(cert.h_order)]
    assert indices == sorted(indices)


@pytest.mark.parametrize("k", range(6))
def test_graph_embeds_in_h(k):
    for g in enumerate_graphs(k):
        cert = switching_eppa_witness(g)
        assert cert.h_order == (k << (k - 1) if k else 0)
        assert all(
            g.has_edge(u, v) == cert.h_adjacent(cert.embedding[u], cert.embedding[v])
            for u, v in combinations(range(k), 2)
        )


def test_plain_identity_extends_to_identity():
    g = Graph(4, frozenset({(0, 1), (1, 2), (2, 3)}))
    cert = switching_eppa_witness(g)
    hmap = extend_plain_iso(cert, PartialMap.identity(range(4)))
    assert hmap.permutation == tuple(range(cert.h_order))
    assert hmap.switch_set == frozenset()
    with pytest.raises(StructureError):
        extend_plain_iso(cert, PartialMap((0, 1), (0, 2)))


def test_switching_extension_on_an_edge():
    cert = switching_eppa_witness(EDGE)
    h = cert.h_graph()
    # switching one endpoint of the domain {0} is always allowed
    hmap, s_h = extend_switching_iso(cert, SwitchingPartialMap(PartialMap((0,), (0,)), {0}))
    assert s_h
    switched = seidel_switch(h, s_h)
    perm = hmap.permutation
    assert all(switched.has_edge(u, v) == h.has_edge(perm[u], perm[v]) for u, v in combinations(range(h.n), 2))
    assert cert.embedding[0] in s_h
    with pytest.raises(StructureError):
        # switching one endpoint removes the edge, so the identity no longer maps it
        extend_switching_iso(cert, SwitchingPartialMap(PartialMap.identity(range(2)), {1}))


def test_empty_switch_set_reduces_to_plain():
    g = Graph(3, frozenset({(0, 1)}))
    cert = switching_eppa_witness(g)
    f = PartialMap((0, 1), (1, 0))
    plain = extend_plain_iso(cert, f)
    hmap, s_h = extend_switching_iso(cert, SwitchingPartialMap(f, set()))
    assert hmap.permutation == plain.permutation and s_h == frozenset()


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=5), st.data())
def test_switching_extensions_are_switching_automorphisms(g, data):
    cert = switching_eppa_witness(g)
    k = data.draw(st.integers(0, g.n))
    dom = data.draw(st.permutations(range(g.n)))[:k]
    img = data.draw(st.permutations(range(g.n)))[:k]
    f = PartialMap(tuple(dom), tuple(img))
    s = find_switch_set(g, g, f)
    assume(s is not None)
    if data.draw(st.booleans()):
        # the complementary switch set works as well
        s = frozenset(dom) - s
    hmap, s_h = extend_switching_iso(cert, SwitchingPartialMap(f, s))
    rng = random.Random(data.draw(st.integers(0, 99)))
    for x, y in f:
        assert hmap(cert.embedding[x]) == cert.embedding[y]
    for _ in range(50):
        u, v = rng.sample(range(cert.h_order), 2)
        expected = cert.h_adjacent(u, v) ^ ((u in s_h) ^ (v in s_h))
        assert cert.h_adjacent(hmap(u), hmap(v)) == expected


def test_plain_coherence_sampled():
    report = verify_plain_graph_coherence(
        [g for k in range(1, 4) for g in enumerate_graphs(k)], sample=200, rng=random.Random(3)
    )
    assert report.ok and report.checked > 100


def test_two_graph_certificates():
    cert = two_graph_eppa_witness(TwoGraph(1, frozenset()))
    assert cert.h_order == 1
    t = TwoGraph(3, frozenset({(0, 1, 2)}))
    cert = two_graph_eppa_witness(t)
    assert associated_two_graph(cert.graph) == t and cert.base == 0
    emb = cert.embedding
    assert cert.witness_two_graph.has_triple(*emb)
    assert cert.witness_has_triple(*emb)
    assert two_graph_eppa_witness(TwoGraph(0, frozenset())).h_order == 0


def test_two_graph_extension_examples():
    t = TwoGraph(3, frozenset({(0, 1, 2)}))
    cert = two_graph_eppa_witness(t)
    ident = extend_two_graph_partial(cert, PartialMap.identity(range(3)))
    assert ident.permutation == tuple(range(cert.h_order))
    swap = extend_two_graph_partial(cert, PartialMap((1, 2), (2, 1)))
    perm = np.array(swap.permutation)
    tw = cert.witness_two_graph
    assert all(
        tw.has_triple(*(int(perm[x]) for x in tr)) for tr in tw.triples
    )
    assert swap(cert.embedding[1]) == cert.embedding[2]
    with pytest.raises(StructureError):
        extend_two_graph_partial(cert, PartialMap((0, 1), (0, 5)))
    cert4 = two_graph_eppa_witness(TwoGraph(4, frozenset({(0, 1, 2), (0, 1, 3)})))
    with pytest.raises(StructureError):
        extend_two_graph_partial(cert4, PartialMap((0, 1, 2), (0, 2, 3)))


@pytest.mark.parametrize("k", range(1, 5))
def test_two_graph_round_trip(k):
    for t in enumerate_two_graphs(k):
        cert = two_graph_eppa_witness(t)
        assert associated_two_graph(cert.graph) == t
        emb = cert.embedding
        assert all(
            t.has_triple(a, b, c) == cert.witness_has_triple(emb[a], emb[b], emb[c])
            for a, b, c in combinations(range(k), 3)
        )


def test_apa_report():
    report = apa_counterexample_report()
    assert report.amalgam_exists and not report.apa_extension_exists and report.ok
    # frozen: two parity-valid completions on {u, v, x1, x2}
    assert report.completions_on_four == 2
    assert len(report.candidates) == 18
    for c in report.candidates:
        assert "exactly one of" in c.reason
        assert (0, 1, 3) in c.triples and (0, 1, 2) not in c.triples
    data = report.to_dict()
    assert data["labels"] == {"u": 0, "v": 1, "x1": 2, "x2": 3}
