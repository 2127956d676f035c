"""Seidel switching, associated two-graphs and switching isomorphisms."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .parity import ParityConflict, solve_parity
from .structures import Graph, PartialMap, StructureError, TwoGraph


def seidel_switch(g: Graph, s: Iterable[int]) -> Graph:
    """Complement every edge between ``s`` and the rest of the vertex set."""
    s = frozenset(s)
    bad = [v for v in s if not 0 <= v < g.n]
    if bad:
        raise StructureError(f"switch set vertices {sorted(bad)} out of range for n={g.n}")
    return Graph(g.n, frozenset(
        (u, v) for u, v in combinations(range(g.n), 2)
        if g.has_edge(u, v) != ((u in s) != (v in s))
    ))


def associated_two_graph(g: Graph) -> TwoGraph:
    """Triples are the vertex triples spanning an odd number of edges."""
    return TwoGraph(g.n, frozenset(
        (a, b, c) for a, b, c in combinations(range(g.n), 3)
        if g.has_edge(a, b) ^ g.has_edge(a, c) ^ g.has_edge(b, c)
    ))


def _check_map(g: Graph, h: Graph, f: PartialMap) -> None:
    if any(not (isinstance(x, int) and 0 <= x < g.n) for x in f.dom):
        raise StructureError("partial map domain out of range")
    if any(not (isinstance(x, int) and 0 <= x < h.n) for x in f.img):
        raise StructureError("partial map image out of range")


def find_switch_set(g: Graph, h: Graph, f: PartialMap) -> frozenset[int] | None:
    """A set ``S`` of domain vertices such that ``f`` maps ``g`` switched by
    ``S`` isomorphically onto ``h`` (on the induced subgraphs), or ``None``.

    The solution is canonical: within each component of the constraint system
    the smallest vertex is left unswitched.
    """
    _check_map(g, h, f)
    dom = sorted(f.dom)
    fd = f.as_dict
    constraints = [
        (u, v, int(g.has_edge(u, v) != h.has_edge(fd[u], fd[v])))
        for u, v in combinations(dom, 2)
    ]
    try:
        sol = solve_parity(dom, constraints)
    except ParityConflict:
        return None
    return frozenset(v for v in dom if sol[v])


def is_switching_isomorphism(g: Graph, h: Graph, f: PartialMap) -> bool:
    return find_switch_set(g, h, f) is not None


def is_switching_witness(g: Graph, h: Graph, f: PartialMap, s: Iterable[int]) -> bool:
    """Whether switching ``g`` by ``s`` makes ``f`` an isomorphism onto ``h``."""
    _check_map(g, h, f)
    s = frozenset(s)
    fd = f.as_dict
    return all(
        (g.has_edge(u, v) != ((u in s) != (v in s))) == h.has_edge(fd[u], fd[v])
        for u, v in combinations(f.dom, 2)
    )
