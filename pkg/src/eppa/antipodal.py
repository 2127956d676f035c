"""Passing between graphs, two-graphs and antipodal spaces.

The distance-3 pairs of an antipodal space are its *matching edges*. They are
always taken in the canonical order returned by :func:`matching_edges`
(increasing smaller endpoint), and every two-graph built from a space lives
on the indices of that order.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .parity import ParityConflict, solve_parity
from .structures import (
    AntipodalSpace,
    Graph,
    PartialMap,
    StructureError,
    TwoGraph,
    validate_antipodal,
)

PodeLabelling = tuple[int, ...]


class UnliftableError(StructureError):
    """A two-graph map cannot be lifted; ``cycle`` holds matching-edge indices
    of an inconsistent constraint cycle."""

    def __init__(self, message: str, cycle: list[int] | None = None):
        super().__init__(message)
        self.cycle = cycle or []


def matching_edges(a: AntipodalSpace) -> tuple[tuple[int, int], ...]:
    anti = a.antipodes
    return tuple((v, anti[v]) for v in range(a.n) if v < anti[v])


def canonical_pode(a: AntipodalSpace) -> PodeLabelling:
    """Smaller endpoint of every matching edge gets 0."""
    anti = a.antipodes
    return tuple(0 if v < anti[v] else 1 for v in range(a.n))


def check_pode(a: AntipodalSpace, p: Sequence[int]) -> PodeLabelling:
    anti = a.antipodes
    p = tuple(p)
    if len(p) != a.n or any(x not in (0, 1) for x in p):
        raise StructureError("pode labelling must assign 0 or 1 to every point")
    for v in range(a.n):
        if p[v] == p[anti[v]]:
            raise StructureError(f"points {v} and {anti[v]} are antipodal but share a pode")
    return p


def double_cover(g: Graph) -> tuple[AntipodalSpace, PodeLabelling]:
    """The antipodal space on ``V(g) x {0,1}``; point ``(x, i)`` has index ``2x + i``.

    Same-layer pairs are at distance 1 on edges, cross-layer pairs at
    distance 1 on non-edges, antipodes ``(x,0), (x,1)`` at 3, the rest at 2.
    """

    def d(u: int, v: int) -> int:
        (x, i), (y, j) = divmod(u, 2), divmod(v, 2)
        if x == y:
            return 3
        return 1 if g.has_edge(x, y) == (i == j) else 2

    return AntipodalSpace.from_function(2 * g.n, d), tuple(v % 2 for v in range(2 * g.n))


def pode_graph(a: AntipodalSpace, p: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Graph on the points with ``p == 0`` joined at distance 1.

    Returns the graph and ``index``, where graph vertex ``i`` is point ``index[i]``.
    """
    p = check_pode(a, p)
    index = tuple(v for v in range(a.n) if p[v] == 0)
    edges = frozenset(
        (i, j) for i, j in combinations(range(len(index)), 2)
        if a.d(index[i], index[j]) == 1
    )
    return Graph(len(index), edges), index


def _is_hexagon(a: AntipodalSpace, e: tuple[int, int], f: tuple[int, int], g: tuple[int, int]) -> bool:
    # The distance-1 pairs on six points from three matching edges form a
    # 2-regular graph: two triangles or one 6-cycle. Count its components.
    pts = [*e, *f, *g]
    seen = {pts[0]}
    stack = [pts[0]]
    while stack:
        u = stack.pop()
        for w in pts:
            if w not in seen and a.d(u, w) == 1:
                seen.add(w)
                stack.append(w)
    return len(seen) == 6


def two_graph_of_antipodal(a: AntipodalSpace) -> TwoGraph:
    """Triples are the matching-edge triples whose unit distances form two
    triangles (not one 6-cycle), so that a double cover of ``G`` gives ``T(G)``."""
    validate_antipodal(a).raise_if_invalid()
    m = matching_edges(a)
    return TwoGraph(len(m), frozenset(
        (i, j, k) for i, j, k in combinations(range(len(m)), 3)
        if not _is_hexagon(a, m[i], m[j], m[k])
    ))


def graph_of_two_graph(t: TwoGraph, x: int) -> Graph:
    """The graph in the switching class of ``t`` in which ``x`` is isolated."""
    if not 0 <= x < t.n:
        raise StructureError(f"base vertex {x} out of range for n={t.n}")
    others = [v for v in range(t.n) if v != x]
    return Graph(t.n, frozenset(
        (y, z) for y, z in combinations(others, 2) if t.has_triple(x, y, z)
    ))


def induced_edge_map(a1: AntipodalSpace, a2: AntipodalSpace, alpha: PartialMap) -> PartialMap:
    """The map on matching-edge indices induced by a point map ``alpha``."""
    m1, m2 = matching_edges(a1), matching_edges(a2)
    where1 = {v: i for i, e in enumerate(m1) for v in e}
    where2 = {v: i for i, e in enumerate(m2) for v in e}
    out: dict[int, int] = {}
    for u, v in alpha:
        i, j = where1[u], where2[v]
        if out.setdefault(i, j) != j:
            raise StructureError(f"point map splits matching edge {i}")
    return PartialMap.from_dict(out, kind="twograph")


def lift_two_graph_isomorphism(
    a1: AntipodalSpace, a2: AntipodalSpace, beta: PartialMap
) -> PartialMap:
    """Lift a (partial) two-graph isomorphism ``T(a1) -> T(a2)`` to a point
    isomorphism defined on the matching edges in the domain of ``beta``.

    One GF(2) unknown per matching edge ``e`` of ``a1`` records which endpoint
    of ``beta(e)`` receives the smaller endpoint of ``e``. Comparing unit
    distances between the smaller endpoints of two edges fixes the XOR of
    their unknowns. The smallest edge of each component is given 0.
    """
    validate_antipodal(a1).raise_if_invalid()
    validate_antipodal(a2).raise_if_invalid()
    m1, m2 = matching_edges(a1), matching_edges(a2)
    for i, j in beta:
        if not (0 <= i < len(m1) and 0 <= j < len(m2)):
            raise UnliftableError(f"beta pair {i}->{j} names a missing matching edge")
    b = beta.as_dict
    dom_edges = sorted(b)
    constraints = []
    for i, j in combinations(dom_edges, 2):
        far = int(a1.d(m1[i][0], m1[j][0]) != 1)
        # endpoint of beta(j) at unit distance from the first endpoint of beta(i)
        t = 0 if a2.d(m2[b[i]][0], m2[b[j]][0]) == 1 else 1
        constraints.append((i, j, t ^ far))
    try:
        s = solve_parity(dom_edges, constraints)
    except ParityConflict as exc:
        raise UnliftableError(
            f"beta is not a two-graph isomorphism (odd cycle on edges {exc.cycle})",
            exc.cycle,
        ) from None
    dom, img = [], []
    for i in dom_edges:
        x, y = m1[i]
        tgt = m2[b[i]]
        dom += [x, y]
        img += [tgt[s[i]], tgt[1 - s[i]]]
    order = sorted(range(len(dom)), key=lambda k: dom[k])
    return PartialMap(tuple(dom[k] for k in order), tuple(img[k] for k in order), "antipodal")
