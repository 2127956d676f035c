"""EPPA-witnesses for switching classes of graphs and for two-graphs, and the
failure of amalgamation with automorphisms for two-graphs.

A graph ``G`` is encoded as its double cover ``A``; the witness ``B`` over ``A``
carries the pode function ``p_hat(e, chi) = chi(e)``, and the graph witness
``H`` is induced by ``B`` on ``p_hat == 0`` with unit distances as edges.
``H`` has ``n * 2**(n-1)`` vertices; vertex ``(e, chi)`` gets the dense index
``e * 2**(n-1) + squeeze(chi, e)`` where ``squeeze`` deletes bit ``e``. This is
the increasing order of the indices in ``B``, so nothing needs tabulating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterator

from .antipodal import double_cover, graph_of_two_graph
from .eppa_core import (
    WitnessAutomorphism,
    WitnessContext,
    WitnessVertex,
    build_witness,
    extend_automorphism,
    witness_distance,
)
from .structures import (
    AntipodalSpace,
    Graph,
    PartialMap,
    StructureError,
    SwitchingPartialMap,
    TwoGraph,
    is_partial_isomorphism,
    validate_graph,
    validate_two_graph,
)
from .switching import associated_two_graph, find_switch_set, is_switching_witness


def _squeeze(val: int, e: int) -> int:
    return (val & ((1 << e) - 1)) | ((val >> (e + 1)) << e)


def _unsqueeze(val: int, e: int) -> int:
    return (val & ((1 << e) - 1)) | ((val >> e) << (e + 1))


@dataclass(frozen=True)
class SwitchingEppaCertificate:
    """Everything needed to extend (switching) partial isomorphisms of ``graph``."""

    graph: Graph
    space: AntipodalSpace
    pode: tuple[int, ...]
    witness: WitnessContext
    embedding: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.witness.n

    @property
    def h_order(self) -> int:
        return self.n << (self.n - 1) if self.n else 0

    def h_vertex(self, i: int) -> WitnessVertex:
        if not 0 <= i < self.h_order:
            raise ValueError(f"H vertex {i} out of range")
        e, rest = divmod(i, 1 << (self.n - 1))
        return WitnessVertex(e, _unsqueeze(rest, e))

    def h_index(self, v: WitnessVertex) -> int:
        if (v.val >> v.edge) & 1:
            raise ValueError(f"{v} lies in pode 1, outside H")
        return (v.edge << (self.n - 1)) | _squeeze(v.val, v.edge)

    def h_adjacent(self, i: int, j: int) -> bool:
        return witness_distance(self.witness, self.h_vertex(i), self.h_vertex(j)) == 1

    def h_graph(self, limit: int | None = None) -> Graph:
        """``H`` as an explicit graph; quadratic in ``h_order``."""
        self.witness.check_materializable(limit)
        verts = [self.h_vertex(i) for i in range(self.h_order)]
        ctx = self.witness
        return Graph(self.h_order, frozenset(
            (i, j) for i, j in combinations(range(self.h_order), 2)
            if witness_distance(ctx, verts[i], verts[j]) == 1
        ))

    def to_dict(self) -> dict:
        ctx = self.witness
        return {
            "n": self.n,
            "h_order": self.h_order,
            "embedding": list(self.embedding),
            "m_order": [list(e) for e in ctx.m_order],
        }


def switching_eppa_witness(g: Graph) -> SwitchingEppaCertificate:
    validate_graph(g).raise_if_invalid()
    a, p = double_cover(g)
    ctx = build_witness(a, p)
    cert = SwitchingEppaCertificate(g, a, p, ctx, ())
    emb = tuple(cert.h_index(ctx.psi[2 * x]) for x in range(g.n))
    return SwitchingEppaCertificate(g, a, p, ctx, emb)


@dataclass(frozen=True)
class HMap:
    """A switching automorphism of ``H`` induced by an automorphism of ``B``.

    Vertex ``v`` of ``H`` goes to ``theta(v)`` when that stays in pode 0 and to
    its antipode otherwise; the latter vertices form the switch set.
    ``source_switch_set`` records the switch set chosen on the source side.
    """

    cert: SwitchingEppaCertificate
    theta: WitnessAutomorphism
    source_switch_set: frozenset[int] = field(default_factory=frozenset)

    def _image(self, i: int) -> tuple[int, bool]:
        ctx = self.cert.witness
        w = self.theta(self.cert.h_vertex(i))
        if ctx.pode_value(w):
            return self.cert.h_index(ctx.antipode(w)), True
        return self.cert.h_index(w), False

    def __call__(self, i: int) -> int:
        return self._image(i)[0]

    def switched(self, i: int) -> bool:
        return self._image(i)[1]

    @cached_property
    def permutation(self) -> tuple[int, ...]:
        self.cert.witness.check_materializable()
        return tuple(self(i) for i in range(self.cert.h_order))

    @cached_property
    def switch_set(self) -> frozenset[int]:
        self.cert.witness.check_materializable()
        return frozenset(i for i in range(self.cert.h_order) if self.switched(i))


def _check_plain(cert: SwitchingEppaCertificate, phi: PartialMap) -> None:
    if not is_partial_isomorphism(cert.graph, phi):
        raise StructureError("map is not a partial isomorphism of the source graph")


def _lift(cert: SwitchingEppaCertificate, phi: PartialMap, s: frozenset[int]) -> WitnessAutomorphism:
    dom, img = [], []
    for x, y in phi:
        flip = int(x in s)
        for i in (0, 1):
            dom.append(2 * x + i)
            img.append(2 * y + (i ^ flip))
    return extend_automorphism(cert.witness, PartialMap(tuple(dom), tuple(img), "antipodal"))


def extend_plain_iso(cert: SwitchingEppaCertificate, phi: PartialMap) -> HMap:
    """Extend a partial isomorphism of the source graph to an automorphism of ``H``."""
    _check_plain(cert, phi)
    return HMap(cert, _lift(cert, phi, frozenset()))


def extend_switching_iso(
    cert: SwitchingEppaCertificate, phi: SwitchingPartialMap
) -> tuple[HMap, frozenset[int]]:
    """Extend a switching partial isomorphism to a switching automorphism of ``H``.

    Returns the map and its switch set in ``H``.
    """
    g = cert.graph
    if not is_switching_witness(g, g, phi.map, phi.switch_set):
        raise StructureError("switch set does not make the map a partial isomorphism")
    hmap = HMap(cert, _lift(cert, phi.map, phi.switch_set), phi.switch_set)
    return hmap, hmap.switch_set


@dataclass(frozen=True)
class TwoGraphEppaCertificate:
    two_graph: TwoGraph
    base: int
    graph: Graph
    switching: SwitchingEppaCertificate

    @property
    def h_order(self) -> int:
        return self.switching.h_order

    def witness_has_triple(self, i: int, j: int, k: int) -> bool:
        adj = self.switching.h_adjacent
        return adj(i, j) ^ adj(i, k) ^ adj(j, k)

    @cached_property
    def witness_two_graph(self) -> TwoGraph:
        """``T(H)``; cubic in ``h_order``."""
        return associated_two_graph(self.switching.h_graph())

    @property
    def embedding(self) -> tuple[int, ...]:
        return self.switching.embedding


def two_graph_eppa_witness(t: TwoGraph) -> TwoGraphEppaCertificate:
    validate_two_graph(t).raise_if_invalid()
    if t.n == 0:
        g = Graph(0)
    else:
        g = graph_of_two_graph(t, 0)
    return TwoGraphEppaCertificate(t, 0, g, switching_eppa_witness(g))


def extend_two_graph_partial(cert: TwoGraphEppaCertificate, phi: PartialMap) -> HMap:
    """Extend a partial automorphism of the two-graph to an automorphism of ``T(H)``."""
    if not is_partial_isomorphism(cert.two_graph, phi):
        raise StructureError("map is not a partial isomorphism of the source two-graph")
    s = find_switch_set(cert.graph, cert.graph, phi)
    if s is None:
        raise StructureError("two-graph map is not a switching isomorphism of the base graph")
    hmap, _ = extend_switching_iso(cert.switching, SwitchingPartialMap(phi, s))
    return hmap


# ------------------------------------------------------------ APA failure

@dataclass(frozen=True)
class AmalgamCandidate:
    n: int
    triples: tuple[tuple[int, int, int], ...]
    automorphism: tuple[int, ...] | None
    reason: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "triples": [list(t) for t in self.triples],
            "automorphism": list(self.automorphism) if self.automorphism else None,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class APAReport:
    labels: dict[str, int]
    candidates: tuple[AmalgamCandidate, ...]
    completions_on_four: int

    @property
    def amalgam_exists(self) -> bool:
        return bool(self.candidates)

    @property
    def apa_extension_exists(self) -> bool:
        return any(c.automorphism is not None for c in self.candidates)

    @property
    def ok(self) -> bool:
        return self.amalgam_exists and not self.apa_extension_exists

    def to_dict(self) -> dict:
        return {
            "labels": self.labels,
            "amalgam_exists": self.amalgam_exists,
            "apa_extension_exists": self.apa_extension_exists,
            "completions_on_four": self.completions_on_four,
            "candidates": [c.to_dict() for c in self.candidates],
        }


def _two_graphs_on(n: int) -> Iterator[TwoGraph]:
    # every two-graph on n vertices is T(G) for exactly one G isolating vertex 0
    pairs = list(combinations(range(1, n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph(n, frozenset(p for k, p in enumerate(pairs) if (mask >> k) & 1))
        yield associated_two_graph(g)


def apa_counterexample_report(max_extra: int = 1) -> APAReport:
    """Amalgamate ``B1 = {u,v,x1}`` (no triple) and ``B2 = {u,v,x2}`` (a triple)
    over ``A = {u,v}``, and look for an automorphism swapping ``u, v`` while
    fixing ``x1, x2``.

    Every amalgam on ``4 + k`` vertices, ``k <= max_extra``, is enumerated; for
    each one the report records why no such automorphism exists.
    """
    u, v, x1, x2 = 0, 1, 2, 3
    candidates = []
    for n in range(4, 5 + max_extra):
        extra = list(range(4, n))
        for t in sorted(_two_graphs_on(n), key=lambda t: t.sorted_triples()):
            if t.has_triple(u, v, x1) or not t.has_triple(u, v, x2):
                continue
            found = None
            for rest in permutations(extra):
                g = (v, u, x1, x2, *rest)
                if {tuple(sorted(g[i] for i in tr)) for tr in t.triples} == t.triples:
                    found = g
                    break
            if found is not None:
                reason = "automorphism found"
            else:
                odd = [w for w in (u, v) if t.has_triple(w, x1, x2)]
                name = "u" if odd == [u] else "v"
                reason = (
                    f"exactly one of {{u,x1,x2}}, {{v,x1,x2}} is a triple ({{{name},x1,x2}}); "
                    "swapping u and v with x1, x2 fixed breaks it"
                )
            candidates.append(AmalgamCandidate(n, tuple(t.sorted_triples()), found, reason))
    on_four = sum(1 for c in candidates if c.n == 4)
    return APAReport({"u": u, "v": v, "x1": x1, "x2": x2}, tuple(candidates), on_four)
