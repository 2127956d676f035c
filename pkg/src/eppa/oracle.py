"""Brute-force ground truth for every construction in the package.

Nothing here reuses the checked code path. Axioms are re-checked over all
triples and 4-sets, enumerations are direct filters, automorphisms come from
scanning permutations, and the witness ``B`` is rebuilt from its distance
rules with valuations held as tuples instead of bitmasks. The only imports
from the construction side are the functions under test and plain data types.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .structures import (
    AntipodalSpace,
    CapacityError,
    Graph,
    PartialMap,
    SwitchingPartialMap,
    TwoGraph,
)

MAX_ENUM_TWO_GRAPH = 6
MAX_ENUM_POINTS = 8
MAX_PERM_SIZE = 8


# ------------------------------------------------------------------ axioms
# Independent of structures.validate_*: every triple / 4-set is scanned.

def graph_axioms_hold(g: Graph) -> bool:
    return all(u != v and 0 <= u < g.n and 0 <= v < g.n for u, v in g.edges)


def two_graph_axioms_hold(t: TwoGraph) -> bool:
    if any(len(set(tr)) != 3 or not all(0 <= x < t.n for x in tr) for tr in t.triples):
        return False
    for quad in combinations(range(t.n), 4):
        if sum(tr in t.triples for tr in combinations(quad, 3)) % 2:
            return False
    return True


def antipodal_axioms_hold(a: AntipodalSpace) -> bool:
    n, d = a.n, a.dist
    if len(d) != n or any(len(r) != n for r in d):
        return False
    if any(d[v][v] != 0 for v in range(n)):
        return False
    for u in range(n):
        for v in range(n):
            if u != v and (d[u][v] != d[v][u] or d[u][v] not in (1, 2, 3)):
                return False
    for x, y, z in combinations(range(n), 3):
        sides = sorted((d[x][y], d[x][z], d[y][z]))
        if sides[2] > sides[0] + sides[1] or sides == [2, 2, 3]:
            return False
    return all(sum(1 for u in range(n) if d[v][u] == 3) == 1 for v in range(n))


def axioms_hold(structure) -> bool:
    if isinstance(structure, Graph):
        return graph_axioms_hold(structure)
    if isinstance(structure, TwoGraph):
        return two_graph_axioms_hold(structure)
    return antipodal_axioms_hold(structure)


# ------------------------------------------------------------ enumeration

def enumerate_graphs(k: int) -> Iterator[Graph]:
    """All labeled graphs on ``k`` vertices; bit ``i`` of a counter selects the
    ``i``-th pair in lexicographic order."""
    if k > 7:
        raise CapacityError(f"graph enumeration is capped at 7 vertices, got {k}")
    pairs = list(combinations(range(k), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(k, frozenset(p for i, p in enumerate(pairs) if (mask >> i) & 1))


def enumerate_two_graphs(k: int) -> Iterator[TwoGraph]:
    """All labeled two-graphs on ``k`` vertices.

    Triples are decided in lexicographic order, absent before present; a
    4-set is checked for even parity as soon as its last triple is decided.
    """
    if k > MAX_ENUM_TWO_GRAPH:
        raise CapacityError(f"two-graph enumeration is capped at {MAX_ENUM_TWO_GRAPH} vertices")
    if k < 0:
        raise CapacityError("negative size")
    triples = list(combinations(range(k), 3))
    pos = {t: i for i, t in enumerate(triples)}
    closing: dict[int, list[tuple]] = defaultdict(list)
    for quad in combinations(range(k), 4):
        members = [pos[t] for t in combinations(quad, 3)]
        closing[max(members)].append(members)
    chosen = [False] * len(triples)

    def rec(i: int) -> Iterator[TwoGraph]:
        if i == len(triples):
            yield TwoGraph(k, frozenset(t for t, c in zip(triples, chosen) if c))
            return
        for bit in (False, True):
            chosen[i] = bit
            if all(sum(chosen[m] for m in members) % 2 == 0 for members in closing[i]):
                yield from rec(i + 1)
        chosen[i] = False

    yield from rec(0)


def enumerate_antipodal_spaces(points: int) -> Iterator[AntipodalSpace]:
    """All valid spaces on ``points`` points whose distance-3 pairs are
    ``{2i, 2i+1}``.

    Every other pair ranges over {1, 2, 3} in lexicographic pair order; a
    branch is cut as soon as a fully decided triangle or a point's distance-3
    count goes wrong, and survivors are re-checked with the full axiom scan.
    """
    if points % 2 or points < 0:
        raise CapacityError(f"antipodal spaces need an even number of points, got {points}")
    if points > MAX_ENUM_POINTS:
        raise CapacityError(f"antipodal enumeration is capped at {MAX_ENUM_POINTS} points")
    n = points
    pairs = [p for p in combinations(range(n), 2) if not (p[0] % 2 == 0 and p[1] == p[0] + 1)]
    d = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        d[i][i + 1] = d[i + 1][i] = 3
    decided = {(i, i + 1) for i in range(0, n, 2)}
    closes: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for idx, (u, v) in enumerate(pairs):
        for w in range(n):
            if w in (u, v):
                continue
            others = [tuple(sorted((u, w))), tuple(sorted((v, w)))]
            if all(o in decided or pairs.index(o) < idx for o in others):
                closes[idx].append((u, v, w))

    def triangle_ok(x, y, z) -> bool:
        s = sorted((d[x][y], d[x][z], d[y][z]))
        return s[2] <= s[0] + s[1] and s != [2, 2, 3]

    def rec(i: int) -> Iterator[AntipodalSpace]:
        if i == len(pairs):
            a = AntipodalSpace(n, tuple(tuple(r) for r in d))
            if antipodal_axioms_hold(a):
                yield a
            return
        u, v = pairs[i]
        for val in (1, 2, 3):
            d[u][v] = d[v][u] = val
            if val == 3:
                continue  # u and v already have their distance-3 partner
            if all(triangle_ok(*t) for t in closes[i]):
                yield from rec(i + 1)
        d[u][v] = d[v][u] = 0

    yield from rec(0)


def relabel(structure, perm: Sequence[int]):
    """Image of a structure under the vertex bijection ``v -> perm[v]``."""
    if isinstance(structure, Graph):
        return Graph(structure.n, frozenset((perm[u], perm[v]) for u, v in structure.edges))
    if isinstance(structure, TwoGraph):
        return TwoGraph(structure.n, frozenset(tuple(perm[x] for x in t) for t in structure.triples))
    inv = [0] * structure.n
    for v, w in enumerate(perm):
        inv[w] = v
    return AntipodalSpace.from_function(structure.n, lambda u, v: structure.d(inv[u], inv[v]))


def random_antipodal_space(points: int, rng: random.Random) -> AntipodalSpace:
    """A uniformly random labeled valid space: a random matching and random
    quadruple types, validated by the full axiom scan."""
    if points % 2:
        raise CapacityError("odd number of points")
    k = points // 2
    # the two quadruple types are fixed by d(first, first) in {1, 2}
    near = {p: rng.randint(1, 2) for p in combinations(range(k), 2)}

    def d(u, v):
        (x, i), (y, j) = divmod(u, 2), divmod(v, 2)
        if x == y:
            return 3
        same = near[(min(x, y), max(x, y))]
        return same if i == j else 3 - same

    a = AntipodalSpace.from_function(points, d)
    perm = list(range(points))
    rng.shuffle(perm)
    a = relabel(a, perm)
    if not antipodal_axioms_hold(a):
        raise AssertionError("random space generator produced an invalid space")
    return a


# -------------------------------------------------- (partial) isomorphisms

def _rel(structure):
    if isinstance(structure, Graph):
        return 2, lambda u, v: structure.has_edge(u, v)
    if isinstance(structure, TwoGraph):
        return 3, lambda a, b, c: structure.has_triple(a, b, c)
    return 2, lambda u, v: structure.d(u, v)


def all_automorphisms(structure) -> list[tuple[int, ...]]:
    """Every permutation preserving the structure (``perm[v]`` is the image)."""
    n = structure.n
    if n > MAX_PERM_SIZE:
        raise CapacityError(f"automorphism scan is capped at {MAX_PERM_SIZE} vertices")
    arity, rel = _rel(structure)
    out = []
    for perm in permutations(range(n)):
        if all(rel(*s) == rel(*(perm[x] for x in s)) for s in combinations(range(n), arity)):
            out.append(perm)
    return out


def all_partial_isomorphisms(
    structure,
    max_size: int | None = None,
    closed_only: bool = False,
) -> Iterator[PartialMap]:
    """Every isomorphism between induced substructures with ``|dom| <= max_size``.

    Order: points are visited in increasing order and each is either left out
    (first) or sent to an unused target (in increasing order); a branch dies
    as soon as a relation among the chosen points fails. ``closed_only``
    keeps maps whose domain and image are closed under distance-3 partners
    (antipodal spaces only).
    """
    n = structure.n
    if n > MAX_PERM_SIZE:
        raise CapacityError(f"partial isomorphism scan is capped at {MAX_PERM_SIZE} vertices")
    arity, rel = _rel(structure)
    kind = "graph" if isinstance(structure, Graph) else "twograph" if isinstance(structure, TwoGraph) else "antipodal"
    limit = n if max_size is None else max_size
    partner = None
    if closed_only:
        partner = [next(u for u in range(n) if u != v and structure.d(u, v) == 3) for v in range(n)]
    dom: list[int] = []
    img: list[int] = []

    def consistent() -> bool:
        k = len(dom)
        last = k - 1
        for s in combinations(range(last), arity - 1):
            idx = (*s, last)
            if rel(*(dom[i] for i in idx)) != rel(*(img[i] for i in idx)):
                return False
        return True

    def rec(v: int) -> Iterator[PartialMap]:
        if v == n:
            if closed_only:
                ds, is_ = set(dom), set(img)
                if any(partner[x] not in ds for x in ds) or any(partner[y] not in is_ for y in is_):
                    return
                if any(img[dom.index(partner[x])] != partner[y] for x, y in zip(dom, img)):
                    return
            yield PartialMap(tuple(dom), tuple(img), kind)
            return
        yield from rec(v + 1)
        if len(dom) >= limit:
            return
        for w in range(n):
            if w in img:
                continue
            dom.append(v)
            img.append(w)
            if consistent():
                yield from rec(v + 1)
            dom.pop()
            img.pop()

    yield from rec(0)


def partial_map_preserves(structure, f: PartialMap) -> bool:
    arity, rel = _rel(structure)
    pairs = f.pairs()
    return all(
        rel(*(p[0] for p in s)) == rel(*(p[1] for p in s)) for s in combinations(pairs, arity)
    )


def antipodal_closure(a: AntipodalSpace, f: PartialMap) -> dict[int, int]:
    partner = {v: u for v in range(a.n) for u in range(a.n) if u != v and a.d(u, v) == 3}
    out = dict(f.as_dict)
    for v, w in f:
        out[partner[v]] = partner[w]
    return out


def all_switch_sets(g: Graph, h: Graph, f: PartialMap) -> list[frozenset[int]]:
    """Every ``S`` within the domain making ``f`` an isomorphism of ``g_S`` onto ``h``."""
    dom = list(f.dom)
    out = []
    for bits in product((0, 1), repeat=len(dom)):
        s = {x for x, b in zip(dom, bits) if b}
        if all(
            (g.has_edge(u, v) ^ ((u in s) ^ (v in s))) == h.has_edge(f(u), f(v))
            for u, v in combinations(dom, 2)
        ):
            out.append(frozenset(s))
    return out


# ------------------------------------------------------ witness rebuilt

class OracleWitness:
    """``B`` rebuilt from its distance rules with tuple valuations.

    Vertex order is ``edge``-major, valuations in increasing binary value with
    ``chi(e_0)`` as the least significant digit, which matches the index
    ``edge * 2**n + value`` used by the construction.
    """

    def __init__(self, n: int):
        if n > MAX_PERM_SIZE:
            raise CapacityError(f"oracle witness is capped at {MAX_PERM_SIZE} matching edges")
        self.n = n
        vals = [tuple((v >> j) & 1 for j in range(n)) for v in range(1 << n)]
        self.vertices = [(e, chi) for e in range(n) for chi in vals]
        self.index = {v: i for i, v in enumerate(self.vertices)}
        size = len(self.vertices)
        d = np.zeros((size, size), dtype=np.int8)
        for i, (e, chi) in enumerate(self.vertices):
            for j, (f, eta) in enumerate(self.vertices):
                if i == j:
                    continue
                if e == f and all(x != y for x, y in zip(chi, eta)):
                    d[i, j] = 3
                elif chi[f] == eta[e]:
                    d[i, j] = 1
                else:
                    d[i, j] = 2
        self.dist = d

    def as_space(self) -> AntipodalSpace:
        return AntipodalSpace(len(self.vertices), tuple(tuple(int(x) for x in r) for r in self.dist))

    def key(self, v) -> int:
        """Index of a construction-side vertex ``(edge, bitmask)``."""
        e, val = v
        return self.index[(e, tuple((val >> j) & 1 for j in range(self.n)))]

    def preserves(self, perm: np.ndarray) -> bool:
        if sorted(perm.tolist()) != list(range(len(self.vertices))):
            return False
        return bool(np.array_equal(self.dist[np.ix_(perm, perm)], self.dist))


# ------------------------------------------------------------- reports

@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **info) -> None:
        self.failures.append(info)

    def merge(self, other: "Report") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": self.failures[:50],
            "failure_count": len(self.failures),
            "notes": self.notes,
        }


def verify_eppa(
    maps: Iterable[PartialMap],
    embedding: Callable[[int], int],
    extend: Callable[[PartialMap], Sequence[int]],
    is_automorphism: Callable[[np.ndarray], bool],
    name: str = "eppa",
    expected: Callable[[PartialMap], dict[int, int]] | None = None,
) -> Report:
    """Generic EPPA check.

    For each source partial map ``f``, ``extend(f)`` must return a total map
    of the witness (as an index sequence) that is an automorphism and agrees
    with ``embedding o f`` on the embedded domain (``expected(f)`` may supply
    a larger source-side map to agree with, e.g. the antipodal closure).
    """
    report = Report(name)
    for f in maps:
        report.checked += 1
        try:
            total = np.asarray(extend(f), dtype=np.int64)
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            report.fail(map=f.pairs(), reason=f"extender raised {exc!r}")
            continue
        target = expected(f) if expected else f.as_dict
        bad = [v for v, w in target.items() if total[embedding(v)] != embedding(w)]
        if bad:
            report.fail(map=f.pairs(), reason=f"does not extend the map at {bad}")
            continue
        if not is_automorphism(total):
            report.fail(map=f.pairs(), reason="not an automorphism of the witness")
    return report


def witness_extender(ctx, ow: OracleWitness, extend_fn) -> Callable[[PartialMap], np.ndarray]:
    """Wrap a construction-side extender as a permutation of oracle indices."""
    def run(f: PartialMap) -> np.ndarray:
        theta = extend_fn(ctx, f)
        perm = np.empty(len(ow.vertices), dtype=np.int64)
        for v in ctx.vertices():
            perm[ow.key(v)] = ow.key(theta(v))
        return perm
    return run


def verify_eppa_antipodal(
    spaces: Iterable[AntipodalSpace],
    closed_only: bool = True,
    extend_fn=None,
    sample: int | None = None,
    rng: random.Random | None = None,
) -> Report:
    """Check the witness construction on every (or ``sample``) partial
    isomorphism of every space."""
    from .eppa_core import build_witness, extend_automorphism

    extend_fn = extend_fn or extend_automorphism
    rng = rng or random.Random(0)
    total = Report("eppa antipodal")
    witnesses: dict[int, OracleWitness] = {}
    for a in spaces:
        ctx = build_witness(a)
        ow = witnesses.setdefault(ctx.n, OracleWitness(ctx.n))
        emb = [ow.key(ctx.psi[v]) for v in range(a.n)]
        # the generic copy must be an isometric embedding
        for u, v in combinations(range(a.n), 2):
            if ow.dist[emb[u], emb[v]] != a.d(u, v):
                total.fail(space=a.upper(), reason=f"psi distorts d({u},{v})")
        maps = list(all_partial_isomorphisms(a, closed_only=closed_only))
        if sample is not None and len(maps) > sample:
            maps = rng.sample(maps, sample)
        rep = verify_eppa(
            maps,
            embedding=lambda v: emb[v],
            extend=witness_extender(ctx, ow, extend_fn),
            is_automorphism=ow.preserves,
            expected=lambda f: antipodal_closure(a, f),
        )
        for fail in rep.failures:
            fail["space"] = a.upper()
        total.merge(rep)
    return total


def _h_structure(cert) -> tuple[np.ndarray, list[int]]:
    """Adjacency of ``H`` from the oracle witness, and the oracle indices of
    the ``H`` vertices (pode 0 = valuation bit at own edge is 0)."""
    ow = OracleWitness(cert.n)
    members = [i for i, (e, chi) in enumerate(ow.vertices) if chi[e] == 0]
    adj = ow.dist[np.ix_(members, members)] == 1
    return adj, members


def verify_eppa_graph(graphs: Iterable[Graph], switching: bool = True) -> Report:
    """Plain and switching partial isomorphisms of each graph must extend to
    (switching) automorphisms of ``H``. All switch sets are tried."""
    from .pipelines import extend_plain_iso, extend_switching_iso, switching_eppa_witness

    total = Report("eppa graph")
    for g in graphs:
        cert = switching_eppa_witness(g)
        adj, members = _h_structure(cert)
        size = len(members)
        emb = cert.embedding
        if [adj[emb[u], emb[v]] for u, v in combinations(range(g.n), 2)] != \
                [g.has_edge(u, v) for u, v in combinations(range(g.n), 2)]:
            total.fail(graph=g.sorted_edges(), reason="G is not induced in H")
        maps = list(all_partial_isomorphisms(g))
        for f in maps:
            total.checked += 1
            hmap = extend_plain_iso(cert, f)
            perm = np.array(hmap.permutation, dtype=np.int64)
            if any(perm[emb[x]] != emb[y] for x, y in f):
                total.fail(graph=g.sorted_edges(), map=f.pairs(), reason="plain extension misses the map")
            elif not np.array_equal(adj[np.ix_(perm, perm)], adj) or sorted(perm.tolist()) != list(range(size)):
                total.fail(graph=g.sorted_edges(), map=f.pairs(), reason="not an automorphism of H")
        if not switching:
            continue
        for f in all_partial_maps(g.n):
            for s in all_switch_sets(g, g, f):
                total.checked += 1
                hmap, s_h = extend_switching_iso(cert, SwitchingPartialMap(f, s))
                perm = np.array(hmap.permutation, dtype=np.int64)
                flip = np.zeros(size, dtype=bool)
                flip[list(s_h)] = True
                switched = adj ^ (flip[:, None] ^ flip[None, :])
                if any(perm[emb[x]] != emb[y] for x, y in f):
                    total.fail(graph=g.sorted_edges(), map=f.pairs(), switch=sorted(s), reason="switching extension misses the map")
                elif {i for i in s_h if i in set(emb[x] for x in f.dom)} != {emb[x] for x in s}:
                    total.fail(graph=g.sorted_edges(), map=f.pairs(), switch=sorted(s), reason="switch set disagrees on the domain")
                elif sorted(perm.tolist()) != list(range(size)) or not np.array_equal(adj[np.ix_(perm, perm)], switched):
                    total.fail(graph=g.sorted_edges(), map=f.pairs(), switch=sorted(s), reason="not a switching automorphism of H")
    return total


def all_partial_maps(n: int) -> Iterator[PartialMap]:
    """Every partial injection of ``0..n-1`` into itself."""
    for k in range(n + 1):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                yield PartialMap(dom, img)


def triple_tensor(adj: np.ndarray) -> np.ndarray:
    a = adj.astype(bool)
    return a[:, :, None] ^ a[:, None, :] ^ a[None, :, :]


def verify_eppa_two_graph(two_graphs: Iterable[TwoGraph]) -> Report:
    from .pipelines import extend_two_graph_partial, two_graph_eppa_witness

    total = Report("eppa two-graph")
    for t in two_graphs:
        cert = two_graph_eppa_witness(t)
        if cert.h_order == 0:
            total.checked += 1
            continue
        adj, _ = _h_structure(cert.switching)
        tri = triple_tensor(adj)
        emb = cert.embedding
        # T embeds in T(H)
        for a, b, c in combinations(range(t.n), 3):
            if tri[emb[a], emb[b], emb[c]] != t.has_triple(a, b, c):
                total.fail(two_graph=t.sorted_triples(), reason="T is not induced in T(H)")
                break
        for f in all_partial_isomorphisms(t):
            total.checked += 1
            perm = np.array(extend_two_graph_partial(cert, f).permutation, dtype=np.int64)
            if any(perm[emb[x]] != emb[y] for x, y in f):
                total.fail(two_graph=t.sorted_triples(), map=f.pairs(), reason="extension misses the map")
            elif sorted(perm.tolist()) != list(range(cert.h_order)) or \
                    not np.array_equal(tri[np.ix_(perm, perm, perm)], tri):
                total.fail(two_graph=t.sorted_triples(), map=f.pairs(), reason="not an automorphism of T(H)")
    return total


def coherent_triples(maps: Sequence[PartialMap]) -> Iterator[tuple[PartialMap, PartialMap, PartialMap]]:
    """All ``(f, g, h)`` with ``range f = dom g`` and ``h = g o f`` composed here."""
    by_dom: dict[frozenset, list[PartialMap]] = defaultdict(list)
    for m in maps:
        by_dom[frozenset(m.dom)].append(m)
    for f in maps:
        for g in by_dom.get(frozenset(f.img), ()):
            gd = dict(zip(g.dom, g.img))
            h = PartialMap(f.dom, tuple(gd[y] for y in f.img), f.kind)
            yield f, g, h


def verify_coherence(ctx, closed_only: bool = False, sample: int | None = None,
                     rng: random.Random | None = None) -> Report:
    """Check ``ext(g o f) == ext(g) o ext(f)`` pointwise on ``B`` for coherent triples."""
    from .eppa_core import extend_automorphism

    rng = rng or random.Random(0)
    a = ctx.space
    maps = list(all_partial_isomorphisms(a, closed_only=closed_only))
    triples = list(coherent_triples(maps))
    if sample is not None and len(triples) > sample:
        triples = rng.sample(triples, sample)
    report = Report("coherence")
    cache: dict[PartialMap, np.ndarray] = {}
    verts = list(ctx.vertices())

    def perm_of(f: PartialMap) -> np.ndarray:
        if f not in cache:
            theta = extend_automorphism(ctx, f)
            cache[f] = np.array([ctx.index(theta(v)) for v in verts])
        return cache[f]

    for f, g, h in triples:
        report.checked += 1
        pf, pg, ph = perm_of(f), perm_of(g), perm_of(h)
        if not np.array_equal(ph, pg[pf]):
            report.fail(space=a.upper(), f=f.pairs(), g=g.pairs(),
                        reason="extension of g o f differs from composed extensions")
    return report


def measure_two_graph_coherence(two_graphs: Iterable[TwoGraph], sample: int | None = None,
                                rng: random.Random | None = None) -> Report:
    """Count coherent triples on which the two-graph pipeline is not coherent.

    Failures are expected (the witness need not be coherent) and are
    reported, never treated as errors by callers.
    """
    from .pipelines import extend_two_graph_partial, two_graph_eppa_witness

    rng = rng or random.Random(0)
    report = Report("two-graph coherence")
    for t in two_graphs:
        cert = two_graph_eppa_witness(t)
        if cert.h_order == 0:
            continue
        maps = list(all_partial_isomorphisms(t))
        triples = list(coherent_triples(maps))
        if sample is not None and len(triples) > sample:
            triples = rng.sample(triples, sample)
        cache: dict[PartialMap, tuple] = {}

        def perm_of(f):
            if f not in cache:
                cache[f] = extend_two_graph_partial(cert, f).permutation
            return np.array(cache[f])

        for f, g, h in triples:
            report.checked += 1
            pf, pg, ph = perm_of(f), perm_of(g), perm_of(h)
            if not np.array_equal(ph, pg[pf]):
                report.fail(two_graph=t.sorted_triples(), f=f.pairs(), g=g.pairs())
    report.notes["violation_rate"] = (len(report.failures) / report.checked) if report.checked else 0.0
    return report


def verify_plain_graph_coherence(graphs: Iterable[Graph], sample: int | None = None,
                                 rng: random.Random | None = None) -> Report:
    from .pipelines import extend_plain_iso, switching_eppa_witness

    rng = rng or random.Random(0)
    report = Report("graph plain coherence")
    for g in graphs:
        cert = switching_eppa_witness(g)
        maps = list(all_partial_isomorphisms(g))
        triples = list(coherent_triples(maps))
        if sample is not None and len(triples) > sample:
            triples = rng.sample(triples, sample)
        cache: dict[PartialMap, np.ndarray] = {}

        def perm_of(f):
            if f not in cache:
                cache[f] = np.array(extend_plain_iso(cert, f).permutation)
            return cache[f]

        for f, gg, h in triples:
            report.checked += 1
            if not np.array_equal(perm_of(h), perm_of(gg)[perm_of(f)]):
                report.fail(graph=g.sorted_edges(), f=f.pairs(), g=gg.pairs())
    return report


# --------------------------------------------------------------- APA

def apa_brute_force(max_extra: int = 1) -> Report:
    """Direct check of the APA failure: amalgams of B1 = {0,1,2} (no triple)
    and B2 = {0,1,3} (triple) over {0,1} exist, and none admits an
    automorphism swapping 0, 1 while fixing 2, 3."""
    report = Report("apa")
    amalgams = 0
    for k in range(4, 5 + max_extra):
        for t in enumerate_two_graphs(k):
            if (0, 1, 2) in t.triples or (0, 1, 3) not in t.triples:
                continue
            amalgams += 1
            report.checked += 1
            for rest in permutations(range(4, k)):
                g = (1, 0, 2, 3, *rest)
                if {tuple(sorted(g[x] for x in tr)) for tr in t.triples} == t.triples:
                    report.fail(two_graph=t.sorted_triples(), automorphism=list(g))
    report.notes["amalgams"] = amalgams
    return report
