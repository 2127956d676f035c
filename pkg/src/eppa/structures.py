"""Graphs, two-graphs, antipodal metric spaces of diameter 3, and partial maps.

All structures live on the dense vertex set ``0..n-1`` and are immutable.
Constructors normalise their input but never reject it; use the ``validate_*``
functions to obtain a full report of violated axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence


class StructureError(ValueError):
    """Raised when a structure (or partial map) does not satisfy its axioms."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


class CapacityError(ValueError):
    """Raised when a request exceeds a hard size cap."""


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str = ""

    def __str__(self) -> str:
        text = f"{self.kind} at {self.witness}"
        return f"{text}: {self.message}" if self.message else text


@dataclass(frozen=True)
class ValidationReport:
    structure: str
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def raise_if_invalid(self) -> None:
        if self.violations:
            lines = "; ".join(str(v) for v in self.violations[:5])
            more = len(self.violations) - 5
            if more > 0:
                lines += f"; ... ({more} more)"
            raise StructureError(f"invalid {self.structure}: {lines}", self)

    def to_dict(self) -> dict:
        return {
            "structure": self.structure,
            "ok": self.ok,
            "violations": [
                {"kind": v.kind, "witness": list(v.witness), "message": v.message}
                for v in self.violations
            ],
        }


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on ``0..n-1``; edges are stored as sorted pairs."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(_pair(*e) for e in self.edges))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(combinations(range(n), 2)))

    @cached_property
    def _adj(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            if u != v and 0 <= u < self.n and 0 <= v < self.n:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return tuple(adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def neighbours(self, v: int) -> list[int]:
        a = self._adj[v]
        return [u for u in range(self.n) if (a >> u) & 1]

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, re-indexed so that ``vertices[i]`` becomes ``i``."""
        k = len(vertices)
        return Graph(k, frozenset(
            (i, j) for i, j in combinations(range(k), 2)
            if self.has_edge(vertices[i], vertices[j])
        ))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class TwoGraph:
    """A 3-uniform hypergraph on ``0..n-1``; triples stored as sorted tuples."""

    n: int
    triples: frozenset[tuple[int, int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(
            self, "triples", frozenset(tuple(sorted(t)) for t in self.triples)
        )

    def has_triple(self, a: int, b: int, c: int) -> bool:
        return tuple(sorted((a, b, c))) in self.triples

    def induced(self, vertices: Sequence[int]) -> "TwoGraph":
        k = len(vertices)
        return TwoGraph(k, frozenset(
            t for t in combinations(range(k), 3)
            if self.has_triple(*(vertices[i] for i in t))
        ))

    def sorted_triples(self) -> list[tuple[int, int, int]]:
        return sorted(self.triples)


@dataclass(frozen=True)
class AntipodalSpace:
    """A complete edge-labelled graph with labels in {1, 2, 3}.

    ``dist`` is the full ``n x n`` matrix (zero diagonal). It is kept as given
    so that asymmetric or out-of-range input can be reported by
    :func:`validate_antipodal` rather than silently repaired.
    """

    n: int
    dist: tuple[tuple[int, ...], ...]

    @classmethod
    def from_function(cls, n: int, d: Callable[[int, int], int]) -> "AntipodalSpace":
        rows = [[0] * n for _ in range(n)]
        for u, v in combinations(range(n), 2):
            rows[u][v] = rows[v][u] = d(u, v)
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def from_pairs(cls, n: int, pairs: Mapping[tuple[int, int], int]) -> "AntipodalSpace":
        return cls.from_function(n, lambda u, v: pairs[(u, v)])

    @classmethod
    def from_upper(cls, n: int, values: Sequence[int]) -> "AntipodalSpace":
        """Build from the strict upper triangle listed row by row."""
        if len(values) != n * (n - 1) // 2:
            raise ValueError(
                f"expected {n * (n - 1) // 2} upper-triangle values, got {len(values)}"
            )
        it = iter(values)
        upper = {(u, v): next(it) for u, v in combinations(range(n), 2)}
        return cls.from_pairs(n, upper)

    def d(self, u: int, v: int) -> int:
        return self.dist[u][v]

    def upper(self) -> list[int]:
        return [self.dist[u][v] for u, v in combinations(range(self.n), 2)]

    @cached_property
    def antipodes(self) -> tuple[int, ...]:
        """``antipodes[v]`` is the unique vertex at distance 3 from ``v``."""
        validate_antipodal(self).raise_if_invalid()
        out = [-1] * self.n
        for u in range(self.n):
            for v in range(self.n):
                if u != v and self.dist[u][v] == 3:
                    out[u] = v
        return tuple(out)

    def induced(self, vertices: Sequence[int]) -> "AntipodalSpace":
        return AntipodalSpace.from_function(
            len(vertices), lambda i, j: self.dist[vertices[i]][vertices[j]]
        )


@dataclass(frozen=True)
class PartialMap:
    """A finite partial bijection ``dom[i] -> img[i]``.

    ``kind`` names the structure class the map is asserted to preserve
    ("graph", "twograph", "antipodal", "witness" or ``None``). Vertices may be
    any hashable values; for the witness they are ``WitnessVertex`` pairs.
    """

    dom: tuple
    img: tuple
    kind: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "img", tuple(self.img))
        if len(self.dom) != len(self.img):
            raise StructureError(
                f"partial map has {len(self.dom)} sources but {len(self.img)} targets"
            )
        if len(set(self.dom)) != len(self.dom):
            raise StructureError("partial map domain has duplicates")
        if len(set(self.img)) != len(self.img):
            raise StructureError("partial map is not injective")

    @classmethod
    def from_dict(cls, mapping: Mapping, kind: str | None = None) -> "PartialMap":
        items = sorted(mapping.items())
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items), kind)

    @classmethod
    def identity(cls, vertices: Iterable, kind: str | None = None) -> "PartialMap":
        vs = tuple(vertices)
        return cls(vs, vs, kind)

    @cached_property
    def as_dict(self) -> dict:
        return dict(zip(self.dom, self.img))

    def __call__(self, v: Hashable):
        return self.as_dict[v]

    def __contains__(self, v) -> bool:
        return v in self.as_dict

    def __len__(self) -> int:
        return len(self.dom)

    def __iter__(self) -> Iterator[tuple]:
        return iter(zip(self.dom, self.img))

    def pairs(self) -> list[tuple]:
        return list(zip(self.dom, self.img))

    def inverse(self) -> "PartialMap":
        return PartialMap(self.img, self.dom, self.kind)

    def compose(self, first: "PartialMap") -> "PartialMap":
        """``self o first``, defined where ``first`` lands in ``self``'s domain."""
        mine = self.as_dict
        dom, img = [], []
        for a, b in first:
            if b in mine:
                dom.append(a)
                img.append(mine[b])
        return PartialMap(tuple(dom), tuple(img), self.kind or first.kind)

    def restrict(self, vertices: Iterable) -> "PartialMap":
        keep = set(vertices)
        pairs = [(a, b) for a, b in self if a in keep]
        return PartialMap(tuple(a for a, _ in pairs), tuple(b for _, b in pairs), self.kind)

    def with_kind(self, kind: str | None) -> "PartialMap":
        return PartialMap(self.dom, self.img, kind)

    def dom_set(self) -> frozenset:
        return frozenset(self.dom)

    def img_set(self) -> frozenset:
        return frozenset(self.img)


@dataclass(frozen=True)
class SwitchingPartialMap:
    """A partial map together with the set of domain vertices it switches."""

    map: PartialMap
    switch_set: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "switch_set", frozenset(self.switch_set))
        stray = self.switch_set - self.map.dom_set()
        if stray:
            raise StructureError(f"switch set vertices {sorted(stray)} outside the domain")


# ---------------------------------------------------------------- validators

def validate_graph(g: Graph) -> ValidationReport:
    out: list[Violation] = []
    if g.n < 0:
        out.append(Violation("size", (g.n,), "negative vertex count"))
    for u, v in sorted(g.edges):
        if u == v:
            out.append(Violation("loop", (u, v)))
        for x in (u, v):
            if not 0 <= x < g.n:
                out.append(Violation("endpoint out of range", (u, v), f"vertex {x} not in 0..{g.n - 1}"))
                break
    return ValidationReport("graph", tuple(out))


def validate_two_graph(t: TwoGraph) -> ValidationReport:
    out: list[Violation] = []
    bad = False
    for tr in sorted(t.triples):
        if len(set(tr)) != 3:
            out.append(Violation("degenerate triple", tr))
            bad = True
        if any(not 0 <= x < t.n for x in tr):
            out.append(Violation("endpoint out of range", tr))
            bad = True
    if bad:
        return ValidationReport("two-graph", tuple(out))
    for quad in combinations(range(t.n), 4):
        count = sum(1 for tr in combinations(quad, 3) if tr in t.triples)
        if count % 2:
            out.append(Violation("parity", quad, f"{count} triples on a 4-set"))
    return ValidationReport("two-graph", tuple(out))


def validate_antipodal(a: AntipodalSpace) -> ValidationReport:
    """Check range, symmetry, the metric axioms and the antipodal axioms.

    With labels in {1, 2, 3} the only triangle-inequality failure is 1-1-3,
    and the only other forbidden triangle is 2-2-3; both contain a
    distance-3 pair, so triangles are scanned from those pairs only.
    """
    n = a.n
    out: list[Violation] = []
    if n < 0 or len(a.dist) != n or any(len(r) != n for r in a.dist):
        return ValidationReport("antipodal space", (Violation("shape", (n,), "distance matrix is not n x n"),))
    d = a.dist
    for v in range(n):
        if d[v][v] != 0:
            out.append(Violation("diagonal", (v,), f"d(v,v) = {d[v][v]}"))
    in_range = True
    for u, v in combinations(range(n), 2):
        if d[u][v] != d[v][u]:
            out.append(Violation("symmetry", (u, v), f"{d[u][v]} != {d[v][u]}"))
        for x in {d[u][v], d[v][u]}:
            if x not in (1, 2, 3):
                out.append(Violation("range", (u, v), f"distance {x} not in {{1,2,3}}"))
                in_range = False
    if not in_range or any(v.kind == "symmetry" for v in out):
        return ValidationReport("antipodal space", tuple(out))
    if n % 2:
        out.append(Violation("matching", (n,), "odd number of points cannot be perfectly matched"))
    threes = [(u, v) for u, v in combinations(range(n), 2) if d[u][v] == 3]
    for v in range(n):
        partners = [u for u in range(n) if u != v and d[u][v] == 3]
        if len(partners) != 1:
            out.append(Violation(
                "matching", (v, *partners),
                f"vertex {v} has {len(partners)} points at distance 3",
            ))
    for u, v in threes:
        for w in range(n):
            if w in (u, v):
                continue
            pair = sorted((d[u][w], d[v][w]))
            tri = tuple(sorted((u, v, w)))
            if pair == [1, 1]:
                out.append(Violation("triangle inequality", tri, "distances 1,1,3"))
            elif pair == [2, 2]:
                out.append(Violation("2-2-3 triangle", tri))
    return ValidationReport("antipodal space", tuple(out))


def antipode(a: AntipodalSpace, v: int) -> int:
    """The unique point at distance 3 from ``v``."""
    if not 0 <= v < a.n:
        raise StructureError(f"vertex {v} out of range")
    return a.antipodes[v]


def is_partial_isomorphism(structure, f: PartialMap) -> bool:
    """Whether ``f`` is an isomorphism between induced substructures."""
    n = structure.n
    if any(not (isinstance(x, int) and 0 <= x < n) for x in (*f.dom, *f.img)):
        return False
    pairs = f.pairs()
    if isinstance(structure, Graph):
        return all(
            structure.has_edge(a, b) == structure.has_edge(fa, fb)
            for (a, fa), (b, fb) in combinations(pairs, 2)
        )
    if isinstance(structure, TwoGraph):
        return all(
            structure.has_triple(a, b, c) == structure.has_triple(fa, fb, fc)
            for (a, fa), (b, fb), (c, fc) in combinations(pairs, 3)
        )
    if isinstance(structure, AntipodalSpace):
        return all(
            structure.d(a, b) == structure.d(fa, fb)
            for (a, fa), (b, fb) in combinations(pairs, 2)
        )
    raise TypeError(f"unsupported structure {type(structure).__name__}")


def kind_of(structure) -> str:
    if isinstance(structure, Graph):
        return "graph"
    if isinstance(structure, TwoGraph):
        return "twograph"
    if isinstance(structure, AntipodalSpace):
        return "antipodal"
    raise TypeError(f"unsupported structure {type(structure).__name__}")


def validate(structure) -> ValidationReport:
    return {
        "graph": validate_graph,
        "twograph": validate_two_graph,
        "antipodal": validate_antipodal,
    }[kind_of(structure)](structure)
