"""A coherent EPPA-witness for a finite antipodal metric space of diameter 3.

For a space ``A`` with matching edges ``e_0 .. e_{n-1}`` the witness ``B`` has
one vertex ``(e, chi)`` per matching edge ``e`` and valuation
``chi: M -> {0,1}``. Valuations are ``n``-bit integers, bit ``j`` holding
``chi(e_j)``. Distances in ``B`` are evaluated on demand:

* ``(e, chi)`` and ``(e, ~chi)`` are at distance 3;
* otherwise ``(e, chi)`` and ``(f, chi')`` are at distance 1 iff
  ``chi(f) == chi'(e)``, and at distance 2 if not.

``B`` has ``n * 2**n`` vertices and is materialised only on request.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

from .antipodal import check_pode, canonical_pode, matching_edges
from .structures import (
    AntipodalSpace,
    CapacityError,
    PartialMap,
    StructureError,
    is_partial_isomorphism,
    validate_antipodal,
)

MAX_EDGES = 63
DEFAULT_MATERIALIZE_LIMIT = 12


def materialize_limit() -> int:
    """Largest number of matching edges for which ``B`` may be listed out."""
    raw = os.environ.get("EPPA_MATERIALIZE_LIMIT")
    return int(raw) if raw else DEFAULT_MATERIALIZE_LIMIT


class WitnessVertex(NamedTuple):
    edge: int
    val: int


def valuation_str(val: int, n: int) -> str:
    """Render ``chi`` as ``chi(e_0) chi(e_1) ...`` without separators."""
    return "".join(str((val >> j) & 1) for j in range(n))


def parse_valuation(text: str) -> int:
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"valuation must be a 0/1 string, got {text!r}")
    return sum(1 << j for j, ch in enumerate(text) if ch == "1")


def _permute_bits(val: int, perm: Sequence[int]) -> int:
    out = 0
    for j, tgt in enumerate(perm):
        if (val >> j) & 1:
            out |= 1 << tgt
    return out


@dataclass(frozen=True)
class WitnessContext:
    """The witness ``B`` over ``space`` with its generic copy ``psi``.

    ``m_order[i] = (x_i, y_i)`` lists matching edge ``e_i`` with ``pode[x_i] == 0``.
    """

    space: AntipodalSpace
    m_order: tuple[tuple[int, int], ...]
    pode: tuple[int, ...]
    psi: tuple[WitnessVertex, ...]

    @property
    def n(self) -> int:
        return len(self.m_order)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        return self.n << self.n

    @cached_property
    def psi_inverse(self) -> dict[WitnessVertex, int]:
        return {w: v for v, w in enumerate(self.psi)}

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.space.n
        for i, (x, y) in enumerate(self.m_order):
            out[x] = out[y] = i
        return tuple(out)

    def check_vertex(self, v: WitnessVertex) -> None:
        if not (0 <= v.edge < self.n and 0 <= v.val <= self.full):
            raise ValueError(f"{v} is not a vertex of a witness with n={self.n}")

    def distance(self, u: WitnessVertex, v: WitnessVertex) -> int:
        return witness_distance(self, u, v)

    def antipode(self, v: WitnessVertex) -> WitnessVertex:
        return WitnessVertex(v.edge, v.val ^ self.full)

    def index(self, v: WitnessVertex) -> int:
        return (v.edge << self.n) | v.val

    def vertex(self, i: int) -> WitnessVertex:
        return WitnessVertex(i >> self.n, i & self.full)

    def vertices(self) -> Iterator[WitnessVertex]:
        for e in range(self.n):
            for val in range(self.full + 1):
                yield WitnessVertex(e, val)

    def check_materializable(self, limit: int | None = None) -> None:
        limit = materialize_limit() if limit is None else limit
        if self.n > limit:
            raise CapacityError(
                f"witness has {self.n} matching edges ({self.size} vertices); "
                f"materialisation limit is {limit}"
            )

    def materialize(self, limit: int | None = None) -> AntipodalSpace:
        """``B`` as an explicit space; vertex ``i`` is ``self.vertex(i)``."""
        self.check_materializable(limit)
        verts = list(self.vertices())
        return AntipodalSpace.from_function(
            len(verts), lambda i, j: witness_distance(self, verts[i], verts[j])
        )

    def pode_value(self, v: WitnessVertex) -> int:
        return pode_value(self, v)


def build_witness(a: AntipodalSpace, pode: Sequence[int] | None = None) -> WitnessContext:
    """Construct ``B`` and the generic copy of ``a`` in it.

    ``pode`` defaults to the canonical labelling (smaller endpoint in pode 0).
    Point ``x_i`` is sent to ``(e_i, chi_i)`` where ``chi_i(e_j)`` is 0 for
    ``j >= i`` and, for ``j < i``, 0 exactly when ``d(x_i, x_j) == 1``;
    ``y_i`` is sent to the antipode of that.
    """
    validate_antipodal(a).raise_if_invalid()
    p = canonical_pode(a) if pode is None else check_pode(a, pode)
    m = matching_edges(a)
    n = len(m)
    if n > MAX_EDGES:
        raise CapacityError(f"{n} matching edges exceed the cap of {MAX_EDGES}")
    order = tuple((x, y) if p[x] == 0 else (y, x) for x, y in m)
    full = (1 << n) - 1
    psi: list[WitnessVertex | None] = [None] * a.n
    for i, (x, y) in enumerate(order):
        val = 0
        for j in range(i):
            if a.d(x, order[j][0]) != 1:
                val |= 1 << j
        psi[x] = WitnessVertex(i, val)
        psi[y] = WitnessVertex(i, val ^ full)
    ctx = WitnessContext(a, order, p, tuple(psi))
    for u, v in combinations(range(a.n), 2):
        if witness_distance(ctx, ctx.psi[u], ctx.psi[v]) != a.d(u, v):
            raise RuntimeError(f"generic copy fails to preserve d({u},{v})")
    return ctx


def witness_distance(ctx: WitnessContext, u: WitnessVertex, v: WitnessVertex) -> int:
    ctx.check_vertex(u)
    ctx.check_vertex(v)
    if u == v:
        raise ValueError("distance of a vertex to itself is not defined")
    if u.edge == v.edge and u.val ^ v.val == ctx.full:
        return 3
    # same-edge non-antipodal pairs fall through here as well
    return 1 if (u.val >> v.edge) & 1 == (v.val >> u.edge) & 1 else 2


def pode_value(ctx: WitnessContext, v: WitnessVertex) -> int:
    ctx.check_vertex(v)
    return (v.val >> v.edge) & 1


FlipSet = frozenset  # of (e, f) pairs with e <= f; (e, e) is a singleton


@dataclass(frozen=True)
class WitnessAutomorphism:
    """An automorphism of ``B`` given by a permutation of ``M`` and flipped pairs.

    ``(e, chi)`` goes to ``(perm[e], xi)`` with
    ``xi(perm[f]) = chi(f) XOR [{e, f} in flips]``.
    """

    perm: tuple[int, ...]
    flips: FlipSet = frozenset()

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm must be a permutation of the matching edges")
        object.__setattr__(
            self, "flips", frozenset((min(e, f), max(e, f)) for e, f in self.flips)
        )

    @property
    def n(self) -> int:
        return len(self.perm)

    @cached_property
    def _masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for e, f in self.flips:
            masks[e] |= 1 << f
            masks[f] |= 1 << e
        return tuple(masks)

    def __call__(self, v: WitnessVertex) -> WitnessVertex:
        return apply_witness_automorphism(self, v)

    def compose(self, first: "WitnessAutomorphism") -> "WitnessAutomorphism":
        """``self o first`` in the same compact form."""
        if first.n != self.n:
            raise ValueError("dimension mismatch")
        perm = tuple(self.perm[first.perm[e]] for e in range(self.n))
        pulled = {
            (min(e, f), max(e, f))
            for e, f in combinations(range(self.n), 2)
            if (min(first.perm[e], first.perm[f]), max(first.perm[e], first.perm[f])) in self.flips
        }
        pulled |= {(e, e) for e in range(self.n) if (first.perm[e], first.perm[e]) in self.flips}
        return WitnessAutomorphism(perm, frozenset(first.flips ^ pulled))

    def inverse(self) -> "WitnessAutomorphism":
        inv = [0] * self.n
        for e, t in enumerate(self.perm):
            inv[t] = e
        flips = {(min(self.perm[e], self.perm[f]), max(self.perm[e], self.perm[f])) for e, f in self.flips}
        return WitnessAutomorphism(tuple(inv), frozenset(flips))

    def permutation(self, ctx: WitnessContext, limit: int | None = None) -> tuple[int, ...]:
        """The action on vertex indices of ``B``."""
        ctx.check_materializable(limit)
        return tuple(ctx.index(self(v)) for v in ctx.vertices())

    def to_dict(self) -> dict:
        return {"perm": list(self.perm), "flips": [list(p) for p in sorted(self.flips)]}


def apply_witness_automorphism(theta: WitnessAutomorphism, v: WitnessVertex) -> WitnessVertex:
    if not (0 <= v.edge < theta.n and 0 <= v.val < (1 << theta.n)):
        raise ValueError(f"{v} does not live on {theta.n} matching edges")
    return WitnessVertex(theta.perm[v.edge], _permute_bits(v.val ^ theta._masks[v.edge], theta.perm))


def close_under_antipodes(a: AntipodalSpace, phi: PartialMap) -> PartialMap:
    """Add ``antipode(v) -> antipode(phi(v))`` for every ``v`` in the domain."""
    anti = a.antipodes
    mapping = dict(phi.as_dict)
    dom, img = list(phi.dom), list(phi.img)
    for v, w in phi:
        av, aw = anti[v], anti[w]
        if av in mapping:
            if mapping[av] != aw:
                raise StructureError(
                    f"{v} and its antipode {av} are not sent to antipodal points"
                )
            continue
        mapping[av] = aw
        dom.append(av)
        img.append(aw)
    return PartialMap(tuple(dom), tuple(img), phi.kind)


def project_and_extend(ctx: WitnessContext, phi_b: PartialMap) -> tuple[int, ...]:
    """Project a partial map of the generic copy to ``M`` and extend it to a
    permutation, matching leftover edges in increasing order."""
    proj: dict[int, int] = {}
    for u, v in phi_b:
        if proj.setdefault(u.edge, v.edge) != v.edge:
            raise StructureError(f"partial map splits matching edge e{u.edge}")
    if len(set(proj.values())) != len(proj):
        raise StructureError("projection to matching edges is not injective")
    free_src = [e for e in range(ctx.n) if e not in proj]
    used = set(proj.values())
    free_tgt = [e for e in range(ctx.n) if e not in used]
    proj.update(zip(free_src, free_tgt))
    return tuple(proj[e] for e in range(ctx.n))


def flip_set(ctx: WitnessContext, phi_b: PartialMap, perm: Sequence[int]) -> FlipSet:
    """Pairs ``{e, f}`` on which ``phi_b`` disagrees with the plain relabelling."""
    flagged: dict[int, int] = {}
    for u, v in phi_b:
        if v.edge != perm[u.edge]:
            raise StructureError("permutation does not extend the projection")
        diff = u.val ^ _permute_bits_inverse(v.val, perm)
        if flagged.setdefault(u.edge, diff) != diff:
            raise StructureError(
                f"antipodal choices at e{u.edge} disagree on the flipped pairs"
            )
    out = set()
    for e, diff in flagged.items():
        for f in range(ctx.n):
            if (diff >> f) & 1:
                out.add((min(e, f), max(e, f)))
    # a pair flipped from one side must be flipped from the other
    for e, diff in flagged.items():
        for f, other in flagged.items():
            if ((diff >> f) & 1) != ((other >> e) & 1):
                raise StructureError(f"pair {{e{e}, e{f}}} flipped from one side only")
    return frozenset(out)


def _permute_bits_inverse(val: int, perm: Sequence[int]) -> int:
    # bit f of the result is bit perm[f] of val
    out = 0
    for f, tgt in enumerate(perm):
        if (val >> tgt) & 1:
            out |= 1 << f
    return out


def to_witness_map(ctx: WitnessContext, phi: PartialMap) -> PartialMap:
    """Translate a partial map of ``A`` to the generic copy."""
    return PartialMap(
        tuple(ctx.psi[v] for v in phi.dom), tuple(ctx.psi[v] for v in phi.img), "witness"
    )


def extend_automorphism(ctx: WitnessContext, phi: PartialMap) -> WitnessAutomorphism:
    """Extend a partial isomorphism of ``ctx.space`` to an automorphism of ``B``.

    The map is closed under antipodes, carried to the generic copy, projected
    to ``M`` and extended order-preservingly; the flipped pairs then fix the
    action on valuations. The result composes coherently: if ``h = g o f``
    with matching domains and ranges, the extension of ``h`` equals the
    extension of ``g`` composed with that of ``f``.
    """
    if not is_partial_isomorphism(ctx.space, phi):
        raise StructureError("map is not a partial isomorphism of the source space")
    closed = close_under_antipodes(ctx.space, phi)
    phi_b = to_witness_map(ctx, closed)
    perm = project_and_extend(ctx, phi_b)
    return WitnessAutomorphism(perm, flip_set(ctx, phi_b, perm))
