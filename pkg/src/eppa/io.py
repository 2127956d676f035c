"""Text formats for structures and partial maps, and certificate manifests.

Formats (whitespace-insensitive; a ``#`` starts a comment running to the end
of the line)::

    graph <n>        then pairs      u v
    twograph <n>     then triples    u v w
    antipodal <n>    then the strict upper triangle of the distance matrix
    map <k>          then k pairs    src dst   [then: switch v1 v2 ...]

Manifests are a header line (``eppa-cert v1`` or ``eppa-witness v1``)
followed by canonical JSON.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Union

from .structures import (
    AntipodalSpace,
    Graph,
    PartialMap,
    SwitchingPartialMap,
    TwoGraph,
    validate,
)

Structure = Union[Graph, TwoGraph, AntipodalSpace]
KINDS = ("graph", "twograph", "antipodal", "map")
CERT_HEADER = "eppa-cert v1"
WITNESS_HEADER = "eppa-witness v1"


class ParseError(ValueError):
    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


def _tokens(text: str) -> list[_Token]:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        col = 0
        for word in body.split():
            col = body.index(word, col)
            out.append(_Token(word, ln, col + 1))
            col += len(word)
    return out


class _Cursor:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.pos = 0
        last = text.splitlines() or [""]
        self.end = (len(last), len(last[-1]) + 1)

    def done(self) -> bool:
        return self.pos >= len(self.toks)

    def peek(self) -> _Token | None:
        return None if self.done() else self.toks[self.pos]

    def word(self, what: str) -> _Token:
        if self.done():
            raise ParseError(*self.end, f"unexpected end of input, expected {what}")
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def int(self, what: str, lo: int | None = None, hi: int | None = None) -> int:
        tok = self.word(what)
        try:
            val = int(tok.text)
        except ValueError:
            raise ParseError(tok.line, tok.column, f"expected {what}, got {tok.text!r}") from None
        if (lo is not None and val < lo) or (hi is not None and val > hi):
            raise ParseError(tok.line, tok.column, f"{what} {val} out of range")
        return val

    def expect_end(self) -> None:
        if not self.done():
            tok = self.toks[self.pos]
            raise ParseError(tok.line, tok.column, f"unexpected token {tok.text!r}")


def _header(cur: _Cursor, kind: str) -> int:
    tok = cur.word(f"'{kind}' header")
    if tok.text != kind:
        raise ParseError(tok.line, tok.column, f"expected '{kind}', got {tok.text!r}")
    return cur.int("vertex count", lo=0)


def parse(kind: str, text: str, check: bool = True):
    """Parse one structure; with ``check`` a structure failing its axioms
    raises :class:`StructureError` carrying the validation report."""
    cur = _Cursor(text)
    if kind == "graph":
        n = _header(cur, "graph")
        edges = []
        while not cur.done():
            edges.append((cur.int("vertex"), cur.int("vertex")))
        obj = Graph(n, frozenset(edges))
    elif kind == "twograph":
        n = _header(cur, "twograph")
        triples = []
        while not cur.done():
            triples.append((cur.int("vertex"), cur.int("vertex"), cur.int("vertex")))
        obj = TwoGraph(n, frozenset(triples))
    elif kind == "antipodal":
        n = _header(cur, "antipodal")
        values = [cur.int("distance") for _ in range(n * (n - 1) // 2)]
        cur.expect_end()
        obj = AntipodalSpace.from_upper(n, values)
    elif kind == "map":
        k = _header(cur, "map")
        dom, img = [], []
        for _ in range(k):
            dom.append(cur.int("source vertex", lo=0))
            img.append(cur.int("target vertex", lo=0))
        switch = None
        tok = cur.peek()
        if tok is not None:
            if tok.text != "switch":
                raise ParseError(tok.line, tok.column, f"expected 'switch', got {tok.text!r}")
            cur.word("switch")
            switch = []
            while not cur.done():
                switch.append(cur.int("switched vertex", lo=0))
        try:
            pm = PartialMap(tuple(dom), tuple(img))
            return pm if switch is None else SwitchingPartialMap(pm, frozenset(switch))
        except ValueError as exc:
            raise ParseError(1, 1, str(exc)) from None
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if check:
        validate(obj).raise_if_invalid()
    return obj


def sniff_kind(text: str) -> str:
    for tok in _tokens(text):
        if tok.text in KINDS:
            return tok.text
        raise ParseError(tok.line, tok.column, f"unknown header {tok.text!r}")
    raise ParseError(1, 1, "empty input")


def parse_any(text: str, check: bool = True):
    return parse(sniff_kind(text), text, check)


def serialize(obj) -> str:
    if isinstance(obj, Graph):
        lines = [f"graph {obj.n}"] + [f"{u} {v}" for u, v in obj.sorted_edges()]
    elif isinstance(obj, TwoGraph):
        lines = [f"twograph {obj.n}"] + [" ".join(map(str, t)) for t in obj.sorted_triples()]
    elif isinstance(obj, AntipodalSpace):
        lines = [f"antipodal {obj.n}"] + [
            " ".join(str(obj.dist[u][v]) for v in range(u + 1, obj.n)) for u in range(obj.n - 1)
        ]
    elif isinstance(obj, SwitchingPartialMap):
        body = serialize(obj.map).rstrip("\n").split("\n")
        lines = body + [" ".join(["switch", *map(str, sorted(obj.switch_set))])]
    elif isinstance(obj, PartialMap):
        lines = [f"map {len(obj)}"] + [f"{a} {b}" for a, b in obj]
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class Manifest:
    header: str
    payload: dict

    def to_text(self) -> str:
        return self.header + "\n" + json.dumps(self.payload, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Manifest":
        head, _, body = text.partition("\n")
        head = head.strip()
        if head not in (CERT_HEADER, WITNESS_HEADER):
            raise ParseError(1, 1, f"unknown manifest header {head!r}")
        try:
            payload = json.loads(body)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno + 1, exc.colno, exc.msg) from None
        if not isinstance(payload, dict):
            raise ParseError(2, 1, "manifest body must be a JSON object")
        return cls(head, payload)


def witness_manifest(ctx, source_text: str, command: str = "") -> Manifest:
    from .eppa_core import valuation_str

    n = ctx.n
    return Manifest(WITNESS_HEADER, {
        "source": source_text,
        "n": n,
        "size": ctx.size,
        "m_order": [list(e) for e in ctx.m_order],
        "pode": list(ctx.pode),
        "psi": [[v.edge, valuation_str(v.val, n)] for v in ctx.psi],
        "pode_rule": "p_hat((e, chi)) = chi(e)",
        "distance_rule": "3 if same edge and complementary; 1 if chi(f) == chi'(e); else 2",
        "provenance": {"command": command, "input_sha256": digest(source_text)},
    })


def certificate_manifest(cert, source_text: str, command: str = "") -> Manifest:
    """Manifest for a switching or two-graph certificate."""
    from .eppa_core import valuation_str
    from .pipelines import TwoGraphEppaCertificate

    two = isinstance(cert, TwoGraphEppaCertificate)
    sw = cert.switching if two else cert
    ctx = sw.witness
    payload = {
        "kind": "two-graph" if two else "switching",
        "source": source_text,
        "n": sw.n,
        "h_order": sw.h_order,
        "embedding": list(sw.embedding),
        "m_order": [list(e) for e in ctx.m_order],
        "pode": list(sw.pode),
        "psi": [[v.edge, valuation_str(v.val, sw.n)] for v in ctx.psi],
        "pode_rule": "p_hat((e, chi)) = chi(e)",
        "h_index_rule": "H vertex e * 2**(n-1) + (chi with bit e deleted) is (e, chi) with chi(e) = 0",
        "provenance": {"command": command, "input_sha256": digest(source_text)},
    }
    if two:
        payload["base"] = cert.base
        payload["base_graph"] = serialize(cert.graph)
    return Manifest(CERT_HEADER, payload)


def certificate_from_manifest(m: Manifest):
    """Rebuild a certificate and check it against the recorded tables."""
    from .pipelines import switching_eppa_witness, two_graph_eppa_witness

    if m.header != CERT_HEADER:
        raise ParseError(1, 1, f"expected {CERT_HEADER!r} manifest")
    p = m.payload
    src = p.get("source", "")
    if p.get("provenance", {}).get("input_sha256") not in (None, digest(src)):
        raise ParseError(2, 1, "source digest does not match the recorded one")
    if p.get("kind") == "two-graph":
        cert = two_graph_eppa_witness(parse("twograph", src))
        fresh = certificate_manifest(cert, src)
    elif p.get("kind") == "switching":
        cert = switching_eppa_witness(parse("graph", src))
        fresh = certificate_manifest(cert, src)
    else:
        raise ParseError(2, 1, f"unknown certificate kind {p.get('kind')!r}")
    for key in ("embedding", "m_order", "pode", "psi", "h_order"):
        if fresh.payload[key] != p.get(key):
            raise ParseError(2, 1, f"recorded {key} does not match the rebuilt certificate")
    return cert
