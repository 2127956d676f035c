"""Command-line entry point: ``eppa <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage, parse or
structure error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from . import __version__
from .antipodal import (
    UnliftableError,
    canonical_pode,
    double_cover,
    graph_of_two_graph,
    lift_two_graph_isomorphism,
    pode_graph,
    two_graph_of_antipodal,
)
from .eppa_core import (
    WitnessVertex,
    build_witness,
    extend_automorphism,
    parse_valuation,
    witness_distance,
)
from .io import (
    Manifest,
    ParseError,
    certificate_from_manifest,
    certificate_manifest,
    parse,
    parse_any,
    serialize,
    witness_manifest,
)
from .pipelines import (
    TwoGraphEppaCertificate,
    apa_counterexample_report,
    extend_plain_iso,
    extend_switching_iso,
    extend_two_graph_partial,
    switching_eppa_witness,
    two_graph_eppa_witness,
)
from .structures import (
    CapacityError,
    PartialMap,
    StructureError,
    SwitchingPartialMap,
    validate,
    validate_antipodal,
)
from .switching import associated_two_graph, find_switch_set, seidel_switch

DEFAULT_SEED = 20190801


class CommandFailed(Exception):
    """A verification ran and found a failure (exit 1)."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=1))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _map_arg(text: str):
    return parse("map", text)


# ------------------------------------------------------------ commands

def cmd_validate(args):
    obj = parse_any(_read(args.file), check=False)
    report = validate(obj)
    text = "valid" if report.ok else "\n".join(["invalid"] + [f"  {v}" for v in report.violations])
    _emit(args, text, report.to_dict())
    if not report.ok:
        raise CommandFailed("structure is invalid")


def cmd_switch(args):
    g = parse("graph", _read(args.file))
    out = seidel_switch(g, args.set)
    _emit(args, serialize(out), {"graph": serialize(out)})


def cmd_two_graph_of(args):
    t = associated_two_graph(parse("graph", _read(args.file)))
    _emit(args, serialize(t), {"twograph": serialize(t)})


def cmd_find_switch(args):
    g = parse("graph", _read(args.g))
    h = parse("graph", _read(args.h))
    f = _map_arg(_read(args.map))
    if isinstance(f, SwitchingPartialMap):
        f = f.map
    s = find_switch_set(g, h, f)
    if s is None:
        _emit(args, "none", {"switch_set": None})
        raise CommandFailed("no switch set")
    _emit(args, "switch " + " ".join(map(str, sorted(s))), {"switch_set": sorted(s)})


def cmd_double_cover(args):
    a, p = double_cover(parse("graph", _read(args.file)))
    text = serialize(a) + "# pode " + " ".join(map(str, p)) + "\n"
    _emit(args, text, {"antipodal": serialize(a), "pode": list(p)})


def cmd_pode_graph(args):
    a = parse("antipodal", _read(args.file))
    p = args.pode if args.pode else canonical_pode(a)
    g, index = pode_graph(a, p)
    text = serialize(g) + "# points " + " ".join(map(str, index)) + "\n"
    _emit(args, text, {"graph": serialize(g), "points": list(index)})


def cmd_two_graph_of_antipodal(args):
    t = two_graph_of_antipodal(parse("antipodal", _read(args.file)))
    _emit(args, serialize(t), {"twograph": serialize(t)})


def cmd_graph_of_two_graph(args):
    g = graph_of_two_graph(parse("twograph", _read(args.file)), args.base)
    _emit(args, serialize(g), {"graph": serialize(g)})


def cmd_lift(args):
    a1 = parse("antipodal", _read(args.a1))
    a2 = parse("antipodal", _read(args.a2))
    beta = _map_arg(_read(args.map))
    try:
        alpha = lift_two_graph_isomorphism(a1, a2, beta)
    except UnliftableError as exc:
        _emit(args, f"unliftable: {exc}", {"unliftable": True, "cycle": exc.cycle, "reason": str(exc)})
        raise CommandFailed(str(exc)) from None
    _emit(args, serialize(alpha), {"map": alpha.pairs()})


def _witness_ctx(path: str):
    text = _read(path)
    return build_witness(parse("antipodal", text)), text


def cmd_witness_build(args):
    ctx, text = _witness_ctx(args.file)
    m = witness_manifest(ctx, text, args.command_line)
    _emit(args, m.to_text(), m.payload)


def _wv(ctx, edge: int, val: str) -> WitnessVertex:
    v = WitnessVertex(edge, parse_valuation(val))
    if len(val) != ctx.n:
        raise StructureError(f"valuation {val!r} must have length {ctx.n}")
    ctx.check_vertex(v)
    return v


def cmd_witness_distance(args):
    ctx, _ = _witness_ctx(args.file)
    u = _wv(ctx, args.e1, args.chi1)
    v = _wv(ctx, args.e2, args.chi2)
    d = witness_distance(ctx, u, v)
    _emit(args, str(d), {"distance": d})


def cmd_witness_extend(args):
    ctx, _ = _witness_ctx(args.file)
    f = _map_arg(_read(args.map))
    if isinstance(f, SwitchingPartialMap):
        f = f.map
    theta = extend_automorphism(ctx, f)
    data = theta.to_dict()
    lines = ["perm " + " ".join(map(str, theta.perm)),
             "flips " + " ".join(f"{e}-{g}" for e, g in sorted(theta.flips))]
    if args.materialize:
        data["vertex_permutation"] = list(theta.permutation(ctx, args.materialize_limit))
        lines.append("vertices " + " ".join(map(str, data["vertex_permutation"])))
    _emit(args, "\n".join(lines), data)


def _random_partial_iso(a, rng: random.Random) -> PartialMap:
    """Grow a partial isomorphism point by point with random consistent targets."""
    dom, img = [], []
    for v in rng.sample(range(a.n), rng.randint(0, a.n)):
        free = [w for w in range(a.n) if w not in img
                and all(a.d(v, x) == a.d(w, y) for x, y in zip(dom, img))]
        if free:
            dom.append(v)
            img.append(rng.choice(free))
    return PartialMap(tuple(dom), tuple(img), "antipodal")


def cmd_witness_verify(args):
    from .oracle import verify_eppa_antipodal

    ctx, _ = _witness_ctx(args.file)
    failures: list[dict] = []
    if args.exhaustive:
        axioms = validate_antipodal(ctx.materialize(args.materialize_limit))
        failures += [{"reason": f"witness violates {v}"} for v in axioms.violations[:20]]
        report = verify_eppa_antipodal([ctx.space], closed_only=True)
        checked = report.checked
        failures += report.failures
    else:
        rng = random.Random(args.seed)
        checked = 0
        for _ in range(args.samples):
            checked += 1
            f = _random_partial_iso(ctx.space, rng)
            theta = extend_automorphism(ctx, f)
            if any(theta(ctx.psi[v]) != ctx.psi[w] for v, w in f):
                failures.append({"map": f.pairs(), "reason": "does not extend the map"})
                continue
            for _ in range(20):
                u, v = ctx.vertex(rng.randrange(ctx.size)), ctx.vertex(rng.randrange(ctx.size))
                if u != v and witness_distance(ctx, u, v) != witness_distance(ctx, theta(u), theta(v)):
                    failures.append({"map": f.pairs(), "reason": "distance not preserved"})
                    break
    data = {"checked": checked, "failures": failures[:50], "failure_count": len(failures), "ok": not failures}
    _emit(args, f"checked {checked} maps, {len(failures)} failures", data)
    if failures:
        raise CommandFailed("witness verification failed")


def cmd_eppa(args):
    text = _read(args.file)
    if args.kind == "graph":
        cert = switching_eppa_witness(parse("graph", text))
    else:
        cert = two_graph_eppa_witness(parse("twograph", text))
    m = certificate_manifest(cert, text, args.command_line)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(m.to_text())
    sw = cert.switching if isinstance(cert, TwoGraphEppaCertificate) else cert
    summary = f"witness graph H on {sw.h_order} vertices; embedding " + " ".join(map(str, sw.embedding))
    _emit(args, summary if args.output else m.to_text(), m.payload)


def cmd_extend(args):
    cert = certificate_from_manifest(Manifest.from_text(_read(args.cert)))
    f = _map_arg(_read(args.map))
    switch = None
    if isinstance(f, SwitchingPartialMap):
        f, switch = f.map, f.switch_set
    if args.switch is not None:
        switch = frozenset(args.switch)
    if isinstance(cert, TwoGraphEppaCertificate):
        hmap = extend_two_graph_partial(cert, f.with_kind("twograph"))
    elif switch is not None:
        hmap, _ = extend_switching_iso(cert, SwitchingPartialMap(f, switch))
    else:
        hmap = extend_plain_iso(cert, f)
    perm = hmap.permutation
    s_h = sorted(hmap.switch_set)
    data = {
        "permutation": list(perm),
        "switch_set": s_h,
        "source_switch_set": sorted(hmap.source_switch_set),
        "theta": hmap.theta.to_dict(),
    }
    text = "\n".join([
        "permutation " + " ".join(map(str, perm)),
        "switch " + " ".join(map(str, s_h)),
        "source-switch " + " ".join(map(str, sorted(hmap.source_switch_set))),
    ])
    _emit(args, text, data)


def cmd_apa_demo(args):
    from .oracle import apa_brute_force

    report = apa_counterexample_report(args.extra)
    check = apa_brute_force(args.extra)
    data = report.to_dict()
    data["oracle"] = check.to_dict()
    lines = [
        "B1 = {u,v,x1} without triple, B2 = {u,v,x2} with triple, over A = {u,v}",
        f"amalgams enumerated: {len(report.candidates)} "
        f"({report.completions_on_four} on four vertices)",
    ]
    for c in report.candidates:
        lines.append(f"  n={c.n} triples={[list(t) for t in c.triples]}: {c.reason}")
    lines.append(f"amalgam exists: {report.amalgam_exists}")
    lines.append(f"amalgam with automorphisms exists: {report.apa_extension_exists}")
    lines.append(f"oracle agrees: {check.ok and check.notes['amalgams'] == len(report.candidates)}")
    _emit(args, "\n".join(lines), data)
    if not report.ok or not check.ok or check.notes["amalgams"] != len(report.candidates):
        raise CommandFailed("APA refutation did not go through")


def cmd_oracle_enumerate(args):
    from .oracle import enumerate_antipodal_spaces, enumerate_graphs, enumerate_two_graphs

    gen = {"graph": enumerate_graphs, "twograph": enumerate_two_graphs,
           "antipodal": enumerate_antipodal_spaces}[args.kind]
    items = [serialize(x) for x in gen(args.size)]
    text = "".join(items) + f"# count {len(items)}\n"
    _emit(args, text, {"kind": args.kind, "size": args.size, "count": len(items), "items": items})


def cmd_oracle_verify_eppa(args):
    from .oracle import (
        enumerate_antipodal_spaces, enumerate_graphs, enumerate_two_graphs,
        verify_eppa_antipodal, verify_eppa_graph, verify_eppa_two_graph,
    )

    if args.kind == "antipodal":
        report = verify_eppa_antipodal(enumerate_antipodal_spaces(args.size))
    elif args.kind == "graph":
        report = verify_eppa_graph(enumerate_graphs(args.size))
    else:
        report = verify_eppa_two_graph(enumerate_two_graphs(args.size))
    _emit(args, f"{report.name}: checked {report.checked}, failures {len(report.failures)}", report.to_dict())
    if not report.ok:
        raise CommandFailed("EPPA verification failed")


def cmd_oracle_verify_coherence(args):
    from .oracle import enumerate_antipodal_spaces, measure_two_graph_coherence, enumerate_two_graphs, verify_coherence

    if args.kind == "twograph":
        report = measure_two_graph_coherence(enumerate_two_graphs(args.size))
        _emit(args, f"two-graph pipeline: {len(report.failures)} incoherent of {report.checked} coherent triples "
                    "(measured, not asserted)", report.to_dict())
        return
    total_checked, failures = 0, []
    sample = args.samples
    rng = random.Random(args.seed)
    for a in enumerate_antipodal_spaces(args.size):
        rep = verify_coherence(build_witness(a), sample=sample, rng=rng)
        total_checked += rep.checked
        failures += rep.failures
    data = {"checked": total_checked, "failures": failures[:50], "failure_count": len(failures), "ok": not failures}
    _emit(args, f"coherence: checked {total_checked} triples, failures {len(failures)}", data)
    if failures:
        raise CommandFailed("coherence verification failed")


# -------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    def options(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global options; SUPPRESS keeps them from
        # overwriting a value given before the subcommand
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        o = argparse.ArgumentParser(add_help=False)
        o.add_argument("--json", action="store_true", default=d(False), help="machine-readable JSON output")
        o.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="random seed")
        o.add_argument(
            "--materialize-limit", type=int, default=d(None),
            help="max matching edges for listing the witness out (env EPPA_MATERIALIZE_LIMIT, default 12)",
        )
        return o

    common = options(False)

    p = argparse.ArgumentParser(prog="eppa", description=__doc__.splitlines()[0], parents=[options(True)])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "validate a structure file of any kind")
    sp.add_argument("file")

    sp = add("switch", cmd_switch, "Seidel-switch a graph")
    sp.add_argument("file")
    sp.add_argument("--set", type=int, nargs="*", default=[], help="vertices to switch")

    sp = add("two-graph-of", cmd_two_graph_of, "associated two-graph of a graph")
    sp.add_argument("file")

    sp = add("find-switch", cmd_find_switch, "switch set making a partial map an isomorphism")
    sp.add_argument("g")
    sp.add_argument("h")
    sp.add_argument("map")

    sp = add("double-cover", cmd_double_cover, "antipodal double cover of a graph")
    sp.add_argument("file")

    sp = add("pode-graph", cmd_pode_graph, "graph on one pode of an antipodal space")
    sp.add_argument("file")
    sp.add_argument("--pode", type=int, nargs="*", help="pode labelling (default: smaller endpoints get 0)")

    sp = add("two-graph-of-antipodal", cmd_two_graph_of_antipodal, "two-graph on the matching edges")
    sp.add_argument("file")

    sp = add("graph-of-two-graph", cmd_graph_of_two_graph, "graph in the switching class isolating a base vertex")
    sp.add_argument("file")
    sp.add_argument("--base", type=int, default=0)

    sp = add("lift", cmd_lift, "lift a two-graph isomorphism on matching edges to the spaces")
    sp.add_argument("a1")
    sp.add_argument("a2")
    sp.add_argument("map")

    wp = add("witness", None, "the EPPA-witness of an antipodal space")
    wsub = wp.add_subparsers(dest="witness_command", required=True)

    def wadd(name, func, help_):
        sp = wsub.add_parser(name, help=help_, description=help_, parents=[common])
        sp.set_defaults(func=func)
        sp.add_argument("file")
        return sp

    wadd("build", cmd_witness_build, "emit the witness manifest")
    sp = wadd("distance", cmd_witness_distance, "distance between two witness vertices")
    sp.add_argument("e1", type=int)
    sp.add_argument("chi1")
    sp.add_argument("e2", type=int)
    sp.add_argument("chi2")
    sp = wadd("extend", cmd_witness_extend, "extend a partial isomorphism to the witness")
    sp.add_argument("map")
    sp.add_argument("--materialize", action="store_true", help="also list the vertex permutation")
    sp = wadd("verify", cmd_witness_verify, "check the witness and its extensions")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int, default=200)

    ep = add("eppa", cmd_eppa, "build an EPPA certificate for a graph or two-graph")
    ep.add_argument("kind", choices=["graph", "two-graph"])
    ep.add_argument("file")
    ep.add_argument("-o", "--output", help="write the manifest here")

    sp = add("extend", cmd_extend, "extend a partial map using a certificate manifest")
    sp.add_argument("--cert", required=True)
    sp.add_argument("--map", required=True)
    sp.add_argument("--switch", type=int, nargs="*", help="switch set (graph certificates)")

    sp = add("apa-demo", cmd_apa_demo, "machine-checked failure of APA for two-graphs")
    sp.add_argument("--extra", type=int, default=1, help="extra amalgam vertices to enumerate")

    op = add("oracle", None, "brute-force enumeration and verification")
    osub = op.add_subparsers(dest="oracle_command", required=True)
    sp = osub.add_parser("enumerate", parents=[common], help="list all labeled structures")
    sp.set_defaults(func=cmd_oracle_enumerate)
    sp.add_argument("kind", choices=["graph", "twograph", "antipodal"])
    sp.add_argument("size", type=int)
    sp = osub.add_parser("verify-eppa", parents=[common], help="exhaustive EPPA check")
    sp.set_defaults(func=cmd_oracle_verify_eppa)
    sp.add_argument("kind", choices=["graph", "twograph", "antipodal"])
    sp.add_argument("size", type=int)
    sp = osub.add_parser("verify-coherence", parents=[common], help="coherence check over coherent triples")
    sp.set_defaults(func=cmd_oracle_verify_coherence)
    sp.add_argument("size", type=int, help="points (antipodal) or vertices (twograph)")
    sp.add_argument("--kind", choices=["antipodal", "twograph"], default="antipodal")
    sp.add_argument("--samples", type=int, default=None, help="sample this many triples per space")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.command_line = " ".join(["eppa", *argv])
    saved = os.environ.get("EPPA_MATERIALIZE_LIMIT")
    if args.materialize_limit is not None:
        os.environ["EPPA_MATERIALIZE_LIMIT"] = str(args.materialize_limit)
    try:
        args.func(args)
    except CommandFailed as exc:
        print(f"eppa: {exc}", file=sys.stderr)
        return 1
    except (ParseError, StructureError, CapacityError, ValueError, OSError) as exc:
        print(f"eppa: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if saved is None:
            os.environ.pop("EPPA_MATERIALIZE_LIMIT", None)
        else:
            os.environ["EPPA_MATERIALIZE_LIMIT"] = saved
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
