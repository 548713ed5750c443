"""Batch command line: read a graph, map or tree file, print JSON, TSV or text.

Exit codes: 0 success, 1 input error, 2 failed ``--verify`` cross-check.
Files may be given as paths, ``-`` for stdin, or ``@name`` for a built-in
fixture (``@g0``, ``@k3``, ``@g1``, ``@m0``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import sympy

from . import combmap, graph
from .blossom import (flippable_edges, parse_word, statistics_ok, theta_close,
                      theta_open)
from .classical import (blossoming_internal_active, delta_ord, dfs_active, dfs_active_inversions,
                        embedding_activity, embedding_as_delta, mirror_max_activity,
                        ordering_activity)
from .combmap import CombMap, format_map, parse_map, underlying_graph
from .decision import parse_sexp, random_decision_tree
from .delta import (assign_types, internal_active_alg3, interval_contribution, interval_partition,
                    strongly_descriptive_search, tutte_via_delta)
from .graph import GraphError, Multigraph, bits, parse_graph
from .poly import BivariatePolynomial
from .series.core import SeriesError, coefficient_table, format_fraction
from .series.presets import get_preset
from .series.systems import check_routes, series_F, series_G, series_H
from .tutte import sandpile_recurrent_gf, tutte_del_contract, tutte_subgraph_sum

GRAPH_FIXTURES = {"g0": graph.g0, "k3": graph.k3, "g1": graph.g1}
MAP_FIXTURES = {"m0": combmap.m0}


class InputError(Exception):
    def __init__(self, message, code="input_error"):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", "io") from None


def load_graph(path: str) -> Multigraph:
    if path.startswith("@"):
        name = path[1:]
        if name in GRAPH_FIXTURES:
            return GRAPH_FIXTURES[name]()
        if name in MAP_FIXTURES:
            return underlying_graph(MAP_FIXTURES[name]())
        raise InputError(f"unknown fixture {path}", "unknown_fixture")
    return parse_graph(_read(path))


def load_map(path: str) -> CombMap:
    if path.startswith("@"):
        name = path[1:]
        if name not in MAP_FIXTURES:
            raise InputError(f"unknown map fixture {path}", "unknown_fixture")
        return MAP_FIXTURES[name]()
    return parse_map(_read(path))


def parse_edges(spec: str | None, g: Multigraph) -> int:
    """Comma separated edge ids or labels; empty string means no edge."""
    if spec is None:
        return 0
    out = 0
    for tok in filter(None, (x.strip() for x in spec.split(","))):
        if tok.isdigit() and int(tok) in g.edges:
            out |= 1 << int(tok)
        else:
            out |= 1 << g.edge_by_label(tok)
    return out


def edge_list(mask: int, g: Multigraph) -> list:
    return [{"id": e, "label": g.label(e)} for e in bits(mask)]


def delta_source(args, g: Multigraph):
    """The decision tree requested on the command line and its metadata."""
    if getattr(args, "delta", None):
        return parse_sexp(_read(args.delta), g), {"delta": args.delta}
    seed = args.delta_seed
    return random_decision_tree(g, seed), {"delta_seed": seed}


# ---------------------------------------------------------------------------
# commands; each returns (payload, verified) where verified is None when
# --verify was not requested


def cmd_tutte(args):
    g = load_graph(args.graph)
    meta = {"method": args.method}
    if args.method == "sum":
        p = tutte_subgraph_sum(g)
    elif args.method == "delcon":
        p = tutte_del_contract(g)
    else:
        delta, extra = delta_source(args, g)
        meta.update(extra)
        p = tutte_via_delta(g, delta)
    ok = None
    if args.verify:
        oracle = tutte_del_contract(g) if args.method == "sum" else tutte_subgraph_sum(g)
        ok = oracle == p
    payload = {"command": "tutte", **meta, "polynomial": json.loads(p.to_json()),
               "text": str(p)}
    return payload, ok


def cmd_activity(args):
    kind = args.kind
    meta = {"kind": kind}
    ok = None
    if kind in ("embedding", "blossoming"):
        m = load_map(args.input)
        g = underlying_graph(m)
    else:
        m = None
        g = load_graph(args.input)
    t = parse_edges(args.tree, g)
    if kind == "ordering":
        order = [e for e in _order(args.order, g)]
        active = ordering_activity(g, order, t)
        meta["ordering"] = order
        if args.verify:
            ok = assign_types(g, delta_ord(g, order), t).active == active
    elif kind == "embedding":
        active = embedding_activity(m, t)
        if args.verify:
            ok = (active == mirror_max_activity(m, t)
                  and active == assign_types(g, embedding_as_delta(m), t).active)
    elif kind == "dfs":
        active = dfs_active(g, t)
        if args.verify:
            ok = active == dfs_active_inversions(g, t)
    elif kind == "blossoming":
        active = blossoming_internal_active(m, t, "isthmus")
        if args.verify:
            ok = all(blossoming_internal_active(m, t, how) == active
                     for how in ("definition", "delta"))
    else:
        delta, extra = delta_source(args, g)
        meta.update(extra)
        active = assign_types(g, delta, t).active
        if args.verify:
            ok = internal_active_alg3(g, delta, t) == active & t
    payload = {"command": "activity", **meta, "tree": edge_list(t, g),
               "active": edge_list(active, g),
               "internal": edge_list(active & t, g), "external": edge_list(active & ~t, g)}
    return payload, ok


def _order(spec, g):
    if not spec:
        return sorted(g.edges)
    order = [next(iter(bits(parse_edges(tok, g)))) for tok in spec.split(",") if tok.strip()]
    if sorted(order) != sorted(g.edges):
        raise InputError("--order must list every edge exactly once", "bad_order")
    return order


def cmd_partition(args):
    g = load_graph(args.graph)
    delta, meta = delta_source(args, g)
    ok = None
    try:
        parts = interval_partition(g, delta, check=args.verify)
    except AssertionError:
        return {"command": "partition", **meta, "intervals": []}, False
    rows, total = [], BivariatePolynomial()
    for iv in parts:
        c = interval_contribution(g, iv)
        total = total + c
        rows.append({"tree": [e for e in bits(iv.tree)], "low": [e for e in bits(iv.low)],
                     "high": [e for e in bits(iv.high)], "size": iv.size, "contribution": str(c)})
    if args.verify:
        ok = total == tutte_subgraph_sum(g)
    return {"command": "partition", **meta, "intervals": rows, "sum": str(total)}, ok


def _u_value(text):
    if text in (None, "symbolic"):
        return None
    try:
        return Fraction(text)
    except ValueError:
        raise InputError(f"--u expects 'symbolic' or a rational, got {text!r}", "bad_u") from None


def cmd_series(args):
    preset = get_preset(args.preset)
    u = _u_value(args.u)
    fn = {"F": series_F, "G": series_G, "H": series_H}[args.what]
    s = fn(preset.name, args.order, u)
    basis = "mu" if args.basis == "mu" and u is None else "u"
    rows = coefficient_table(s, basis)
    ok = None
    if args.verify:
        ok = bool(check_routes(preset.name, args.order, u))
    payload = {"command": "series", "preset": preset.name, "what": args.what,
               "order": args.order, "main": s.main, "basis": basis,
               "u": "symbolic" if u is None else str(u),
               "rows": [[k, [format_fraction(c) for c in cs]] for k, cs in rows]}
    return payload, ok


def cmd_bijection(args):
    ok = None
    if args.direction == "close":
        tree = parse_word(_read(args.input).strip())
        closed = theta_close(tree)
        g = underlying_graph(closed.map)
        if args.verify:
            anchor = closed.marked_face[0] if closed.marked_face else None
            ok = anchor is None or theta_open(closed.map, closed.forest, anchor).to_word() == tree.to_word()
        payload = {"command": "bijection", "direction": "close", "map": format_map(closed.map),
                   "forest": [e for e in bits(closed.forest)],
                   "face": list(closed.marked_face)}
        return payload, ok
    m = load_map(args.input)
    g = underlying_graph(m)
    forest = parse_edges(args.forest, g)
    face = args.face if args.face is not None else m.faces()[0][0]
    if face not in m.sigma:
        raise InputError(f"--face {face} is not a half-edge", "bad_face")
    tree = theta_open(m, forest, face)
    payload = {"command": "bijection", "direction": args.direction, "word": tree.to_word(),
               "flippable": [e for e in bits(flippable_edges(tree))]}
    if args.direction == "roundtrip" or args.verify:
        closed = theta_close(tree)
        marked = next(f for f in m.faces() if face in f)
        same = (closed.map.sigma == m.sigma and closed.map.alpha == m.alpha
                and closed.map.root == m.root and closed.forest == forest
                and closed.face_key() == frozenset(marked))
        payload["roundtrip"] = same
        if args.verify:
            ok = same and statistics_ok(m, forest, tree)
    return payload, ok


def cmd_sandpile(args):
    g = load_graph(args.graph)
    gf = sandpile_recurrent_gf(g, args.sink)
    y = sympy.Symbol("y")
    coeffs = {int(k[0]): int(c) for k, c in gf.terms()} if not gf.is_zero else {}
    ok = None
    if args.verify:
        t = tutte_subgraph_sum(g)
        at_one = {}
        for (i, j), c in t.terms.items():
            at_one[j] = at_one.get(j, 0) + c
        ok = {k: v for k, v in at_one.items() if v} == coeffs
    payload = {"command": "sandpile", "sink": args.sink,
               "levels": [{"level": k, "count": coeffs[k]} for k in sorted(coeffs)],
               "text": str(gf.as_expr().subs({gf.gens[0]: y}))}
    return payload, ok


def cmd_conjecture(args):
    g = load_graph(args.graph)
    rep = strongly_descriptive_search(g)
    ok = None
    if args.verify:
        ok = rep["every_delta_activity_found"]
    payload = {"command": "conjecture", "edges": g.edge_count, "trees": len(rep["trees"]),
               "strongly_descriptive": rep["count"],
               "delta_activities": len(rep["delta_activities"]),
               "conjecture1_holds": rep["conjecture1"], "conjecture2_holds": rep["conjecture2"],
               "non_delta": [[list(bits(a)) for a in act] for act in rep["activities"]
                             if act not in set(rep["delta_activities"])]}
    return payload, ok


COMMANDS = {"tutte": cmd_tutte, "activity": cmd_activity, "partition": cmd_partition,
            "series": cmd_series, "bijection": cmd_bijection, "sandpile": cmd_sandpile,
            "conjecture": cmd_conjecture}


# ---------------------------------------------------------------------------
# output


def to_tsv(payload: dict) -> str:
    if payload.get("command") == "series":
        rows = payload["rows"]
        width = max(len(cs) for _, cs in rows)
        head = [payload["main"]] + [f"{payload['basis']}^{i}" for i in range(width)]
        lines = ["\t".join(head)]
        for k, cs in rows:
            lines.append("\t".join([str(k)] + cs + ["0"] * (width - len(cs))))
        return "\n".join(lines) + "\n"
    lines = []
    for key, value in payload.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}\t{value}")
    return "\n".join(lines) + "\n"


def to_text(payload: dict) -> str:
    if "text" in payload:
        return payload["text"] + "\n"
    if payload.get("command") == "series":
        return to_tsv(payload)
    if payload.get("command") == "bijection" and "map" in payload:
        return payload["map"]
    return to_tsv(payload)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True) + "\n"
    if fmt == "tsv":
        return to_tsv(payload)
    return to_text(payload)


def error_envelope(code: str, message: str) -> str:
    return json.dumps({"error": {"code": code, "message": message}}, sort_keys=True)


# ---------------------------------------------------------------------------
# argument parsing


def _common(p, delta=False):
    p.add_argument("--format", choices=("json", "tsv", "text"), default=None)
    p.add_argument("--verify", action="store_true", help="cross-check against an oracle")
    if delta:
        p.add_argument("--delta", help="decision tree s-expression file")
        p.add_argument("--delta-seed", type=int, default=0, help="seed of a random decision tree")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tuttedelta", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tutte", help="Tutte polynomial of a graph")
    p.add_argument("graph")
    p.add_argument("--method", choices=("sum", "delcon", "delta"), default="sum")
    _common(p, delta=True)

    p = sub.add_parser("activity", help="active edges of a spanning tree or forest")
    p.add_argument("input", help="graph file (ordering, dfs, delta) or map file")
    p.add_argument("--kind", choices=("ordering", "embedding", "dfs", "blossoming", "delta"),
                   default="delta")
    p.add_argument("--tree", required=True, help="comma separated edge ids or labels")
    p.add_argument("--order", help="edge order for --kind ordering (smallest first)")
    _common(p, delta=True)

    p = sub.add_parser("partition", help="interval partition of the subgraphs")
    p.add_argument("graph")
    _common(p, delta=True)

    p = sub.add_parser("series", help="forested map series coefficients")
    p.add_argument("--preset", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--u", default="symbolic", help="'symbolic' or a rational value")
    p.add_argument("--what", choices=("F", "G", "H"), default="F")
    p.add_argument("--basis", choices=("u", "mu"), default="u")
    _common(p)

    p = sub.add_parser("bijection", help="open a forested map or close a blossoming tree")
    p.add_argument("input", help="map file (open, roundtrip) or tree word file (close)")
    p.add_argument("--direction", choices=("open", "close", "roundtrip"), default="roundtrip")
    p.add_argument("--forest", default="", help="comma separated edge ids of the forest")
    p.add_argument("--face", type=int, help="a half-edge of the marked face")
    _common(p)

    p = sub.add_parser("sandpile", help="recurrent configurations by level")
    p.add_argument("graph")
    p.add_argument("--sink", type=int, default=0)
    _common(p)

    p = sub.add_parser("conjecture", help="search all strongly descriptive activities")
    p.add_argument("graph")
    _common(p)
    return ap


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    fmt = args.format or ("tsv" if args.command == "series" else "json")
    try:
        payload, ok = COMMANDS[args.command](args)
    except (InputError, GraphError, SeriesError) as exc:
        stdout.write(error_envelope(exc.code, str(exc)) + "\n")
        return 1
    if ok is not None:
        payload["verified"] = ok
    stdout.write(render(payload, fmt))
    if ok is False:
        stderr.write(f"{args.command}: verification failed\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
