"""Command-line interface: ``specgraph {analyze,construct,census,verify,convert}``.

Exit codes: 0 success, 1 a verified claim failed, 2 bad input or usage,
3 an internal cross-check failed (numerical and exact results disagree).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Iterable, Sequence, TextIO

from . import census as census_mod
from .classify import (
    ClassificationError, VerificationError, check_equitable, check_srg, check_strong,
    check_strongly_biregular, classify_disconnected,
)
from .claims import CLAIMS, random_graph_corpus, run_claim
from .graph import (
    ConstructionError, FamilySpec, Graph, Graph6Error, build_family, complement,
    connected_components, delete_vertex, encode_graph6, parse_graph6, read_graph6_lines,
    rook_column, rook_row, seidel_switch, valency_partition,
)
from .spectral import (
    TOLERANCE_ENV, SpectralMismatchError, Tolerances, default_tolerances, eigendecompose,
    refined_spectrum,
)

EXIT_OK, EXIT_CLAIM_FAILED, EXIT_INPUT, EXIT_CROSSCHECK = 0, 1, 2, 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# formats
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """``n N`` header (optional) followed by one ``u v`` pair per line; ``#`` comments."""
    n, edges = None, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2 and n is None and not edges:
                n = int(parts[1])
                continue
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"edge list line {lineno}: expected 'u v', got {raw!r}") from None
        edges.append((u, v))
    if n is None:
        if not edges:
            raise InputError("empty edge list")
        n = max(max(e) for e in edges) + 1
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    return "\n".join([f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


def parse_json_adjacency(text: str) -> Graph:
    try:
        data = json.loads(text)
        return Graph(data["adjacency"])
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad json adjacency: {exc}") from None


def format_json_adjacency(g: Graph) -> str:
    return json.dumps({"n": g.n, "adjacency": g.adjacency.astype(int).tolist()}) + "\n"


def read_graphs(text: str, fmt: str) -> list[Graph]:
    if fmt == "g6":
        graphs = []
        for lineno, word in read_graph6_lines(text.splitlines()):
            try:
                graphs.append(parse_graph6(word))
            except Graph6Error as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        if not graphs:
            raise InputError("no graph in input")
        return graphs
    if fmt == "el":
        return [parse_edge_list(text)]
    if fmt == "json":
        return [parse_json_adjacency(text)]
    raise InputError(f"unknown input format {fmt!r}")


def _input_text(args) -> str:
    if getattr(args, "graph", None) is not None:
        return args.graph
    if args.input and args.input != "-":
        try:
            with open(args.input, encoding="ascii") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(str(exc)) from None
    return sys.stdin.read()


# ---------------------------------------------------------------------------
# human-readable numbers
# ---------------------------------------------------------------------------


def _squarefree(limit: int) -> list[int]:
    return [r for r in range(2, limit + 1) if all(r % (q * q) for q in range(2, int(r ** 0.5) + 1))]


_SQUAREFREE = _squarefree(200)


def algebraic_form(x: float, tol: float = 1e-9) -> str:
    """Render x as an integer, p+q*sqrt(r) or (p+q*sqrt(r))/2 when it matches."""
    if abs(x - round(x)) <= tol:
        return str(int(round(x)))
    for den in (1, 2):
        for r in _SQUAREFREE:
            root = math.sqrt(r)
            for q in range(1, 11):
                for sign in (1, -1):
                    p = den * x - sign * q * root
                    if abs(p - round(p)) <= tol * den:
                        p = int(round(p))
                        qs = "" if q == 1 else str(q)
                        op = "+" if sign > 0 else "-"
                        body = f"{p}{op}{qs}sqrt({r})" if p else f"{'-' if sign < 0 else ''}{qs}sqrt({r})"
                        return body if den == 1 else f"({body})/2"
    return f"{x:.10g}"


def _fmt_groups(groups: Iterable[tuple[float, int]]) -> str:
    return ", ".join(f"[{algebraic_form(v)}]^{m}" for v, m in groups)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def analysis_record(g: Graph) -> dict:
    """Schema-stable analysis of one graph."""
    if g.n < 1:
        raise InputError("analysis needs at least one vertex")
    report = eigendecompose(g)
    rs = refined_spectrum(g, report=report)
    vp = valency_partition(g)
    quotient = check_equitable(g, vp.classes)
    connected = len(connected_components(g)) == 1
    srg = check_srg(g) if g.n >= 2 else None
    strong = check_strong(g) if g.n >= 2 else None
    sbr = check_strongly_biregular(g) if connected else None
    family = None
    if not connected and rs.index == (2, 2):
        family = classify_disconnected(g).to_dict()
        family["certificate"] = {
            k: ([list(c) for c in v] if k == "components" else v)
            for k, v in family["certificate"].items()
        }
    return {
        "graph6": encode_graph6(g),
        "n": g.n,
        "edges": g.num_edges,
        "connected": connected,
        "spectrum": report.to_dict(),
        "refined": rs.to_dict(),
        "valency_partition": {
            "valencies": list(vp.valencies),
            "sizes": list(vp.sizes),
        },
        "classification": {
            "srg": list(srg.as_tuple()) if srg else None,
            "strong": strong.to_dict() if strong else None,
            "strongly_biregular": sbr,
            "equitable": quotient.equitable,
            "quotient": quotient.to_list(),
            "family": family,
        },
        "characterization": characterize(g, rs.index, connected, srg),
    }


def characterize(g: Graph, index, connected: bool, srg) -> str | None:
    if not connected:
        return None
    comps = connected_components(complement(g))
    if g.n == 1:
        return "K_1"
    if g.num_edges == g.n * (g.n - 1) // 2:
        return f"complete graph K_{g.n}"
    if len(comps) == 2 and g.num_edges == len(comps[0]) * len(comps[1]):
        a, b = sorted(len(c) for c in comps)
        kind = "regular" if a == b else "nonregular"
        return f"{kind} complete bipartite K_{{{a},{b}}}"
    if srg is not None:
        return "strongly regular ({},{},{},{})".format(*srg.as_tuple())
    return None


def render_analysis(rec: dict) -> str:
    ref = rec["refined"]
    cls = rec["classification"]
    lines = [
        f"graph6:            {rec['graph6']}",
        f"order, size:       n={rec['n']} e={rec['edges']}  ({'connected' if rec['connected'] else 'disconnected'})",
        "spectrum:          " + _fmt_groups((grp["value"], grp["mult"]) for grp in rec["spectrum"]["groups"]),
        "refined spectrum:  ({},{}; {}; {})".format(
            ref["index"][0], ref["index"][1],
            ", ".join(algebraic_form(m) for m in ref["mains"]),
            _fmt_groups((p["value"], p["pmult"]) for p in ref["plains"]),
        ),
        f"main-plain index:  ({ref['index'][0]},{ref['index'][1]})",
        "valency partition: " + ", ".join(
            f"{k}^{c}" for k, c in zip(rec["valency_partition"]["valencies"], rec["valency_partition"]["sizes"])
        ),
        f"equitable:         {'yes' if cls['equitable'] else 'no'}  quotient={cls['quotient']}",
        "SRG:               " + ("({},{},{},{})".format(*cls["srg"]) if cls["srg"] else "no"),
        "strong:            " + (cls["strong"]["verdict"] if cls["strong"] else "n/a"),
    ]
    if cls["strongly_biregular"] is not None:
        lines.append(f"strongly biregular: {'yes' if cls['strongly_biregular'] else 'no'}")
    if cls["family"]:
        lines.append(f"disconnected family: {cls['family']['tag']}")
    if rec["characterization"]:
        lines.append(f"characterization:  {rec['characterization']}")
    return "\n".join(lines)


def cmd_analyze(args, out: TextIO) -> int:
    graphs = read_graphs(_input_text(args), args.format)
    for g in graphs:
        rec = analysis_record(g)
        if args.json:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        else:
            out.write(render_analysis(rec) + "\n")
            if len(graphs) > 1:
                out.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

FAMILY_ALIASES = {
    "cliques": "cliques-union",
    "multipartite": "complete-multipartite",
    "cone": "cone-over",
    "multicone": "multicone-over",
    "union": "disjoint-union",
}


def resolve_operand(token: str) -> Graph:
    """A named graph (``petersen``, ``rook:6``, ``cliques:3,3,2`` ...) or a graph6 word."""
    name, _, arg = token.partition(":")
    tag = FAMILY_ALIASES.get(name, name)
    if tag == "petersen" and not arg:
        return build_family(FamilySpec("petersen"))
    if arg and tag in ("cliques-union", "complete-multipartite", "cycle", "path", "star",
                       "rook", "triangular", "complete", "empty"):
        try:
            params = tuple(int(x) for x in arg.split(","))
        except ValueError:
            raise InputError(f"bad parameters in {token!r}") from None
        return build_family(FamilySpec(tag, params))
    try:
        return parse_graph6(token)
    except Graph6Error as exc:
        raise InputError(f"operand {token!r} is neither a known name nor graph6: {exc}") from None


def cmd_construct(args, out: TextIO) -> int:
    family = args.family
    params = args.params
    if family == "srg-delete":
        if len(params) != 1:
            raise InputError("srg-delete takes one SRG operand (name or graph6)")
        base = resolve_operand(params[0])
        if check_srg(base) is None:
            raise InputError(f"{params[0]} is not strongly regular")
        g = delete_vertex(base, args.delete_vertex if args.delete_vertex is not None else 0)
        out.write(encode_graph6(g) + "\n")
        return EXIT_OK
    tag = FAMILY_ALIASES.get(family, family)
    operands = tuple(resolve_operand(tok) for tok in args.operand or ())
    try:
        ints = tuple(int(p) for p in params)
    except ValueError:
        raise InputError(f"family parameters must be integers: {params}") from None
    g = build_family(FamilySpec(tag, ints, operands))
    if args.switch_row is not None or args.switch_column is not None:
        if tag != "rook":
            raise InputError("--switch-row/--switch-column apply to the rook family")
        m = ints[0]
        cells = rook_row(m, args.switch_row) if args.switch_row is not None else rook_column(m, args.switch_column)
        g = seidel_switch(g, cells)
    if args.switch:
        g = seidel_switch(g, [int(v) for v in args.switch.split(",") if v])
    if args.delete_vertex is not None:
        g = delete_vertex(g, args.delete_vertex)
    if args.complement:
        g = complement(g)
    out.write(encode_graph6(g) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


def _stream(args) -> Iterable[str]:
    if args.max_n is not None:
        return census_mod.exhaustive_graph6(args.max_n, min_n=args.min_n)
    if args.input and args.input != "-":
        try:
            return open(args.input, encoding="ascii", errors="replace")
        except OSError as exc:
            raise InputError(str(exc)) from None
    return sys.stdin


def cmd_census(args, out: TextIO) -> int:
    stream = _stream(args)
    summary = census_mod.CensusSummary()
    if args.conjecture is not None:
        report = census_mod.conjecture_report(stream, args.conjecture, jobs=args.jobs)
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    filt = census_mod.FilterSpec(
        connected=args.connected, r=args.r, s=args.s, t=args.t, t_min=args.t_min,
        strong=args.strong, d=args.d,
    )
    records = census_mod.run_census(stream, filt, jobs=args.jobs, summary=summary)
    if args.pairs:
        pairs = census_mod.find_refined_cospectral_pairs(list(records))
        payload = {
            "pairs": len(pairs),
            "non_cospectral_complements": sum(not p.complements_cospectral for p in pairs),
            "items": [p.to_dict() for p in pairs],
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        census_mod.write_records(records, out, args.format)
    text = json.dumps(summary.to_dict(), indent=2) + "\n"
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args, out: TextIO) -> int:
    if args.claim == "list":
        for cid, c in CLAIMS.items():
            out.write(f"{cid:20s} {'exhaustive' if c.exhaustive else 'example   '}  {c.statement}\n")
        return EXIT_OK
    if args.claim not in CLAIMS:
        raise InputError(f"unknown claim {args.claim!r}; try 'verify list'")
    claim = CLAIMS[args.claim]
    words: Iterable[str] = ()
    if claim.exhaustive:
        if args.random:
            words = random_graph_corpus(args.random, args.max_n or 40, args.seed)
        elif args.input:
            words = [w for _, w in read_graph6_lines(_stream(args))]
        else:
            words = census_mod.exhaustive_graph6(args.max_n or 7, min_n=args.min_n)
    result = run_claim(args.claim, words)
    out.write(json.dumps(result.to_dict(), indent=2, default=str) + "\n")
    return EXIT_OK if result.passed else EXIT_CLAIM_FAILED


# ---------------------------------------------------------------------------
# convert
# ---------------------------------------------------------------------------


def cmd_convert(args, out: TextIO) -> int:
    for g in read_graphs(_input_text(args), args.format):
        if args.to == "graph6":
            out.write(encode_graph6(g) + "\n")
        elif args.to == "edge-list":
            out.write(format_edge_list(g))
        else:
            out.write(format_json_adjacency(g))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_tolerances(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-group", type=float, help="relative eigenvalue grouping tolerance")
    p.add_argument("--tol-main", type=float, help="j-projection threshold for main eigenvalues")


def _add_input(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("graph", nargs="?", help="graph6 word (default: read --input or stdin)")
    p.add_argument("--input", help="input file ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specgraph", description="Main and plain eigenvalues of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="refined spectrum and structural verdicts")
    _add_input(p)
    p.add_argument("--format", choices=("g6", "el", "json"), default="g6", help="input format")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    _add_tolerances(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build a graph family and print its graph6 word")
    p.add_argument("family", help="cliques, multipartite, cycle, path, star, rook, triangular, "
                                  "complete, empty, petersen, cone, multicone, join, union, srg-delete")
    p.add_argument("params", nargs="*", help="integer parameters (or an SRG operand for srg-delete)")
    p.add_argument("--operand", action="append", help="operand graph: name like rook:6 or a graph6 word")
    p.add_argument("--switch-row", type=int, help="Seidel switch a rook graph on row I")
    p.add_argument("--switch-column", type=int, help="Seidel switch a rook graph on column J")
    p.add_argument("--switch", help="Seidel switch on a comma-separated vertex set")
    p.add_argument("--delete-vertex", type=int, help="delete vertex V after construction")
    p.add_argument("--complement", action="store_true", help="output the complement")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("census", help="filter a graph6 stream by refined-spectrum predicates")
    _add_input(p, positional=False)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl", help="record format")
    conn = p.add_mutually_exclusive_group()
    conn.add_argument("--connected", dest="connected", action="store_true", default=None)
    conn.add_argument("--disconnected", dest="connected", action="store_false")
    p.add_argument("--r", type=int, help="number of main eigenvalues")
    p.add_argument("--s", type=int, help="number of plain eigenvalues")
    p.add_argument("--t", type=int, help="exact number of valencies")
    p.add_argument("--t-min", type=int, help="minimum number of valencies")
    p.add_argument("--d", type=int, help="number of distinct eigenvalues")
    strong = p.add_mutually_exclusive_group()
    strong.add_argument("--strong", dest="strong", action="store_true", default=None)
    strong.add_argument("--not-strong", dest="strong", action="store_false")
    p.add_argument("--max-n", type=int, help="use all graphs up to this order instead of --input")
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", help="write the summary block here instead of stderr")
    p.add_argument("--conjecture", type=int, metavar="C",
                   help="report connected index-(2,2) non-strong graphs with >= C valencies")
    p.add_argument("--pairs", action="store_true",
                   help="report graph pairs with equal refined spectra and their complements")
    _add_tolerances(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="check a registered claim ('verify list' to enumerate)")
    p.add_argument("claim")
    _add_input(p, positional=False)
    p.add_argument("--max-n", type=int)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--random", type=int, metavar="COUNT", help="use a seeded random corpus")
    p.add_argument("--seed", type=int, default=0)
    _add_tolerances(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", help="convert between graph6, edge lists and JSON adjacency")
    _add_input(p)
    p.add_argument("--format", choices=("g6", "el", "json"), default="g6", help="input format")
    p.add_argument("--to", choices=("graph6", "edge-list", "json-adjacency"), required=True)
    p.set_defaults(func=cmd_convert)
    return parser


def _apply_tolerances(args) -> None:
    group = getattr(args, "tol_group", None)
    main = getattr(args, "tol_main", None)
    if group is None and main is None:
        return
    base = default_tolerances()
    tol = Tolerances(group if group is not None else base.group, main if main is not None else base.main)
    os.environ[TOLERANCE_ENV] = f"group={tol.group!r},main={tol.main!r}"


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _apply_tolerances(args)
        return args.func(args, out)
    except (InputError, Graph6Error, ConstructionError, ClassificationError, IndexError) as exc:
        sys.stderr.write(f"specgraph: {exc}\n")
        return EXIT_INPUT
    except (SpectralMismatchError, VerificationError) as exc:
        sys.stderr.write(f"specgraph: cross-check failed: {exc}\n")
        return EXIT_CROSSCHECK
    except ValueError as exc:
        sys.stderr.write(f"specgraph: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
