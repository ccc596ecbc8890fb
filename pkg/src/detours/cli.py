"""Command-line interface.

Exit status: 0 on success, 1 on bad input or usage, 2 when ``verify`` finds a
counterexample.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from itertools import chain
from typing import Iterable, Iterator, TextIO

from . import families as fam
from .engine import (
    EMISSION_LIMIT,
    count_detours,
    detour_edge_counts,
    enumerate_detours,
)
from .errors import DetourError
from .graph import Graph, is_connected, min_degree
from .graph6 import g6_decode, g6_encode, iter_graph6_lines
from .search import (
    AUDIT_FRACTION,
    CSV_HEADER,
    RESUME_LOG_ENV,
    WITNESS_CAP,
    FilterSpec,
    ScanRecord,
    basic_fact_violations,
    claim1_violations,
    connectivity_of,
    h10_candidates,
    labeled_generator,
    scan,
    tabulate,
    verify_theorem_1,
    verify_theorem_2,
    witness_search,
)

log = logging.getLogger("detours")

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1 so that 2 only ever means "counterexample found"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parse_filter(text: str | None, mode: str) -> FilterSpec:
    """``k=INT,n=INT,kappa=INT,kappa_min=INT,parity=odd|even,f=INT,connected=0|1,traceable=0|1``.

    Connected graphs only unless ``connected=0`` is given.
    """
    fields: dict = {"min_degree_mode": mode, "connected": True}
    names = {
        "k": "k", "n": "order", "kappa": "kappa", "kappa_min": "kappa_min",
        "f": "f_target", "parity": "f_parity", "connected": "connected", "traceable": "require_traceable",
    }
    for part in filter(None, (text or "").split(",")):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise argparse.ArgumentTypeError(f"bad filter term {part!r}; keys are {', '.join(names)}")
        if key == "parity":
            if value not in ("odd", "even"):
                raise argparse.ArgumentTypeError("parity must be odd or even")
            fields["f_parity"] = value
        elif key in ("connected", "traceable"):
            if value not in ("0", "1"):
                raise argparse.ArgumentTypeError(f"{key} must be 0 or 1")
            fields[names[key]] = value == "1"
        else:
            try:
                fields[names[key]] = int(value)
            except ValueError:
                raise argparse.ArgumentTypeError(f"{key} needs an integer, got {value!r}") from None
    return FilterSpec(**fields)


def _open_input(path: str | None) -> TextIO:
    if path in (None, "-"):
        return sys.stdin
    return open(path)


def _graphs(args) -> Iterator[tuple[str, Graph]]:
    if args.graph6:
        lines: Iterable[str] = args.graph6
    else:
        lines = _open_input(args.input)
    for number, text in iter_graph6_lines(lines):
        try:
            yield text, g6_decode(text)
        except DetourError as exc:
            raise DetourError(f"input line {number}: {exc}") from None


def _source_lines(args) -> Iterator[str]:
    if getattr(args, "labeled", None):
        return chain.from_iterable(labeled_generator(n) for n in args.labeled)
    return iter(_open_input(args.input))


def _records(args, spec: FilterSpec) -> Iterator[ScanRecord]:
    """Records from precomputed JSON lines, or computed by scanning graph6 lines."""
    lines = _source_lines(args)
    first = None
    for first in lines:
        if first.strip():
            break
    if first is None:
        return iter(())
    lines = chain([first], lines)
    if first.lstrip().startswith('{"'):
        return (r for r in (ScanRecord.from_json(x) for x in lines if x.strip()) if spec.record_ok(r))
    return scan(
        lines,
        spec,
        engine=args.engine,
        jobs=args.jobs,
        on_error=args.on_error,
        resume_log=args.resume_log,
        audit_fraction=args.audit,
    )


def _emit_records(records: Iterable[ScanRecord], fmt: str, out: TextIO) -> None:
    if fmt == "csv":
        out.write(CSV_HEADER + "\n")
    for rec in records:
        if fmt == "csv":
            out.write(rec.csv_row() + "\n")
        elif fmt == "jsonl":
            out.write(rec.to_json() + "\n")
        else:
            out.write(_human(rec) + "\n")


def _human(rec: ScanRecord) -> str:
    bound = min(2 * rec.delta + 1, rec.n)
    status = "ok" if rec.L >= bound or not rec.connected else "VIOLATED"
    return (
        f"n={rec.n} delta={rec.delta} kappa={rec.kappa} L={rec.L} f={rec.f}"
        f"  [L >= min(2*delta+1, n) = {bound}: {status}]"
    )


def _record_of(text: str, g: Graph, engine: str) -> ScanRecord:
    rep = count_detours(g, engine)
    return ScanRecord(text, g.n, min_degree(g), connectivity_of(g), rep.order, rep.count)


def cmd_count(args, out: TextIO) -> int:
    _emit_records((_record_of(t, g, args.engine) for t, g in _graphs(args)), args.format, out)
    return EXIT_OK


def cmd_enumerate(args, out: TextIO) -> int:
    if args.format == "csv":
        out.write("graph6,detour\n")
    for text, g in _graphs(args):
        rep = enumerate_detours(g, limit=args.limit or EMISSION_LIMIT)
        if args.format == "jsonl":
            out.write(json.dumps(rep.to_record(g), separators=(",", ":")) + "\n")
        elif args.format == "csv":
            for p in rep.detours:
                out.write(f"{text},{' '.join(map(str, p))}\n")
        else:
            out.write(f"# {text}: L={rep.order} f={rep.count}\n")
            for p in rep.detours:
                out.write("(" + ",".join(map(str, p)) + ")\n")
    return EXIT_OK


def cmd_edge_stats(args, out: TextIO) -> int:
    if args.format == "csv":
        out.write("graph6,u,v,detours\n")
    for text, g in _graphs(args):
        counts = detour_edge_counts(g, args.engine)
        if args.format == "jsonl":
            rows = [[e.u, e.v, c] for e, c in sorted(counts.items())]
            out.write(json.dumps({"graph6": text, "edge_counts": rows}, separators=(",", ":")) + "\n")
        elif args.format == "csv":
            for e, c in sorted(counts.items()):
                out.write(f"{text},{e.u},{e.v},{c}\n")
        else:
            out.write(f"# {text}\n")
            for e, c in sorted(counts.items()):
                note = "  <- on exactly one detour" if c == 1 else ""
                out.write(f"({e.u},{e.v}): {c}{note}\n")
    return EXIT_OK


def _dot(g: Graph) -> str:
    body = "".join(f"  {e.u} -- {e.v};\n" for e in g.edges())
    return "graph G {\n" + "".join(f"  {v};\n" for v in g if not g.adj[v]) + body + "}\n"


def cmd_families(args, out: TextIO) -> int:
    base = None
    if args.name == "H_extended":
        if args.base:
            base = g6_decode(args.base)
        else:
            base = next(h10_candidates(limit=1))
            log.info("using search-recovered H_10 base %s", g6_encode(base))
    g = fam.build(args.name, args.order, base=base)
    text = g6_encode(g)
    if args.emit == "g6":
        out.write(text + "\n")
    elif args.emit == "dot":
        out.write(_dot(g))
    else:
        rec = _record_of(text, g, args.engine)
        if args.format == "jsonl":
            out.write(rec.to_json() + "\n")
        elif args.format == "csv":
            out.write(CSV_HEADER + "\n" + rec.csv_row() + "\n")
        else:
            out.write(f"{args.name}({g.n}) {text}\n{_human(rec)}\n")
    return EXIT_OK


def cmd_psi(args, out: TextIO) -> int:
    try:
        path = tuple(int(v) for v in args.path.split(","))
    except ValueError:
        raise DetourError(f"--path must be comma-separated integers, got {args.path!r}") from None
    paths = fam.psi_detours(path, args.i, args.j)
    host = g6_decode(args.graph) if args.graph else None
    if host is not None:
        from .engine import is_detour

        bad = [p for p in paths if not is_detour(host, p)]
        if bad:
            raise DetourError(f"not detours of the host graph: {bad}")
    for p in paths:
        out.write("(" + ",".join(map(str, p)) + ")\n")
    return EXIT_OK


def cmd_scan(args, out: TextIO) -> int:
    spec = parse_filter(args.filter, args.min_degree_mode)
    _emit_records(_records(args, spec), args.format, out)
    return EXIT_OK


def cmd_tabulate(args, out: TextIO) -> int:
    spec = parse_filter(args.filter, args.min_degree_mode)
    if spec.k is None or spec.order is None:
        raise DetourError("tabulate needs both k and n in --filter")
    complete = bool(args.labeled) or args.complete
    summary = tabulate(_records(args, spec), spec.k, spec.order, args.min_degree_mode, complete, args.limit or WITNESS_CAP)
    d = summary.as_dict()
    if args.format == "jsonl":
        out.write(json.dumps(d, separators=(",", ":")) + "\n")
    elif args.format == "csv":
        out.write("k,n,mode,bound,graphs,a,b,a_witnesses,b_witnesses,spectrum\n")
        spectrum = " ".join(f"{f}:{c}" for f, c in sorted(summary.spectrum.items()))
        out.write(
            f"{d['k']},{d['n']},{d['mode']},{d['bound']},{d['graphs']},"
            f"{'' if d['a_value'] is None else d['a_value']},{'' if d['b_value'] is None else d['b_value']},"
            f"{' '.join(d['a_witnesses'])},{' '.join(d['b_witnesses'])},{spectrum}\n"
        )
    else:
        if summary.empty:
            out.write(f"a({summary.k},{summary.n}): no graphs in the cell (mode {summary.mode})\n")
            return EXIT_OK
        rel = "=" if summary.exact else "<="
        out.write(f"mode={summary.mode} graphs={summary.graphs} bound={d['bound']}\n")
        out.write(f"a({summary.k},{summary.n}) {rel} {summary.a_value}  witnesses: {' '.join(summary.a_witnesses)}\n")
        if summary.b_value is None:
            out.write(f"b({summary.k},{summary.n}): no odd f observed\n")
        else:
            out.write(f"b({summary.k},{summary.n}) {rel} {summary.b_value}  witnesses: {' '.join(summary.b_witnesses)}\n")
        out.write("spectrum: " + " ".join(f"{f}:{c}" for f, c in sorted(summary.spectrum.items())) + "\n")
    return EXIT_OK


def cmd_witness_search(args, out: TextIO) -> int:
    spec = parse_filter(args.filter, args.min_degree_mode)
    found = witness_search(
        _source_lines(args),
        spec,
        limit=args.limit or WITNESS_CAP,
        engine=args.engine,
        jobs=args.jobs,
        on_error=args.on_error,
        resume_log=args.resume_log,
        audit_fraction=args.audit,
    )
    _emit_records(found, args.format, out)
    if args.format == "human":
        out.write(f"{len(found)} witness(es)\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    if args.claim == "claim1":
        bad = 0
        checked = 0
        for _, text in iter_graph6_lines(_source_lines(args)):
            g = g6_decode(text)
            if g.n < 4 or (args.order and g.n != args.order) or min_degree(g) < 2 or not is_connected(g):
                continue
            checked += 1
            edges = claim1_violations(g, args.engine)
            if edges:
                bad += 1
                out.write(f"counterexample {text}: edges on exactly one detour {[tuple(e) for e in edges]}\n")
        out.write(f"claim1: checked={checked} counterexamples={bad} -> {'PASS' if not bad else 'FAIL'}\n")
        return EXIT_COUNTEREXAMPLE if bad else EXIT_OK

    if args.claim == "basic-fact":
        spec = FilterSpec(order=args.order, connected=True)
    else:
        spec = FilterSpec(order=args.order, k=2, connected=True)
    records = _records(args, spec)
    if args.claim == "basic-fact":
        records = list(records)
        bad_recs = basic_fact_violations(records)
        for rec in bad_recs:
            out.write(f"counterexample {rec.graph6}: L={rec.L} < min(2*{rec.delta}+1, {rec.n})\n")
        out.write(f"basic-fact: checked={len(records)} counterexamples={len(bad_recs)} -> {'PASS' if not bad_recs else 'FAIL'}\n")
        return EXIT_COUNTEREXAMPLE if bad_recs else EXIT_OK
    if args.claim == "theorem1":
        res = verify_theorem_1(records, complete=bool(args.labeled) or args.complete)
    else:
        res = verify_theorem_2(records)
    for rec in res.counterexamples:
        out.write(f"counterexample {rec.graph6}: n={rec.n} delta={rec.delta} f={rec.f}\n")
    for note in res.notes:
        out.write(note + "\n")
    minima = " ".join(f"{n}:{v}" for n, v in sorted(res.minima.items()))
    label = "min f" if res.name == "theorem1" else "min odd f"
    out.write(
        f"{res.name}: checked={res.checked} skipped={res.skipped} {label} by order [{minima}] "
        f"-> {'PASS' if res.passed else 'FAIL'}\n"
    )
    if res.counterexamples:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK if res.passed else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="detours", description="Count and enumerate detours (longest paths) of graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--input", metavar="PATH|-", help="graph6 file (default: standard input)")
    common.add_argument("--format", choices=("human", "csv", "jsonl"), default="human")
    common.add_argument("--engine", choices=("dp", "dfs", "auto"), default="auto")
    common.add_argument("--limit", type=int, help="emission limit / witness cap")

    scanning = _Parser(add_help=False)
    scanning.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    scanning.add_argument("--resume-log", metavar="PATH", default=os.environ.get(RESUME_LOG_ENV),
                          help=f"append-only record log; default from ${RESUME_LOG_ENV}")
    scanning.add_argument("--min-degree-mode", choices=("exact", "atleast"), default="atleast")
    scanning.add_argument("--filter", help="k=INT,n=INT,kappa=INT,kappa_min=INT,parity=odd|even,f=INT,connected=0|1,traceable=0|1")
    scanning.add_argument("--labeled", type=int, nargs="+", metavar="N",
                          help="scan every labeled graph on N vertices (N <= 7) instead of --input")
    scanning.add_argument("--on-error", choices=("skip", "abort"), default="skip")
    scanning.add_argument("--audit", type=float, default=AUDIT_FRACTION,
                          help="fraction of graphs recomputed with the other engine")

    def add(name, helptext, parents=(common,)):
        return sub.add_parser(name, help=helptext, description=helptext, parents=list(parents))

    p = add("count", "detour order L and detour count f(G) of each input graph")
    p.add_argument("graph6", nargs="*")
    p.set_defaults(run=cmd_count)

    p = add("enumerate", "list every detour (longest path) of each input graph, one orientation each")
    p.add_argument("graph6", nargs="*")
    p.set_defaults(run=cmd_enumerate)

    p = add("edge-stats", "number of detours through each edge (every edge on a detour should be on two or more)")
    p.add_argument("graph6", nargs="*")
    p.set_defaults(run=cmd_edge_stats)

    p = add("families", "build an extremal graph: cycle, bowtie, triangle_cycle (f = 4), H9, M, H_extended (f = 9)")
    p.add_argument("name", choices=fam.FAMILY_NAMES)
    p.add_argument("order", type=int, nargs="?")
    p.add_argument("--emit", choices=("report", "g6", "dot"), default="report")
    p.add_argument("--base", metavar="G6", help="order-10 base graph for H_extended")
    p.set_defaults(run=cmd_families)

    p = add("psi", "the four or six detours built from a detour x_1..x_k and boundary chords x_1x_i, x_kx_j")
    p.add_argument("--path", required=True, help="comma-separated vertices x_1,...,x_k")
    p.add_argument("--i", type=int, required=True, help="1-based index of x_1's chord endpoint")
    p.add_argument("--j", type=int, required=True, help="1-based index of x_k's chord endpoint")
    p.add_argument("--graph", metavar="G6", help="check every result is a detour of this graph")
    p.set_defaults(run=cmd_psi)

    p = add("scan", "filter a graph6 stream and report n, delta, kappa, L, f per graph", (common, scanning))
    p.set_defaults(run=cmd_scan)

    p = add("tabulate", "a(k,n) = min f and b(k,n) = min odd f over connected graphs of order n, min degree k",
            (common, scanning))
    p.add_argument("--complete", action="store_true", help="input is a complete catalog (minima are exact)")
    p.set_defaults(run=cmd_tabulate)

    p = add("witness-search", "graphs meeting the filter with f equal to the f= target", (common, scanning))
    p.set_defaults(run=cmd_witness_search)

    p = add("verify", "check the detour theorems over a corpus: theorem1 (f >= 4), theorem2 (odd f >= 9), "
            "basic-fact (L >= min(2 delta + 1, n)), claim1 (edges on detours lie on >= 2)", (common, scanning))
    p.add_argument("claim", choices=("theorem1", "theorem2", "basic-fact", "claim1"))
    p.add_argument("--order", type=int, help="only graphs of this order")
    p.add_argument("--complete", action="store_true", help="input is a complete catalog")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    out = out or sys.stdout
    try:
        return args.run(args, out)
    except argparse.ArgumentTypeError as exc:
        print(f"detours: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (DetourError, OSError) as exc:
        print(f"detours: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
