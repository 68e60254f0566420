"""
Command-line front door.

    rem match    --egraph FILE --pattern SEXPR [--engine gj|em|naive] [--ordering v1,v2,...]
    rem bench    --egraph FILE --patterns FILE [--engines gj,em] [--repeat 10] [--csv OUT]
    rem gen-fgn  N --out FILE
    rem saturate --terms FILE --rules FILE [--max-nodes K] [--max-iterations I] --out FILE
    rem compile  --pattern SEXPR [--egraph FILE]
    rem serve    [--host H] [--port P]

Exit codes: 0 success, 1 usage, 2 parse error, 3 engine disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from egraph.core.errors import ArityError, AssignmentSpaceError, EngineDisagreement, SexprError
from infra.logger import configure_logging, get_logger
from infra.settings import Settings, get_settings

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DISAGREEMENT = 0, 1, 2, 3

log = get_logger("rem")


class UsageError(Exception):
    """Bad command-line input; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = _Parser(prog="rem", description="Relational e-matching over e-graphs.")
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level (default: %(default)s)")
    parser.add_argument("--json-logs", action="store_true", default=settings.log_json, help="Emit JSON log lines")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    match = commands.add_parser("match", help="Match one (multi-)pattern against an e-graph")
    match.add_argument("--egraph", required=True, help="E-graph JSON file")
    match.add_argument("--pattern", required=True, help="Pattern s-expression, e.g. '(f ?a (g ?a))'")
    match.add_argument("--engine", default=settings.default_engine, help="gj, em or naive (default: %(default)s)")
    match.add_argument("--ordering", default=None, help="Variable ordering for gj, e.g. '?a,$1,root'")
    match.add_argument("--no-fast-path", action="store_true", help="Send degenerate patterns through generic join")
    match.add_argument("--json", action="store_true", help="Print the result as JSON")

    bench = commands.add_parser("bench", help="Time engines on a pattern file")
    bench.add_argument("--egraph", required=True, help="E-graph JSON file")
    bench.add_argument("--patterns", required=True, help="Pattern file, one s-expression per line")
    bench.add_argument("--engines", default="gj,em", help="Comma-separated engines (default: %(default)s)")
    bench.add_argument("--repeat", type=int, default=settings.bench_repeat, help="Runs per engine (default: %(default)s)")
    bench.add_argument("--csv", default=None, help="Write records to this CSV file")

    gen = commands.add_parser("gen-fgn", help="Write the f/g/N synthetic e-graph")
    gen.add_argument("n", type=int, help="Number of constants (N >= 1)")
    gen.add_argument("--out", required=True, help="Output JSON file")

    sat = commands.add_parser("saturate", help="Grow an e-graph from terms and rewrite rules")
    sat.add_argument("--terms", required=True, help="Ground term file")
    sat.add_argument("--rules", required=True, help="Rule file ('name: lhs => rhs' per line)")
    sat.add_argument("--max-nodes", type=int, default=None, help="Stop before exceeding this many e-nodes (this and/or --max-iterations is required)")
    sat.add_argument("--max-iterations", type=int, default=None, help="Stop after this many iterations")
    sat.add_argument("--engine", default=settings.default_engine, help="Engine for the match phase")
    sat.add_argument("--out", required=True, help="Output JSON file")

    comp = commands.add_parser("compile", help="Show the conjunctive query and plan for a pattern")
    comp.add_argument("--pattern", required=True, help="Pattern or multi-pattern s-expression")
    comp.add_argument("--egraph", default=None, help="E-graph JSON file to plan against")

    serve = commands.add_parser("serve", help="Serve the HTTP API")
    serve.add_argument("--host", default="127.0.0.1", help="Host to bind (default: 127.0.0.1)")
    serve.add_argument("--port", type=int, default=8000, help="Port (default: 8000)")
    serve.add_argument("--reload", action="store_true", help="Enable auto-reload for development")
    return parser


def _cmd_match(args: argparse.Namespace, settings: Settings) -> int:
    from egraph.egraph import EGraph
    from engine.matcher import ematch
    from engine.options import EngineOptions
    from runtime.sexpr import parse_multi

    egraph = EGraph.load_json(args.egraph)
    patterns = parse_multi(args.pattern, egraph.symbols.copy())
    options = EngineOptions(
        engine=args.engine,
        ordering=args.ordering,
        use_fast_path=not args.no_fast_path,
        naive_cap=settings.naive_cap,
    )
    result = ematch(patterns, egraph, options)
    rows = result.sorted_rows()
    if args.json:
        print(json.dumps({"head": list(result.head), "rows": [list(r) for r in rows], "stats": result.stats.to_dict()}))
    else:
        print("\t".join(result.head))
        for row in rows:
            print("\t".join(str(v) for v in row))
    log.info("%d match(es) for %s with %s", len(result), args.pattern, args.engine)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace, settings: Settings) -> int:
    from egraph.egraph import EGraph
    from runtime.bench import bench, summarize, write_csv
    from runtime.logfire_config import configure_logfire
    from runtime.rules import load_patterns

    configure_logfire(settings.service_name)
    engines = [name.strip() for name in args.engines.split(",") if name.strip()]
    if args.repeat < 1:
        raise UsageError("--repeat must be >= 1")
    egraph = EGraph.load_json(args.egraph)
    patterns = load_patterns(args.patterns, egraph.symbols.copy())
    records = bench(egraph, patterns, engines, args.repeat)

    if args.csv:
        write_csv(records, args.csv)
        log.info("wrote %d record(s) to %s", len(records), args.csv)
    for record in records:
        print(f"{record.engine:>10}  {record.time_ns / 1e6:12.3f} ms  {record.result_count:>10}  {record.pattern}")
    for summary in summarize(records):
        print(
            f"[{summary.mode}] gj wins {summary.gj_wins}, em wins {summary.em_wins}, "
            f"total {summary.total:.2f}x, hmean {summary.hmean:.2f}x, gmean {summary.gmean:.2f}x, "
            f"best {summary.best:.2f}x, median {summary.median:.2f}x, worst {summary.worst:.2f}x"
        )
    return EXIT_OK


def _cmd_gen_fgn(args: argparse.Namespace, settings: Settings) -> int:
    from runtime.generators import gen_fgn

    if args.n < 1:
        raise UsageError("N must be >= 1")
    egraph = gen_fgn(args.n)
    egraph.save_json(args.out)
    log.info("wrote gen-fgn(%d) with %d e-node(s) to %s", args.n, egraph.num_nodes, args.out)
    return EXIT_OK


def _cmd_saturate(args: argparse.Namespace, settings: Settings) -> int:
    from egraph.core.types import SymbolTable
    from runtime.logfire_config import configure_logfire
    from runtime.rules import load_rules, load_terms
    from runtime.saturate import SaturationLimits, saturate

    if args.max_nodes is None and args.max_iterations is None:
        raise UsageError("saturate needs --max-nodes and/or --max-iterations")
    configure_logfire(settings.service_name)
    symbols = SymbolTable()
    terms = load_terms(args.terms, symbols)
    rules = load_rules(args.rules, symbols)
    limits = SaturationLimits(max_nodes=args.max_nodes, max_iterations=args.max_iterations)
    egraph = saturate(terms, rules, limits, engine=args.engine)
    egraph.save_json(args.out)
    print(f"{egraph.num_nodes} e-nodes, {egraph.num_classes} classes -> {args.out}")
    return EXIT_OK


def _cmd_compile(args: argparse.Namespace, settings: Settings) -> int:
    from egraph.egraph import EGraph
    from query.compiler import compile_multi
    from query.planner import agm_bound, plan
    from relational.database import egraph_to_database
    from runtime.sexpr import parse_multi

    egraph = EGraph.load_json(args.egraph) if args.egraph else None
    symbols = egraph.symbols.copy() if egraph is not None else None
    q = compile_multi(parse_multi(args.pattern, symbols), symbols)
    print(q)
    if egraph is not None:
        db = egraph_to_database(egraph)
        missing = [s for s in q.symbols() if s not in db]
        if missing:
            print(f"no relation for {', '.join(missing)}: the pattern cannot match")
        else:
            print(f"ordering: {plan(q, db)}")
            print(f"agm bound: {agm_bound(q, db):.1f}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace, settings: Settings) -> int:
    import uvicorn

    log.info("Serving rem API at http://%s:%d", args.host, args.port)
    uvicorn.run("api.app:app", host=args.host, port=args.port, reload=args.reload, log_level="info")
    return EXIT_OK


_COMMANDS = {
    "match": _cmd_match,
    "bench": _cmd_bench,
    "gen-fgn": _cmd_gen_fgn,
    "saturate": _cmd_saturate,
    "compile": _cmd_compile,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    args = _build_parser(settings).parse_args(argv)

    # Logs go to stderr so match output on stdout stays machine-readable.
    configure_logging(
        level=args.log_level.upper(),
        json=args.json_logs,
        logfile=settings.log_file or None,
        stream=sys.stderr,
    )

    try:
        return _COMMANDS[args.command](args, settings)
    except (SexprError, ArityError) as exc:
        log.error("parse error: %s", exc)
        return EXIT_PARSE
    except EngineDisagreement as exc:
        for line in exc.diff_lines():
            print(line, file=sys.stderr)
        return EXIT_DISAGREEMENT
    except (UsageError, AssignmentSpaceError, FileNotFoundError, ValueError, KeyError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
