"""Command-line interface.

Exit codes: 0 for success (and for an asymptotically-normal analysis
verdict), 2 for an inconclusive analysis verdict, 1 for usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath
from mpmath import workprec

from .asym import expand_asymptotics
from .bigfloat import to_mpf
from .errors import HolonormError
from .guess import GuessConfig, guess_recurrence
from .normality import (
    VERDICT_NORMAL,
    exact_moments,
    limit_stats,
    real_rooted_upto,
    stats_csv,
)
from .ore import Recurrence
from .pipeline import AnalysisConfig, analyze
from .seqdef import catalog_get, catalog_names, load_definition_file


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="holonorm", description=__doc__)
    sub = p.add_subparsers(dest="command", metavar="command")

    def add_source(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--catalog", help="built-in sequence name")
        g.add_argument("--def", dest="def_file",
                       help="path to a definition file")
        sp.add_argument("--experimental", action="store_true",
                        help="allow experimental catalog entries")

    a = sub.add_parser("analyze", help="run the full normality analysis")
    add_source(a)
    a.add_argument("--n-max-terms", type=int, default=200)
    a.add_argument("--max-order", type=int, default=4)
    a.add_argument("--max-degree", type=int, default=4)
    a.add_argument("--verify-count", type=int, default=12)
    a.add_argument("--series-order", type=int, default=6)
    a.add_argument("--precision", type=int, default=256,
                   help="working precision in bits")
    a.add_argument("--depth", type=int, default=6,
                   help="extrapolation depth for the ratio limits")
    a.add_argument("--sturm-bound", type=int, default=40)
    a.add_argument("--stats-n", default="25,50,100,200",
                   help="comma-separated row sizes for the statistics "
                        "table; empty disables the stage")
    a.add_argument("--format", choices=("json", "csv", "text"),
                   default="text")
    a.add_argument("--out", help="write the report to a file")

    g = sub.add_parser("guess", help="guess a recurrence from a terms file")
    g.add_argument("--terms", required=True,
                   help="file with one rational term per line")
    g.add_argument("--max-order", type=int, default=4)
    g.add_argument("--max-degree", type=int, default=4)
    g.add_argument("--verify-count", type=int, default=12)

    s = sub.add_parser("asym", help="asymptotic expansion of a recurrence")
    s.add_argument("--rec", required=True,
                   help="JSON file with operator text and initial values")
    s.add_argument("--order", type=int, default=6,
                   help="series truncation order")
    s.add_argument("--precision", type=int, default=256)

    st = sub.add_parser("sturm", help="verify real-rootedness of rows")
    add_source(st)
    st.add_argument("--nmax", type=int, default=40)

    stats = sub.add_parser("stats", help="empirical statistics table")
    add_source(stats)
    stats.add_argument("--n", default="25,50,100,200",
                       help="comma-separated row sizes")
    stats.add_argument("--precision", type=int, default=256)

    sub.add_parser("catalog", help="list built-in sequences")
    return p


def _load_triangle(args):
    if args.catalog:
        return catalog_get(args.catalog,
                           include_experimental=args.experimental)
    return load_definition_file(args.def_file)


def _parse_n_list(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(int(v) for v in text.split(","))


def _cmd_analyze(args) -> int:
    triangle = _load_triangle(args)
    cfg = AnalysisConfig(
        n_max_terms=args.n_max_terms,
        max_order=args.max_order,
        max_degree=args.max_degree,
        verify_count=args.verify_count,
        series_order=args.series_order,
        precision_bits=args.precision,
        richardson_depth=args.depth,
        sturm_bound=args.sturm_bound,
        stats_n=_parse_n_list(args.stats_n),
        out_format=args.format,
    )
    report = analyze(triangle, cfg)
    rendered = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if report.verdict == VERDICT_NORMAL else 2


def _cmd_guess(args) -> int:
    terms = []
    with open(args.terms, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                terms.append(Fraction(line))
    cfg = GuessConfig(args.max_order, args.max_degree, args.verify_count)
    try:
        rec = guess_recurrence(terms, cfg)
    except HolonormError as exc:
        print(json.dumps({"found": False, "reason": str(exc)}, indent=2))
        return 0
    doc = rec.to_json_dict()
    doc["found"] = True
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_asym(args) -> int:
    with open(args.rec, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    rec = Recurrence.from_json_dict(doc)
    form = expand_asymptotics(rec, M=args.order, prec=args.precision)
    print(json.dumps(form.to_json_dict(), indent=2, sort_keys=True))
    return 0


def _cmd_sturm(args) -> int:
    triangle = _load_triangle(args)
    result = real_rooted_upto(triangle, args.nmax)
    print(json.dumps({
        "sequence": triangle.name,
        "bound": result.bound,
        "all_verified": result.all_verified,
        "first_failure": result.first_failure,
    }, indent=2, sort_keys=True))
    return 0


def _cmd_stats(args) -> int:
    triangle = _load_triangle(args)
    entries = []
    for n in _parse_n_list(args.n):
        row = triangle.row(n)
        moments = exact_moments(row, n)
        with workprec(args.precision):
            sigma = mpmath.sqrt(to_mpf(moments.sigma2, args.precision))
        entries.append((moments,
                        limit_stats(row, moments.mu, sigma,
                                    prec=max(128, args.precision // 2))))
    sys.stdout.write(stats_csv(entries))
    return 0


def _cmd_catalog(args) -> int:
    for name in catalog_names(include_experimental=True):
        entry = catalog_get(name, include_experimental=True)
        tag = "  [experimental]" if entry.experimental else ""
        print(f"{name}: a(n,k) = {entry.expr_text}{tag}")
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "guess": _cmd_guess,
    "asym": _cmd_asym,
    "sturm": _cmd_sturm,
    "stats": _cmd_stats,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    if not args.command:
        parser.print_help(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (HolonormError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
