"""Command line interface.

Subcommands: gen, width, traces, obdd, verify, export.  Exit codes:
0 success, 1 exact check failure, 2 usage error, 3 budget exhaustion
under --strict.  MIMLAB_BUDGET overrides the default work budgets of
the exact searches.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import generators
from .errors import BudgetExceededError
from .graph import (
    format_edge_list,
    max_induced_cut_matching,
    read_edge_list,
)
from .harness import (
    CHECK_NAMES,
    ExperimentSpec,
    any_failures,
    any_skipped,
    export,
    verify,
)
from .obdd import (
    build_obdd,
    cnf_of_graph,
    count_accepting,
    count_satisfying,
    exhaustive_equiv_check,
    format_dimacs,
    min_obdd_size_exact,
    obdd_to_dot,
)
from .traces import trace_count_bound_check, traces
from .width import (
    WidthVariant,
    exact_width,
    heuristic_width_upper,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _env_budget() -> int | None:
    raw = os.environ.get("MIMLAB_BUDGET")
    return int(raw) if raw else None


def _out(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> int:
    if args.family == "skew":
        g = generators.skew(args.q)
        comments = generators.generator_comments("skew", q=args.q)
    elif args.family == "skew-path":
        g, _ = generators.skew_path(args.p, args.q)
        comments = generators.generator_comments("skew-path", p=args.p, q=args.q)
    elif args.family == "skew-grid":
        g, meta = generators.skew_grid(args.p, args.q, args.r)
        comments = generators.skew_grid_comments(meta)
    elif args.family == "cliquethread":
        g = generators.clique_thread(args.r)
        comments = generators.generator_comments("cliquethread", r=args.r)
    elif args.family == "grid":
        g = generators.grid(args.p, args.r)
        comments = generators.generator_comments("grid", p=args.p, r=args.r)
    elif args.family == "corona":
        g = generators.clique_corona(args.k)
        comments = generators.generator_comments("corona", k=args.k)
    elif args.family == "pmatch":
        g = generators.perfect_matching_graph(args.k)
        comments = generators.generator_comments("pmatch", k=args.k)
    elif args.family == "fixture":
        g = generators.fixtures()[args.name]
        comments = generators.generator_comments("fixture", name=args.name)
    else:  # pragma: no cover - argparse restricts choices
        raise AssertionError(args.family)
    _out(args, format_edge_list(g, comments))
    return EXIT_OK


def _parse_vertices(raw: str, n: int) -> list[int]:
    out = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        v = int(part) - 1
        if not 0 <= v < n:
            raise ValueError(f"vertex {part} out of range")
        out.append(v)
    return out


def _cmd_width(args) -> int:
    g = read_edge_list(args.input)
    variant = WidthVariant(args.variant)
    if args.heuristic:
        value, witness = heuristic_width_upper(
            g, variant, seed=args.seed, budget=args.budget or 200
        )
        from .width import width_of_ordering

        _, per_prefix = width_of_ordering(g, witness, variant)
        mode = "heuristic"
    else:
        report = exact_width(g, variant)
        value, witness, per_prefix = report.value, report.witness, report.per_prefix
        mode = "exact"
    payload = {
        "variant": variant.value,
        "mode": mode,
        "value": value,
        "ordering": [v + 1 for v in witness],
        "per_prefix": list(per_prefix),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"variant: {variant.value}")
        print(f"mode: {mode}")
        print(f"value: {value}")
        print("ordering:", ",".join(str(v + 1) for v in witness))
        print("per-prefix widths:", ",".join(str(w) for w in per_prefix))
    return EXIT_OK


def _cmd_traces(args) -> int:
    g = read_edge_list(args.input)
    side = _parse_vertices(args.side, g.n)
    budget = args.budget or _env_budget()
    ts = traces(g, side, budget=budget)
    r, witness = max_induced_cut_matching(g, side)
    bound = None
    bound_err = None
    try:
        bound = trace_count_bound_check(g, side, budget=budget)
    except ValueError as exc:
        bound_err = str(exc)
    members = sorted(sorted(v + 1 for v in tr) for tr in ts.members)
    if args.json:
        payload = {
            "side": sorted(v + 1 for v in ts.side_u),
            "traces": members,
            "trace_count": len(ts),
            "matching_size": r,
            "matching_witness": [[a + 1, b + 1] for a, b in witness],
        }
        if bound:
            payload["bound_check"] = {
                "binomial_bound": bound.binomial_bound,
                "power_bound": bound.power_bound,
                "within_binomial": bound.within_binomial,
                "within_power": bound.within_power,
                "small_sets_generate_all": bound.small_sets_generate_all,
            }
        else:
            payload["bound_check"] = None
            payload["bound_check_error"] = bound_err
        print(json.dumps(payload, indent=2))
    else:
        print(f"side: {','.join(str(v + 1) for v in sorted(ts.side_u))}")
        print(f"trace family ({len(ts)} members):")
        for tr in members:
            print("  {" + ",".join(str(v) for v in tr) + "}")
        print(f"matching size: {r}")
        if bound:
            print(
                "bound check: "
                f"count={bound.trace_count} binomial={bound.binomial_bound} "
                f"power={bound.power_bound} ok={bound.all_ok}"
            )
        else:
            print(f"bound check: not applicable ({bound_err})")
    return EXIT_OK


def _cmd_obdd(args) -> int:
    g = read_edge_list(args.input)
    cnf = cnf_of_graph(g)
    if args.dimacs:
        with open(args.dimacs, "w", encoding="utf-8") as fh:
            fh.write(format_dimacs(cnf))
    if args.minimize:
        report = min_obdd_size_exact(
            g, method="enum" if args.minimize == "exact" else "dp"
        )
        order = report.order_quasi
        print(f"minimal quasi-reduced size: {report.size_quasi}")
        print(f"minimal reduced size: {report.size_total}")
        print(
            "quasi order:",
            ",".join(str(v + 1) for v in report.order_quasi),
        )
        print(
            "reduced order:",
            ",".join(str(v + 1) for v in report.order_total),
        )
    elif args.order:
        order = _parse_vertices(args.order, g.n)
    else:
        order = list(range(g.n))
    z = build_obdd(g, order)
    ok = exhaustive_equiv_check(z, g)
    print(f"order: {','.join(str(v + 1) for v in z.order)}")
    print(f"size total (reduced): {z.size_total}")
    print(f"size quasi-reduced: {z.size_quasi}")
    print(f"accepting assignments: {count_accepting(z)}")
    print(f"satisfying assignments: {count_satisfying(g)}")
    print(f"equivalence check: {'pass' if ok else 'FAIL'}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(obdd_to_dot(z))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    params = {}
    if args.corpus_n is not None:
        params["corpus_max_n"] = args.corpus_n
    if args.pair_n is not None:
        params["pair_max_n"] = args.pair_n
    if args.random_count is not None:
        params["random_count"] = args.random_count
    try:
        spec = ExperimentSpec(
            checks=checks,
            seed=args.seed,
            threads=args.threads,
            strict=args.strict,
            params=params,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = verify(spec)
    for row in rows:
        status = "SKIP" if row.skipped else ("pass" if row.passed else "FAIL")
        print(f"[{row.check}] {row.instance}: {status}"
              + (f" ({row.detail})" if row.detail and status != "pass" else ""))
    if args.csv:
        export(rows, "csv", args.csv, include_timing=args.timing)
    if args.json_out:
        export(rows, "json", args.json_out, include_timing=args.timing)
    failed = any_failures(rows)
    skipped = any_skipped(rows)
    total = len(rows)
    print(
        f"rows={total} failed={sum(1 for r in rows if r.passed is False)} "
        f"skipped={sum(1 for r in rows if r.skipped)}"
    )
    if failed:
        return EXIT_CHECK_FAILED
    if skipped and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_export(args) -> int:
    with open(args.rows, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    from .harness import CSV_COLUMNS, ReportRow

    rows = []
    for entry in data:
        kwargs = {k: entry.get(k) for k in CSV_COLUMNS if k in entry}
        if "wall_ms" in entry:
            kwargs["wall_ms"] = entry["wall_ms"]
        kwargs.setdefault("n", 0)
        kwargs.setdefault("m", 0)
        rows.append(ReportRow(**kwargs))
    export(rows, args.format, args.out, include_timing=args.timing)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mimlab",
        description=(
            "Width parameters from induced matchings across vertex-order "
            "cuts, OBDD compilation of edge CNFs, and exact verification "
            "suites."
        ),
    )
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument(
        "--budget", type=int, default=None,
        help="work budget override (MIMLAB_BUDGET sets the default for "
             "enumeration budgets; for `width --heuristic` this is the "
             "number of orderings evaluated)",
    )
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output when supported")
    # The same flags are accepted after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a generated graph as an edge list")
    gensub = gen.add_subparsers(dest="family", required=True)
    for fam, opts in (
        ("skew", ("q",)),
        ("skew-path", ("p", "q")),
        ("skew-grid", ("p", "q", "r")),
        ("cliquethread", ("r",)),
        ("grid", ("p", "r")),
        ("corona", ("k",)),
        ("pmatch", ("k",)),
    ):
        p = gensub.add_parser(fam, parents=[common])
        for o in opts:
            p.add_argument(f"--{o}", type=int, required=True)
        p.add_argument("-o", "--output", default="-")
        p.set_defaults(func=_cmd_gen)
    pfix = gensub.add_parser("fixture", parents=[common])
    pfix.add_argument("name", choices=sorted(generators.fixtures()))
    pfix.add_argument("-o", "--output", default="-")
    pfix.set_defaults(func=_cmd_gen)

    width = sub.add_parser("width", parents=[common],
                           help="width of a graph under a variant")
    width.add_argument("--variant", choices=[v.value for v in WidthVariant],
                       required=True)
    width.add_argument("--input", required=True)
    mode = width.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--heuristic", action="store_true")
    width.set_defaults(func=_cmd_width)

    tr = sub.add_parser("traces", parents=[common],
                        help="trace family of a cut")
    tr.add_argument("--input", required=True)
    tr.add_argument("--side", required=True,
                    help="comma separated 1-based vertex list")
    tr.set_defaults(func=_cmd_traces)

    ob = sub.add_parser("obdd", parents=[common],
                        help="compile the edge CNF to an OBDD")
    ob.add_argument("--input", required=True)
    ob.add_argument("--order", help="comma separated 1-based variable order")
    ob.add_argument("--minimize", choices=["exact", "dp"])
    ob.add_argument("--dot", help="write GraphViz rendering here")
    ob.add_argument("--dimacs", help="write DIMACS CNF here")
    ob.set_defaults(func=_cmd_obdd)

    ver = sub.add_parser("verify", parents=[common],
                         help="run verification suites")
    ver.add_argument("--checks", default=",".join(CHECK_NAMES),
                     help="comma separated check names")
    ver.add_argument("--corpus-n", type=int, default=None)
    ver.add_argument("--pair-n", type=int, default=None)
    ver.add_argument("--random-count", type=int, default=None)
    ver.add_argument("--csv", help="export rows as CSV here")
    ver.add_argument("--json-out", help="export rows as JSON here")
    ver.add_argument("--strict", action="store_true",
                     help="exit 3 when any row was skipped on budget")
    ver.add_argument("--timing", action="store_true",
                     help="include wall time in exports")
    ver.set_defaults(func=_cmd_verify)

    ex = sub.add_parser("export", parents=[common],
                        help="re-format a JSON rows dump")
    ex.add_argument("--rows", required=True)
    ex.add_argument("--format", choices=["csv", "json"], required=True)
    ex.add_argument("--out", required=True)
    ex.add_argument("--timing", action="store_true")
    ex.set_defaults(func=_cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
