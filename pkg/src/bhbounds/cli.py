"""Command-line interface: constant tables, verification suites, search.

Exit codes: 0 on success, 1 when any inequality check fails, 2 on usage
or enumeration-budget errors.  Identical flags and seed give byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .constants import ConstantsTable, SchemeId, constant, table
from .forms import BudgetExceededError, dump_form
from .verify import (
    VerificationReport,
    check_multiple_summing,
    run_bh_trials,
    run_blei_suite,
    run_kcc_suite,
    run_khinchine_suite,
    run_tensor_suite,
    search_extremal,
)

_SCHEME_TOKENS = {
    "new": SchemeId.NEW_REAL,
    "cor52": SchemeId.COR52_REAL,
    "classic": SchemeId.CLASSIC,
    "cor52-complex": SchemeId.COR52_COMPLEX,
    "dsp-complex": SchemeId.DSP_COMPLEX,
}

_SUITES = ("khinchine", "kcc", "blei", "tensor", "bh", "summing", "all")


def _parse_schemes(spec: str) -> tuple[SchemeId, ...]:
    schemes = []
    for token in spec.split(","):
        token = token.strip()
        if token not in _SCHEME_TOKENS:
            raise ValueError(
                f"unknown scheme {token!r}; choose from {', '.join(_SCHEME_TOKENS)}"
            )
        schemes.append(_SCHEME_TOKENS[token])
    return tuple(schemes)


def _scheme_token(scheme: SchemeId) -> str:
    return scheme.value


def _fmt(value: float, precision: int) -> str:
    # format() rounds half to even, so text output is platform-stable.
    return format(value, f".{precision}f")


def _exact_pair(exact: Optional[Fraction]) -> Optional[list[int]]:
    if exact is None:
        return None
    return [exact.numerator, exact.denominator]


def _render_table_text(tab: ConstantsTable) -> str:
    headers = ["m"] + [_scheme_token(s) for s in tab.schemes]
    body = [
        [str(m)] + [_fmt(c.value, tab.precision) for c in row] for m, row in tab.rows
    ]
    widths = [max(len(line[i]) for line in [headers] + body) for i in range(len(headers))]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for line in body:
        lines.append("  ".join(v.rjust(w) for v, w in zip(line, widths)))
    return "\n".join(lines)


def _render_table_csv(tab: ConstantsTable) -> str:
    lines = [",".join(["m"] + [_scheme_token(s) for s in tab.schemes])]
    for m, row in tab.rows:
        lines.append(",".join([str(m)] + [_fmt(c.value, tab.precision) for c in row]))
    return "\n".join(lines)


def _render_table_json(tab: ConstantsTable) -> str:
    rows = []
    for m, row in tab.rows:
        values = {}
        for scheme, cons in zip(tab.schemes, row):
            entry = {
                "value": float(_fmt(cons.value, tab.precision)),
                "exact_log2": _exact_pair(cons.exact_exponent),
            }
            if cons.prefactor is not None:
                entry["prefactor"] = float(_fmt(cons.prefactor, tab.precision))
            values[_scheme_token(scheme)] = entry
        rows.append({"m": m, "values": values})
    doc = {
        "schemes": [_scheme_token(s) for s in tab.schemes],
        "precision": tab.precision,
        "rows": rows,
    }
    return json.dumps(doc)


def cmd_table(args: argparse.Namespace) -> int:
    schemes = _parse_schemes(args.schemes)
    tab = table(args.m_min, args.m_max, schemes, precision=args.precision)
    if args.format == "text":
        print(_render_table_text(tab))
    elif args.format == "csv":
        print(_render_table_csv(tab))
    else:
        print(_render_table_json(tab))
    return 0


def _report_text(report: VerificationReport) -> str:
    return (
        f"suite={report.suite} trials={report.trials} failures={report.failures} "
        f"worst_margin={report.worst_margin!r} max_ratio={report.max_ratio!r} "
        f"seed={report.seed} uncertified={str(report.uncertified).lower()}"
    )


def _report_csv_row(report: VerificationReport) -> str:
    return (
        f"{report.suite},{report.trials},{report.failures},{report.worst_margin!r},"
        f"{report.max_ratio!r},{report.seed},{str(report.uncertified).lower()}"
    )


def _emit_reports(reports: Sequence[VerificationReport], fmt: str) -> None:
    if fmt == "json":
        for report in reports:
            print(report.to_json())
    elif fmt == "csv":
        print("suite,trials,failures,worst_margin,max_ratio,seed,uncertified")
        for report in reports:
            print(_report_csv_row(report))
    else:
        for report in reports:
            print(_report_text(report))


def _run_suite(args: argparse.Namespace) -> list[VerificationReport]:
    seed = args.seed
    dump = args.dump_dir
    if args.suite == "khinchine":
        return [run_khinchine_suite(count=args.count or 100, seed=seed)]
    if args.suite == "kcc":
        return [run_kcc_suite(count=args.count or 100, seed=seed)]
    if args.suite == "blei":
        return [run_blei_suite(count=args.count or 1000, seed=seed)]
    if args.suite == "tensor":
        return [run_tensor_suite(count=args.count or 200, seed=seed)]
    if args.suite == "bh":
        return [
            run_bh_trials(args.m, args.n, args.count or 1000, seed, failure_dir=dump)
        ]
    if args.suite == "summing":
        return [
            check_multiple_summing(
                args.m, args.n, args.j, args.count or 1000, seed, failure_dir=dump
            )
        ]
    # The full battery at its default sizes.
    return [
        run_khinchine_suite(count=100, seed=seed),
        run_kcc_suite(count=100, seed=seed),
        run_blei_suite(count=1000, seed=seed),
        run_tensor_suite(count=200, seed=seed),
        run_bh_trials(2, 2, 10000, seed, failure_dir=dump),
        run_bh_trials(3, 3, 1000, seed, failure_dir=dump),
        run_bh_trials(4, 2, 100, seed, failure_dir=dump),
        check_multiple_summing(2, 2, 3, 1000, seed, failure_dir=dump),
    ]


def cmd_verify(args: argparse.Namespace) -> int:
    reports = _run_suite(args)
    _emit_reports(reports, args.format)
    return 0 if all(r.failures == 0 for r in reports) else 1


def cmd_search(args: argparse.Namespace) -> int:
    state = search_extremal(
        args.m, args.n, restarts=args.restarts, iterations=args.iterations, seed=args.seed
    )
    bound = constant(SchemeId.NEW_REAL, args.m).value
    print(
        f"ratio={state.ratio!r} bound={bound!r} m={args.m} n={args.n} "
        f"restarts={state.restarts} iterations={state.iterations} seed={args.seed}"
    )
    if args.out:
        dump_form(state.tensor, args.out, seed=args.seed)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bhbounds",
        description="Constant schemes and inequality verification for m-linear forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="render the constants comparison table")
    p_table.add_argument("--m-min", type=int, default=3, dest="m_min")
    p_table.add_argument("--m-max", type=int, default=14, dest="m_max")
    p_table.add_argument("--schemes", default="new,cor52,classic")
    p_table.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_table.add_argument("--precision", type=int, default=3)
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", choices=_SUITES, default="all")
    p_verify.add_argument("--m", type=int, default=2)
    p_verify.add_argument("--n", type=int, default=2)
    p_verify.add_argument("--j", type=int, default=3, help="family size for the summing suite")
    p_verify.add_argument("--count", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_verify.add_argument("--dump-dir", default=None, dest="dump_dir",
                          help="directory for failing-instance tensor dumps")
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="hill-climb sign tensors for large ratios")
    p_search.add_argument("--m", type=int, default=2)
    p_search.add_argument("--n", type=int, default=2)
    p_search.add_argument("--restarts", type=int, default=8)
    p_search.add_argument("--iterations", type=int, default=200)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--out", default=None, help="path for the best tensor dump")
    p_search.set_defaults(func=cmd_search)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
