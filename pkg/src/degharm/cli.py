"""Command-line front end: ``table``, ``verify``, ``series`` and ``limit``.

Exit status is 0 when every expectation is met, 1 when an identity (or a
classical-limit row) disagrees, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from . import sequences as seqs
from . import series as ps
from .exact import PolyLambda
from .verify import (
    SYMBOLIC,
    SuiteConfig,
    UnknownIdentityError,
    REGISTRY,
    VerificationReport,
    poly_to_json,
    run_all,
)

TOOL = "degharm"
DEFAULT_M_CAP = 8

GF_IDS = ("H", "H_order", "K", "polylog", "degexp", "deglog", "stirling", "lah", "derangement")
EGF_IDS = frozenset({"degexp", "stirling", "lah", "derangement"})
LIMIT_IDS = ("H", "H_order", "deg_derangement", "stirling1_unsigned")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return v


def rational_list(text: str) -> tuple[Fraction, ...]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty λ sample list")
    return tuple(rational(s.strip()) for s in items)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("text", "csv", "json"), default="text")
    shared.add_argument("--lambda", dest="lam", type=rational, default=None,
                        help="evaluate at this λ (p/q); symbolic output if omitted")
    shared.add_argument("--seed", type=nonneg_int, default=42)
    shared.add_argument("--ascii", action="store_true", help="write L instead of λ")
    shared.add_argument("--m-cap", type=positive_int, default=DEFAULT_M_CAP,
                        help="largest accepted m (default %(default)s)")

    parser = argparse.ArgumentParser(
        prog=TOOL, description="Exact degenerate harmonic numbers and identity checks."
    )
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[shared], help="tabulate a sequence")
    p.add_argument("--seq", required=True, choices=seqs.SEQUENCE_IDS)
    p.add_argument("--n", required=True, type=nonneg_int)
    p.add_argument("--m", type=positive_int)
    p.add_argument("--k", type=nonneg_int, help="fix k for triangular sequences")

    p = sub.add_parser("verify", parents=[shared], help="run identity suites")
    p.add_argument("--max-n", type=positive_int, default=25)
    p.add_argument("--max-m", type=positive_int, default=4)
    p.add_argument("--series-order", type=positive_int, default=None)
    p.add_argument("--lambda-samples", type=rational_list, default=None)
    p.add_argument("--random-trials", type=nonneg_int, default=50)
    p.add_argument("--only", action="append", default=None, metavar="ID")
    p.add_argument("--timing", action="store_true", help="include timings in json output")

    p = sub.add_parser("series", parents=[shared], help="print generating-function coefficients")
    p.add_argument("--gf", required=True, choices=GF_IDS)
    p.add_argument("--terms", required=True, type=positive_int)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--k", type=nonneg_int, default=None)
    p.add_argument("--x", type=rational, default=Fraction(1))

    p = sub.add_parser("limit", parents=[shared], help="compare λ=0 with classical values")
    p.add_argument("--seq", required=True, choices=seqs.SEQUENCE_IDS)
    p.add_argument("--n", type=nonneg_int, default=10)
    p.add_argument("--m", type=positive_int)
    for subparser in sub.choices.values():
        subparser.set_defaults(_parser=subparser)
    return parser


# -- output helpers ----------------------------------------------------------


def _render(p: PolyLambda, args) -> str:
    return p.render(ascii=args.ascii)


def _coeff_field(p: PolyLambda) -> str:
    return " ".join(str(c) for c in p.coeffs)


def parse_coeff_field(field: str) -> PolyLambda:
    """Inverse of the CSV coefficient column."""
    return PolyLambda(Fraction(s) for s in field.split())


def _json_doc(command: str, params: dict, **body) -> str:
    doc = {"tool": TOOL, "version": __version__, "command": command, "params": params}
    doc.update(body)
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def _emit_rows(args, command: str, params: dict, index_names: list[str],
               rows: list[tuple[tuple[int, ...], PolyLambda]]) -> str:
    if args.format == "json":
        out = []
        for idx, v in rows:
            row = dict(zip(index_names, idx))
            row["value"] = poly_to_json(v, ascii=args.ascii)
            out.append(row)
        return _json_doc(command, params, rows=out)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(index_names + ["text", "coeffs"])
        for idx, v in rows:
            w.writerow(list(idx) + [_render(v, args), _coeff_field(v)])
        return buf.getvalue()
    return "".join(
        ", ".join([*map(str, idx), _render(v, args)]) + "\n" for idx, v in rows
    )


def _check_m(args, m: int | None) -> None:
    if m is not None and m > args.m_cap:
        raise UsageError(f"m={m} exceeds --m-cap {args.m_cap}")


def _maybe_eval(v: PolyLambda, lam: Fraction | None) -> PolyLambda:
    return v if lam is None else PolyLambda.constant(v(lam))


# -- commands ----------------------------------------------------------------


def cmd_table(args) -> tuple[int, str]:
    if args.seq in seqs.NEEDS_M and args.m is None:
        raise UsageError(f"--m is required for --seq {args.seq}")
    _check_m(args, args.m)
    if args.seq == "K" and args.n < 1:
        raise UsageError("--n must be at least 1 for --seq K")
    table = seqs.build_table(args.seq, args.n, m=args.m, k=args.k)
    if args.lam is not None:
        table = table.evaluate(args.lam)
    rows = list(table.rows.items())
    params = {"seq": args.seq, "n": args.n, "m": args.m, "k": args.k,
              "lambda": None if args.lam is None else str(args.lam)}
    names = ["n", "k"] if args.seq in seqs.TRIANGLES else ["n"]
    return 0, _emit_rows(args, "table", params, names, rows)


def _verify_text(report: VerificationReport, args) -> str:
    lines = []
    for ident_id, res in sorted(report.results.items()):
        if res.met:
            tag = "XFAIL" if res.identity.expected == "fail" else "PASS"
        else:
            tag = "XPASS" if res.identity.expected == "fail" else "FAIL"
        lines.append(
            f"{tag:5} {ident_id}  ({res.count('pass')} pass, {res.count('fail')} fail,"
            f" {res.count('skipped')} skipped)"
        )
        shown = 0
        for r in sorted(res.failures(), key=lambda r: (r.cell.lam != SYMBOLIC, r.cell.n or 0)):
            if r.cell.lam != SYMBOLIC or shown >= 5:
                continue
            lines.append(
                f"      {r.cell.label()}: {_render(r.lhs, args)} vs {_render(r.rhs, args)}"
            )
            shown += 1
    lines.append("OK" if report.ok else "FAILED")
    return "\n".join(lines) + "\n"


def _verify_csv(report: VerificationReport, args) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["identity", "cell", "status", "lhs", "rhs"])
    for r in report.records():
        lhs = _render(r.lhs, args) if r.status == "fail" else ""
        rhs = _render(r.rhs, args) if r.status == "fail" else ""
        w.writerow([r.identity, r.cell.label() or "-", r.status, lhs, rhs])
    return buf.getvalue()


def cmd_verify(args) -> tuple[int, str]:
    _check_m(args, args.max_m)
    samples = args.lambda_samples
    if args.lam is not None:
        samples = (args.lam,)
    kwargs = dict(
        max_n=args.max_n,
        max_m=args.max_m,
        series_order=args.series_order or max(32, args.max_n),
        random_seq_trials=args.random_trials,
        seed=args.seed,
    )
    if samples is not None:
        kwargs["lambda_samples"] = samples
    try:
        config = SuiteConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.only:
        unknown = [i for i in args.only if i not in REGISTRY]
        if unknown:
            raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
    try:
        report = run_all(config, only=args.only)
    except UnknownIdentityError as exc:
        raise UsageError(f"unknown identity id: {exc}")
    status = 0 if report.ok else 1
    if args.format == "json":
        return status, _json_doc("verify", config.to_dict(), report=report.to_dict(args.timing))
    if args.format == "csv":
        return status, _verify_csv(report, args)
    return status, _verify_text(report, args)


def _gf(args, order: int) -> ps.TruncatedSeries:
    gf = args.gf
    if gf in ("H_order", "K", "polylog"):
        if args.m is None:
            raise UsageError(f"--m is required for --gf {gf}")
        if gf != "polylog" and args.m < 1:
            raise UsageError("--m must be positive")
        _check_m(args, args.m)
    if gf in ("stirling", "lah") and args.k is None:
        raise UsageError(f"--k is required for --gf {gf}")
    if gf == "H":
        return ps.gf_H(order)
    if gf == "H_order":
        return ps.gf_H_order(args.m, order)
    if gf == "K":
        return ps.gf_K(args.m, order)
    if gf == "polylog":
        return ps.gf_polylog(args.m, order)
    if gf == "degexp":
        return ps.gf_deg_exp(args.x, order)
    if gf == "deglog":
        return ps.gf_deg_log(order)
    if gf == "stirling":
        return ps.gf_stirling_unsigned(args.k, order)
    if gf == "lah":
        return ps.gf_lah(args.k, order)
    return ps.gf_deg_derangement(order)


def cmd_series(args) -> tuple[int, str]:
    s = _gf(args, args.terms)
    rows = [((i,), _maybe_eval(c, args.lam)) for i, c in enumerate(s.coeffs)]
    params = {"gf": args.gf, "terms": args.terms, "m": args.m, "k": args.k,
              "x": str(args.x), "egf": args.gf in EGF_IDS,
              "lambda": None if args.lam is None else str(args.lam)}
    return 0, _emit_rows(args, "series", params, ["n"], rows)


def cmd_limit(args) -> tuple[int, str]:
    if args.seq not in LIMIT_IDS:
        raise UsageError(
            f"--seq {args.seq} has no classical counterpart; choose from {', '.join(LIMIT_IDS)}"
        )
    if args.seq == "H_order":
        if args.m is None:
            raise UsageError("--m is required for --seq H_order")
        _check_m(args, args.m)
    rows = []
    for n in range(args.n + 1):
        if args.seq == "H":
            rows.append(((n,), seqs.H_def(n)(0), seqs.harmonic(n)))
        elif args.seq == "H_order":
            rows.append(((n,), seqs.H_order(n, args.m)(0), seqs.harmonic_order(n, args.m)))
        elif args.seq == "deg_derangement":
            rows.append(((n,), seqs.deg_derangement(n)(0), Fraction(seqs.derangement(n))))
        else:
            for k in range(n + 1):
                rows.append(((n, k), seqs.deg_stirling1_unsigned(n, k)(0),
                             Fraction(seqs.stirling1_unsigned(n, k))))
    status = 0 if all(a == b for _, a, b in rows) else 1
    names = ["n", "k"] if args.seq == "stirling1_unsigned" else ["n"]
    if args.format == "json":
        out = [dict(zip(names, idx), degenerate_at_0=str(a), classical=str(b), match=a == b)
               for idx, a, b in rows]
        params = {"seq": args.seq, "n": args.n, "m": args.m}
        return status, _json_doc("limit", params, rows=out)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(names + ["degenerate_at_0", "classical", "match"])
        for idx, a, b in rows:
            w.writerow(list(idx) + [a, b, "yes" if a == b else "no"])
        return status, buf.getvalue()
    text = "".join(
        ", ".join([*map(str, idx), str(a), str(b), "match" if a == b else "MISMATCH"]) + "\n"
        for idx, a, b in rows
    )
    return status, text


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "series": cmd_series, "limit": cmd_limit}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, out = COMMANDS[args.command](args)
    except UsageError as exc:
        args._parser.print_usage(sys.stderr)
        print(f"{TOOL} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    try:
        sys.stdout.write(out)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return status


if __name__ == "__main__":
    sys.exit(main())
