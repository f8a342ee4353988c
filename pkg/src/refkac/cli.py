"""Command-line interface: ``refkac {kac,refined,gamma-m,tau-m,series,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from refkac.hua import KacTable, RefinedKacTable, kac_table, p_series, q_series, refined_kac_table
from refkac.partitions import (
    parse_partition_tuple,
    render_multiplicity,
    render_partition_tuple,
    tau_m,
)
from refkac.qfield import IntPolynomial, RationalFunction
from refkac.quiver import Quiver, QuiverParseError, gamma_m, quiver_from_file, quiver_parse, quiver_render
from refkac.verify import DEFAULT_SEED, SUITES, run_suites

DEFAULT_WEIGHT = 3


class CLIError(Exception):
    pass


# -- JSON ---------------------------------------------------------------------------------

def _rf_to_json(v: RationalFunction) -> dict:
    return {
        "value_num": [str(a) for a in v.num.coeffs] or ["0"],
        "value_den": [str(a) for a in v.den.coeffs],
    }


def _rf_from_json(entry: dict) -> RationalFunction:
    num = IntPolynomial(int(a) for a in entry["value_num"])
    den = IntPolynomial(int(a) for a in entry["value_den"])
    return RationalFunction(num, den)


def table_to_json(table: KacTable | RefinedKacTable, rows=None) -> dict:
    """Coefficient lists are lowest exponent first, as decimal strings."""
    if rows is None:
        rows = table.rows()
    refined = isinstance(table, RefinedKacTable)
    doc = {
        "quiver": [list(r) for r in table.quiver.companion],
        "weight_bound": table.weight_bound,
    }
    if refined:
        doc["max_part"] = table.max_part
    entries = []
    for key, value in rows:
        e = {"key": [list(p) for p in key] if refined else list(key)}
        e.update(_rf_to_json(value))
        e["value"] = str(value)
        entries.append(e)
    doc["entries"] = entries
    return doc


def entries_from_json(doc: dict) -> list[tuple[tuple, RationalFunction]]:
    """Inverse of :func:`table_to_json` on the entry list."""
    out = []
    for e in doc["entries"]:
        key = e["key"]
        key = tuple(tuple(p) for p in key) if key and isinstance(key[0], list) else tuple(key)
        out.append((key, _rf_from_json(e)))
    return out


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


# -- helpers ---------------------------------------------------------------------------------

def _load_quiver(args) -> Quiver:
    if args.matrix is not None:
        return quiver_parse(args.matrix)
    return quiver_from_file(args.file)


def _add_quiver_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix", help='inline companion matrix, e.g. "[[2]]"')
    g.add_argument("--file", help="quiver document with fields 'vertices' and 'arrows'")


def _render_dim(a: Sequence[int]) -> str:
    return "(" + ",".join(map(str, a)) + ")"


def _parse_alpha(text: str, n: int) -> tuple[int, ...]:
    try:
        alpha = tuple(int(x) for x in text.strip().strip("()").split(","))
    except ValueError:
        raise CLIError(f"cannot parse dimension vector {text!r}") from None
    if len(alpha) != n:
        raise CLIError(f"dimension vector {text!r} has {len(alpha)} entries, quiver has {n} vertices")
    if any(a < 0 for a in alpha):
        raise CLIError("dimension vector entries must be non-negative")
    return alpha


def _check_weight(w: int) -> int:
    if w < 0:
        raise CLIError("--weight must be non-negative")
    return w


# -- commands -------------------------------------------------------------------------------

def cmd_kac(args, out) -> int:
    Q = _load_quiver(args)
    W = _check_weight(args.weight)
    table = kac_table(Q, W)
    if args.alpha is not None:
        alpha = _parse_alpha(args.alpha, Q.n)
        if not 0 < sum(alpha) <= W:
            raise CLIError(f"alpha {_render_dim(alpha)} is outside the weight bound 1..{W}")
        value = table[alpha]
        if args.format == "json":
            out.write(dump_json(table_to_json(table, [(alpha, value)])) + "\n")
        else:
            out.write(f"{value}\n")
        return 0
    if args.format == "json":
        out.write(dump_json(table_to_json(table)) + "\n")
    else:
        for alpha, value in table.rows():
            out.write(f"{_render_dim(alpha)}: {value}\n")
    return 0


def cmd_refined(args, out) -> int:
    Q = _load_quiver(args)
    W = _check_weight(args.weight)
    m = args.max_part
    if m is not None and m < 1:
        raise CLIError("--max-part must be >= 1")
    if args.lam is not None:
        try:
            lam = parse_partition_tuple(args.lam)
        except ValueError as exc:
            raise CLIError(str(exc)) from None
        if len(lam) != Q.n:
            raise CLIError(f"lambda has {len(lam)} components, quiver has {Q.n} vertices")
        if not any(lam):
            raise CLIError("the all-empty tuple has no refined Kac function")
        top = max(max(p) for p in lam if p)
        if m is not None and top > m:
            raise CLIError(f"lambda has a part {top} exceeding --max-part {m}")
        weight = sum(map(sum, lam))
        if weight > W:
            raise CLIError(f"lambda has weight {weight}, above --weight {W}")
        table = refined_kac_table(Q, W, m)
        value = table[lam]
        if args.format == "json":
            out.write(dump_json(table_to_json(table, [(lam, value)])) + "\n")
        else:
            out.write(f"{value}\n")
        return 0
    table = refined_kac_table(Q, W, m)
    if args.format == "json":
        out.write(dump_json(table_to_json(table)) + "\n")
    else:
        for lam, value in table.rows():
            out.write(f"{render_partition_tuple(lam)}\t{render_multiplicity(lam)}\t{value}\n")
    return 0


def cmd_gamma_m(args, out) -> int:
    Q = _load_quiver(args)
    try:
        G = gamma_m(Q, args.m)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    out.write("vertices: " + ",".join(G.labels()) + "\n")
    out.write(quiver_render(G) + "\n")
    return 0


def cmd_tau_m(args, out) -> int:
    try:
        lam = parse_partition_tuple(args.lam)
        image = tau_m(lam, args.m)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    out.write(render_partition_tuple(image) + "\n")
    return 0


def cmd_series(args, out) -> int:
    Q = _load_quiver(args)
    W = _check_weight(args.weight)
    if args.refined:
        s = q_series(Q, W, args.max_part)
    else:
        s = p_series(Q, W)
    out.write(s.dump() + "\n")
    return 0


def cmd_verify(args, out) -> int:
    names = args.suite or None
    try:
        reports = run_suites(names, seed=args.seed, weight=args.weight)
    except KeyError as exc:
        raise CLIError(exc.args[0]) from None
    for r in reports:
        out.write(r.summary() + "\n")
    ok = all(r.passed for r in reports)
    out.write(f"{'ALL PASS' if ok else 'FAILURES'}: {sum(r.passed for r in reports)}/{len(reports)} checks passed\n")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump({"seed": args.seed, "checks": [r.to_dict() for r in reports]}, fh, indent=2)
            fh.write("\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="refkac", description="Kac polynomials and refined Kac functions of quivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kac", help="Kac polynomials A(alpha, q)")
    _add_quiver_source(p)
    p.add_argument("--weight", type=int, default=DEFAULT_WEIGHT)
    p.add_argument("--alpha", help="single dimension vector, e.g. 1,2")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_kac)

    p = sub.add_parser("refined", help="refined Kac functions A(lambda_*, q)")
    _add_quiver_source(p)
    p.add_argument("--weight", type=int, default=DEFAULT_WEIGHT)
    p.add_argument("--max-part", type=int, default=None, help="largest allowed part (default: the weight)")
    p.add_argument("--lambda", dest="lam", help='partition tuple, e.g. "[2,1];[1]"')
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_refined)

    p = sub.add_parser("gamma-m", help="the enlarged quiver Gamma_m")
    _add_quiver_source(p)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_gamma_m)

    p = sub.add_parser("tau-m", help="image of a partition tuple under tau_m")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_tau_m)

    p = sub.add_parser("series", help="dump the generating series P or Q^m")
    _add_quiver_source(p)
    p.add_argument("--weight", type=int, default=DEFAULT_WEIGHT)
    p.add_argument("--refined", action="store_true", help="dump the refined series instead of P")
    p.add_argument("--max-part", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", help=f"one of: {', '.join(SUITES)} (repeatable; default all)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--weight", type=int, default=None, help="override the suite's default weight bound")
    p.add_argument("--report", help="write a JSON report to this path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (CLIError, QuiverParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
