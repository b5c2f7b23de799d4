"""Command-line entry point (``chromabound``)."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Sequence

from .chromatic import PolyCache, PreconditionError, compare_to_bound, q_poly
from .extension import Comp1Report, SlotRule, run_comp1_all
from .graph import Graph6Error, chromatic_number, is_connected, parse_graph6, to_graph6
from .pipeline import (
    DEFAULT_SAMPLE,
    extremal_family,
    random_critical_search,
    read_manifest,
    replay_theorem_chain,
    small_critical_check,
    verify_catalog,
)
from .poly import bound_poly, format_poly, ll_leq, parse_poly, shifted_difference

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_COUNT_MISMATCH = 3
EXIT_IO = 4


def _emit(args: argparse.Namespace, payload: Any, rows: list[dict] | None, text: str) -> None:
    if args.format == "json":
        json.dump(payload, sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    elif args.format == "csv" and rows:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _coeffs(p) -> str:
    return " ".join(str(c) for c in p.coeffs)


def cmd_qpoly(args: argparse.Namespace, cache: PolyCache) -> int:
    g = parse_graph6(args.graph6)
    q = q_poly(g, cache)
    payload: dict[str, Any] = {"graph6": args.graph6, "n": g.n, "m": g.m, "q": format_poly(q), "coeffs": list(q.coeffs)}
    text = f"Q(y) = {format_poly(q)}"
    code = EXIT_OK
    if args.bound is not None:
        k = args.bound
        if not is_connected(g) or chromatic_number(g) != k:
            raise PreconditionError(f"graph must be connected with chromatic number {k}")
        v = compare_to_bound(q, k, g.n)
        payload["bound"] = {"status": v.status, "certificate": v.certificate, "witness": v.witness}
        text += f"\nbound_poly({k}, {g.n}) = {format_poly(v.bound)}\nverdict: {v.status}"
        if v.certificate:
            text += f" ({v.certificate})"
        if v.witness is not None:
            text += f", fails at y = {v.witness}"
        code = EXIT_VIOLATION if v.status == "violation" else EXIT_OK
    _emit(args, payload, [{"graph6": args.graph6, "coeffs": _coeffs(q)}], text)
    return code


def cmd_cmp(args: argparse.Namespace, cache: PolyCache) -> int:
    p1, p2 = parse_poly(args.p1), parse_poly(args.p2)
    fwd = ll_leq(p1, p2, args.k)
    back = ll_leq(p2, p1, args.k)
    w = shifted_difference(p1, p2, args.k)
    payload = {"p1": format_poly(p1), "p2": format_poly(p2), "k": args.k, "p1_ll_p2": fwd, "p2_ll_p1": back,
               "w": list(w.coeffs)}
    text = (
        f"p1 <<_{args.k} p2: {fwd}\n"
        f"p2 <<_{args.k} p1: {back}\n"
        f"(p2 - p1)(z + {args.k}) = {format_poly(w, 'z')}"
    )
    _emit(args, payload, [payload | {"w": _coeffs(w)}], text)
    return EXIT_OK


def _table_rows(reports: Sequence[Comp1Report]) -> list[dict]:
    return [
        {
            "name": r.name,
            "latex": r.latex,
            "R": format_poly(r.R),
            "R_coeffs": _coeffs(r.R),
            "W": format_poly(r.W, "z"),
            "W_coeffs": _coeffs(r.W),
            "verdict": r.verdict,
            "matches_reference": bool(r.matches_r and r.matches_w),
        }
        for r in reports
    ]


def _report_json(r: Comp1Report) -> dict:
    return {
        "name": r.name,
        "graph6": to_graph6(r.profile.h),
        "dprime": list(r.profile.dprime),
        "rule": r.rule.value,
        "R": list(r.R.coeffs),
        "R_all": list(r.r_all.coeffs),
        "W": list(r.W.coeffs),
        "W_all": list(r.w_all.coeffs),
        "verdict": r.verdict,
        "verdict_all": r.verdict_all,
        "matches_R": r.matches_r,
        "matches_W": r.matches_w,
        "notes": r.notes,
        "terms": [
            {
                "T": rec.label,
                "slots": list(rec.E.slot_counts),
                "E": list(rec.E.poly.coeffs),
                "maximal_candidates": len(rec.E.maximal),
                "Eprime": list(rec.Eprime.coeffs),
                "sign": rec.sign.sign.value,
                "shift": rec.sign.shift,
                "point_checks": list(rec.sign.point_checks),
                "delta": rec.delta,
            }
            for rec in r.records
        ],
    }


def cmd_table(args: argparse.Namespace, cache: PolyCache) -> int:
    reports = run_comp1_all(SlotRule(args.rule), strict=args.strict_ties)
    which = args.command
    lines = [
        "E'_T is the signed sum of E over subsets of T (inverse: E_T = sum of E' over subsets).",
        "R sums E'_T y^(4 - Delta'(T)) over the positive E'_T.",
        "",
    ]
    for r in reports:
        poly = format_poly(r.R) if which == "table1" else format_poly(r.W, "z")
        mark = "ok" if (r.matches_r if which == "table1" else r.matches_w) else "MISMATCH"
        lines.append(f"{r.name:<22} {poly}   [{mark}]")
        lines.extend(f"{'':<22} note: {n}" for n in r.notes)
    failed = [r.name for r in reports if not (r.matches_r and r.matches_w and r.verdict)]
    lines.append("")
    lines.append(f"{len(reports) - len(failed)}/{len(reports)} rows reproduced")
    payload = {"rule": args.rule, "rows": [_report_json(r) for r in reports], "failed": failed}
    _emit(args, payload, _table_rows(reports), "\n".join(lines))
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_chain(args: argparse.Namespace, cache: PolyCache) -> int:
    t = replay_theorem_chain(check=False)
    payload = {
        "ok": t.ok,
        "steps": [
            {"step": s.index, "b_exponent": s.b_exponent, "r": s.r, "n_r": s.n_r,
             "cofactor": list(s.result.coeffs), "ok": s.ok}
            for s in t.steps
        ],
        "final_ll": t.final_ok,
    }
    rows = [{"step": s.index, "cofactor": format_poly(s.result), "ok": s.ok} for s in t.steps]
    _emit(args, payload, rows, "\n".join(t.lines))
    return EXIT_OK if t.ok else EXIT_VIOLATION


def cmd_verify(args: argparse.Namespace, cache: PolyCache) -> int:
    specs = read_manifest(args.manifest)
    reports = []
    for spec in specs:
        reports.append(
            verify_catalog(spec, jobs=args.jobs, cache=cache, sample=args.sample, full=args.full, seed=args.seed)
        )
    lines = []
    for r in reports:
        lines.append(
            f"{r.source}: parsed {r.parsed} (+{r.parse_errors} bad lines), filter {r.filter} kept {r.filtered}"
            + (f" (expected {r.expected_count})" if r.expected_count is not None else "")
        )
        lines.append(
            f"  checked {r.verified}{' (sample)' if r.sampled else ''}: {r.verified_strict} strict, "
            f"{r.equalities} equal, {len(r.pointwise_only)} uncertified, {len(r.violations)} violations, "
            f"{r.wall_time:.1f}s"
        )
        lines.extend(f"  violation: {g}" for g in r.violations)
    rows = [{k: v for k, v in r.to_dict().items() if not isinstance(v, (list, dict))} for r in reports]
    _emit(args, [r.to_dict() for r in reports], rows, "\n".join(lines))
    if any(r.violations or r.pointwise_only for r in reports):
        return EXIT_VIOLATION
    if any(not r.count_ok for r in reports):
        return EXIT_COUNT_MISMATCH
    return EXIT_OK


def cmd_extremal(args: argparse.Namespace, cache: PolyCache) -> int:
    g = extremal_family(args.n, args.seed)
    q = q_poly(g, cache)
    b = bound_poly(5, args.n)
    payload = {"graph6": to_graph6(g), "q": list(q.coeffs), "equal": q == b, "q_at_4": q(4)}
    text = f"{to_graph6(g)}\nQ(y) = {format_poly(q)}\nequals bound: {q == b}\nQ(4) = {q(4)}"
    _emit(args, payload, [{"graph6": payload["graph6"], "equal": q == b}], text)
    return EXIT_OK if q == b else EXIT_VIOLATION


def cmd_search(args: argparse.Namespace, cache: PolyCache) -> int:
    r = random_critical_search(args.n, args.trials, args.seed, cache)
    text = (
        f"n={args.n}: {r.parsed} trials, {r.filtered} connected 5-chromatic, "
        f"{r.verified_strict} strict, {r.equalities} equal, {len(r.violations)} violations ({r.wall_time:.1f}s)"
    )
    text += "".join(f"\nviolation: {g}" for g in r.violations)
    rows = [{k: v for k, v in r.to_dict().items() if not isinstance(v, (list, dict))}]
    _emit(args, r.to_dict(), rows, text)
    return EXIT_VIOLATION if r.violations else EXIT_OK


def cmd_small(args: argparse.Namespace, cache: PolyCache) -> int:
    rep = small_critical_check(args.max_n, args.criticality, args.catalog)
    lines = [f"criticality: {rep.criticality}"]
    for s in rep.slices:
        lines.append(f"n={s.n}: {s.status}, {len(s.graphs)} graphs, {len(s.violations)} violations")
    rows = [{"n": s.n, "status": s.status, "graphs": len(s.graphs), "violations": len(s.violations)} for s in rep.slices]
    _emit(args, rep.to_dict(), rows, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batch work")
    common.add_argument("--cache", default=None, help="append-only polynomial cache file")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="chromabound", description="Exact chromatic-polynomial bounds for 5-chromatic graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qpoly", parents=[common], help="print Q(y) = P(y+1) of a graph6 graph")
    p.add_argument("graph6")
    p.add_argument("--bound", type=int, metavar="K", help="also compare with the K-chromatic bound")
    p.set_defaults(func=cmd_qpoly)

    p = sub.add_parser("cmp", parents=[common], help="decide p1 <<_k p2 and the reverse")
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--k", type=int, default=4)
    p.set_defaults(func=cmd_cmp)

    for name, helptext in (("table1", "R(y) for all 5-vertex graphs"), ("table2", "W(z) for all 5-vertex graphs")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--rule", choices=[r.value for r in SlotRule], default=SlotRule.TABLE.value)
        p.add_argument("--strict-ties", action="store_true", help="fail instead of breaking ties between maxima")
        p.set_defaults(func=cmd_table)

    p = sub.add_parser("theorem-chain", parents=[common], help="replay the four single-vertex steps")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify-catalog", parents=[common], help="filter and verify graph6 catalogs")
    p.add_argument("--manifest", required=True)
    p.add_argument("--sample", type=int, default=DEFAULT_SAMPLE, help="stratified sample size")
    p.add_argument("--full", action="store_true", help="verify every filtered graph")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extremal", parents=[common], help="K_5 with trees attached")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("search", parents=[common], help="random connected 5-chromatic graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("small-critical", parents=[common], help="all small 5-critical graphs")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--criticality", choices=("vertex", "edge"), default="vertex")
    p.add_argument("--catalog", default=None, help="graph6 file of 5-critical graphs for orders above 7")
    p.set_defaults(func=cmd_small)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cache = PolyCache(args.cache)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(args, cache)
    except (OSError, Graph6Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        cache.flush()


if __name__ == "__main__":
    sys.exit(main())
