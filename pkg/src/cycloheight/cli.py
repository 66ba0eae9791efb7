"""Command-line front end.

Every subcommand emits CSV or JSON (--format), with deterministic ordering
and fixed JSON key order.  Exit status: 0 on success, 1 on a verification
mismatch, 2 on usage errors, 3 on budget violations, 4 on precondition
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import __version__
from .cache import CacheEntry, HeightCache
from .cyclotomic import (
    BudgetError,
    DEFAULT_COEFF_BUDGET,
    HeightReport,
    coefficients,
    height_report,
)
from .euler import constants
from .heightsets import (
    minimal_height_table,
    r_nonmembers,
    read_table_csv,
    verify_table,
    write_table_csv,
    TABLE_COLUMNS,
)
from .primes import andrica_ok, gap_summary, iter_gaps, sqrt_gap_ok
from .witnesses import g_scan, linnik_witness, verify_witness, with_wilms

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BUDGET = 3
EXIT_PRECONDITION = 4


def _report_dict(rep: HeightReport) -> dict:
    return {
        "n": rep.n,
        "factorization": [list(pe) for pe in rep.factorization],
        "degree": rep.degree,
        "A": rep.A,
        "Amax": rep.Amax,
        "Amin": rep.Amin,
        "k_first": rep.k_first,
        "sign_at_k": rep.sign_at_k,
        "span": rep.span,
        "coeff_set_size": rep.coeff_set_size,
        "optimal": rep.optimal,
        "ratio": rep.ratio,
        "exponent": rep.exponent,
    }


def bundled_table_path():
    return resources.files("cycloheight").joinpath("data/table1.csv")


def _cmd_coeffs(args) -> int:
    window = None
    if args.lo is not None or args.hi is not None:
        if args.lo is None or args.hi is None:
            raise ValueError("--lo and --hi must be given together")
        window = (args.lo, args.hi)
    seq = coefficients(args.n, window=window, budget=args.budget)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "n": seq.n,
                    "degree": seq.degree,
                    "lo": seq.lo,
                    "hi": seq.hi,
                    "coeffs": [int(v) for v in seq.coeffs],
                }
            )
        )
    else:
        print("index,value")
        for i, v in enumerate(seq.coeffs):
            print(f"{seq.lo + i},{int(v)}")
    return EXIT_OK


def _cmd_height(args) -> int:
    cache = HeightCache(args.cache) if args.cache else None
    if cache is not None:
        hit = cache.lookup(args.n)
        if hit is not None:
            rec = {
                "n": hit.n,
                "A": hit.A,
                "Amax": hit.Amax,
                "Amin": hit.Amin,
                "k_first": hit.k_first,
                "span": hit.span,
                "optimal": hit.optimal,
                "engine_version": hit.engine_version,
                "cached": True,
            }
            print(json.dumps(rec))
            return EXIT_OK
    rep = height_report(args.n, budget=args.budget)
    if cache is not None:
        cache.store(CacheEntry.from_report(rep))
    if args.format == "json":
        print(json.dumps(_report_dict(rep)))
    else:
        d = _report_dict(rep)
        del d["factorization"]
        print(",".join(d.keys()))
        print(",".join("" if v is None else str(v) for v in d.values()))
    return EXIT_OK


def _cmd_scan(args) -> int:
    ns = range(args.min, args.max + 1)
    if args.ternary:
        from .heightsets import ternary_stream

        ns = [n for n, _, _, _ in ternary_stream(args.max) if n >= args.min]
    rows = []
    for n in ns:
        if n < 2:
            continue
        rows.append(_report_dict(height_report(n, budget=args.budget)))
    if args.format == "json":
        for d in rows:
            print(json.dumps(d))
    else:
        cols = ["n", "A", "Amax", "Amin", "k_first", "span", "optimal"]
        print(",".join(cols))
        for d in rows:
            print(",".join("" if d[c] is None else str(d[c]) for c in cols))
    return EXIT_OK


def _cmd_atlas(args) -> int:
    if args.verify:
        rows = read_table_csv(args.verify)
        rep = verify_table(rows, scan_bound=args.scan_bound)
        return _emit_verification(rep, args.format)
    result = minimal_height_table(args.h_max, args.n_budget, threads=args.threads)
    if args.format == "json":
        for row in result.rows:
            print(
                json.dumps(
                    {
                        "height": row.h,
                        "p": row.p,
                        "q": row.q,
                        "r": row.r,
                        "k": row.k,
                        "sign": row.sign,
                        "diff": row.diff,
                        "diff_optimal": row.diff_optimal,
                        "ratio": row.ratio,
                        "exponent": row.exponent,
                    }
                )
            )
        if result.unresolved:
            print(json.dumps({"unresolved": result.unresolved}))
    else:
        print(",".join(TABLE_COLUMNS))
        for row in result.rows:
            ex = "" if row.exponent is None else f"{row.exponent:.3f}"
            sign = "+" if row.sign > 0 else "-"
            print(
                f"{row.h},{row.p},{row.q},{row.r},{row.k},{sign},{row.diff},"
                f"{int(row.diff_optimal)},{row.ratio:.3f},{ex}"
            )
        for h in result.unresolved:
            print(f"{h},,,,,,,,,")
    return EXIT_OK


def _emit_verification(rep, fmt: str) -> int:
    if fmt == "json":
        print(
            json.dumps(
                {
                    "rows_checked": rep.rows_checked,
                    "mismatches": [
                        {
                            "height": m.h,
                            "field": m.field,
                            "expected": m.expected,
                            "actual": m.actual,
                        }
                        for m in rep.mismatches
                    ],
                    "height_bound_ok": rep.height_bound_ok,
                    "ok": rep.ok,
                }
            )
        )
    else:
        for m in rep.mismatches:
            print(f"mismatch,{m.h},{m.field},{m.expected},{m.actual}")
        print(f"rows_checked,{rep.rows_checked}")
        print(f"ok,{int(rep.ok)}")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def _cmd_rset(args) -> int:
    variant = "pm" if args.pm else "central"
    nm = r_nonmembers(args.max, variant=variant)
    if args.format == "json":
        print(json.dumps({"max": args.max, "variant": variant, "nonmembers": nm}))
    else:
        for h in nm:
            print(h)
    return EXIT_OK


def _cmd_gaps(args) -> int:
    if args.format == "json":
        summary = gap_summary(args.max, scale=args.scale)
        print(
            json.dumps(
                {
                    "x": summary.x,
                    "e_sum": summary.e_sum,
                    "hb_sum": summary.hb_sum,
                    "yu_sum": summary.yu_sum,
                    "exception_count": summary.exception_count,
                }
            )
        )
    else:
        print("p,p_next,d,sqrt_gap_ok,andrica_ok")
        for g in iter_gaps(args.max):
            print(
                f"{g.p},{g.p_next},{g.d},{int(sqrt_gap_ok(g.p, g.d))},"
                f"{int(andrica_ok(g.p, g.p_next))}"
            )
    return EXIT_OK


def _cmd_witness(args) -> int:
    if args.linnik:
        w, exponent = linnik_witness(args.h, r_cap=args.r_cap)
    else:
        w = with_wilms(args.h, p_cap=args.p_cap, r_cap=args.r_cap)
        exponent = None
    if w.r is not None:
        w = verify_witness(w, coeff_budget=args.verify_budget)
        if exponent is None and w.p is not None:
            import math

            exponent = math.log(w.p * w.q * w.r) / math.log(w.h)
    print(
        json.dumps(
            {
                "h": w.h,
                "p": w.p,
                "q": w.q,
                "pq": w.pq,
                "r1": w.r1,
                "r": w.r,
                "verified": w.verified,
                "exponent": exponent,
            }
        )
    )
    return EXIT_OK if w.verified != "unresolved" else EXIT_PRECONDITION


def _cmd_gset(args) -> int:
    records, density = g_scan(args.max, threads=args.threads)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "max": args.max,
                    "density": density,
                    "records": [[rec.m, rec.p] for rec in records],
                }
            )
        )
    else:
        print("m,p")
        for rec in records:
            print(f"{rec.m},{'' if rec.p is None else rec.p}")
    return EXIT_OK


def _cmd_constants(args) -> int:
    rep = constants(args.cutoff)
    print(
        json.dumps(
            {
                "cutoff": rep.cutoff,
                "C1": mp_str(rep.C1),
                "C2": mp_str(rep.C2),
                "c_prime": mp_str(rep.c_prime),
                "tail_bound": rep.tail_bound,
            }
        )
    )
    return EXIT_OK


def mp_str(v) -> str:
    import mpmath

    return mpmath.nstr(v, 25)


def _cmd_verify_table1(args) -> int:
    path = args.table if args.table else bundled_table_path()
    rows = read_table_csv(path)
    rep = verify_table(rows, scan_bound=args.scan_bound)
    return _emit_verification(rep, args.format)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cycloheight")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("coeffs", help="coefficient window of one polynomial")
    p.add_argument("n", type=int)
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_COEFF_BUDGET)
    add_common(p)
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("height", help="height report of one polynomial")
    p.add_argument("n", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_COEFF_BUDGET)
    p.add_argument("--cache")
    add_common(p)
    p.set_defaults(func=_cmd_height)

    p = sub.add_parser("scan", help="height reports over a range of n")
    p.add_argument("--min", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--ternary", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_COEFF_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    add_common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("atlas", help="minimal ternary n per height")
    p.add_argument("--h-max", type=int, default=40)
    p.add_argument("--n-budget", type=int, default=10**7)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--verify", help="verify a table CSV instead of searching")
    p.add_argument("--scan-bound", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_atlas)

    p = sub.add_parser("rset", help="heights without a set witness")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--pm", action="store_true", help="use the plus/minus families")
    add_common(p)
    p.set_defaults(func=_cmd_rset)

    p = sub.add_parser("gaps", help="prime-gap predicates and sums")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--scale", type=float, default=1.0)
    add_common(p)
    p.set_defaults(func=_cmd_gaps)

    p = sub.add_parser("witness", help="construct a ternary witness for odd h")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--p-cap", type=int, default=10**6)
    p.add_argument("--r-cap", type=int, default=10**6)
    p.add_argument("--verify-budget", type=int, default=DEFAULT_COEFF_BUDGET)
    p.add_argument("--linnik", action="store_true", help="progression-search route")
    add_common(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("gset", help="least witnessing prime per m")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    add_common(p)
    p.set_defaults(func=_cmd_gset)

    p = sub.add_parser("constants", help="Euler-product constants report")
    p.add_argument("--cutoff", type=int, default=10**6)
    add_common(p)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("verify-table1", help="verify the bundled table")
    p.add_argument("--table", help="alternate CSV path")
    p.add_argument("--scan-bound", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_verify_table1)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
