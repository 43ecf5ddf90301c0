"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 domain error,
3 method disagreement, 4 factoring budget exhausted.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time

from . import __version__
from .bigarith import DomainError, FactorCache, FactoringBudgetExceeded, factor, is_prime
from .cyclofield import cyclotomic_poly, format_poly, make_field
from .primroots import (
    NoPrimitiveRootError,
    generate_table,
    inert_prime_exists,
    least_inert_prime_direct,
    least_primitive_root,
    progression_prime,
    two_m_reduction,
)
from .swan import MethodDisagreement, load_reference_tables, swan_order, verify_reference_tables
from .units import enumerate_generators, image_of_generator, reduced_generator_set

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_DOMAIN, EXIT_DISAGREE, EXIT_BUDGET = 0, 1, 2, 3, 4

log = logging.getLogger("cycloswan")


def _emit(out, fmt: str, command: str, doc, rows: list[dict], text: str) -> None:
    if fmt == "json":
        out.write(json.dumps({"command": command, "result": doc}, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _cache(args) -> FactorCache | None:
    path = getattr(args, "cache", None) or os.environ.get("SWAN_CACHE")
    return FactorCache(path) if path else None


# -- primroot ----------------------------------------------------------------

def cmd_primroot(args, out) -> int:
    if args.table:
        mode = "table22" if args.table == "22" else "table24"
        records = generate_table(range(3, args.max_m + 1), mode)
        if mode == "table22":
            rows = [{"m": r.m, "r": r.least_primitive_root, "p": r.inert_prime} for r in records]
        else:
            rows = [{"m": r.m, "p": r.inert_prime} for r in records]
        text = "\n".join("  ".join(f"{k}={v}" for k, v in row.items()) for row in rows)
        _emit(out, args.format or "csv", "primroot", {"table": args.table, "rows": rows}, rows, text)
        return EXIT_OK

    if args.m is None:
        raise DomainError("give m or --table")
    m = args.m
    if m < 3 or not inert_prime_exists(m):
        raise NoPrimitiveRootError(m)
    r = least_primitive_root(m)
    doc = {
        "m": m,
        "least_primitive_root": r,
        "progression_prime": progression_prime(m, r),
        "direct_prime": least_inert_prime_direct(m),
        "two_m_reduction": None,
    }
    fac = factor(m)
    if len(fac) == 1 and fac.primes[0] != 2:
        doc["two_m_reduction"] = two_m_reduction(m)
    lines = [
        f"m = {m}",
        f"least primitive root r = {r}",
        f"progression prime (first prime = r mod m) = {doc['progression_prime']}",
        f"least inert prime, direct scan = {doc['direct_prime']}",
    ]
    if doc["two_m_reduction"] is not None:
        lines.append(f"least primitive root mod 2m = {doc['two_m_reduction']}")
    _emit(out, args.format or "text", "primroot", doc, [doc], "\n".join(lines))
    return EXIT_OK


# -- swan --------------------------------------------------------------------

def cmd_swan(args, out) -> int:
    start = time.perf_counter()
    res = swan_order(args.m, args.p, method=args.method, budget=args.time_budget,
                     seed=args.seed, cache=_cache(args))
    elapsed = time.perf_counter() - start
    doc = res.as_dict()
    half = (res.p - 1) // 2
    lines = [
        f"m = {res.m}, p = {res.p}",
        f"N = p^phi(m) - 1 = {res.group_order}",
        f"subgroup order |h(units)| = {res.subgroup_order}",
        f"cokernel order = {res.cokernel_order}",
        f"exactness = {res.exactness.value}",
        f"method = {res.method.value}",
        f"coprimality gcd(cokernel, (p-1)/2 = {half}) = {res.coprimality_gcd}",
        f"torsion sensitive = {'yes' if res.torsion_sensitive else 'no'}"
        f" (without roots of unity: {res.subgroup_order_without_torsion})",
    ]
    if not res.complete:
        lines.append("INCOMPLETE: factoring budget exhausted; subgroup order is a lower bound, "
                     "cokernel an upper bound")
        lines.append("unfactored cofactor(s): " + ", ".join(map(str, res.unfactored)))
    _emit(out, args.format or "text", "swan", doc, [doc], "\n".join(lines))
    # Timing goes to stderr so stdout stays reproducible.
    print(f"wall time: {elapsed:.3f} s", file=sys.stderr)
    return EXIT_OK if res.complete else EXIT_BUDGET


# -- verify ------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    tables = load_reference_tables(args.tables) if args.tables else None
    report = verify_reference_tables(max_m=args.max_m, time_budget=args.time_budget,
                                     tables=tables, seed=args.seed, cache=_cache(args))
    rows = [r.as_dict() for r in report.rows]
    lines = []
    for r in report.rows:
        p = "" if r.p is None else f" p={r.p}"
        line = f"[{r.status:>10}] table {r.table:<7} m={r.m}{p}  expected {r.expected}"
        if r.computed:
            line += f"  computed {r.computed}"
        if r.coprimality_gcd is not None:
            line += f"  gcd={r.coprimality_gcd}"
        if r.note:
            line += f"  ({r.note})"
        lines.append(line)
    flagged = report.flagged()
    if flagged:
        lines.append("")
        lines.append("!! COPRIMALITY DIAGNOSTIC: cokernel orders not coprime to (p-1)/2 !!")
        for r in flagged:
            lines.append(f"!!   ({r.m}, {r.p}): gcd = {r.coprimality_gcd}; {r.note}")
    counts = report.counts()
    lines.append("")
    lines.append("summary: " + ", ".join(f"{k}={counts[k]}" for k in sorted(counts))
                 + ("  -> OK" if report.ok else "  -> FAILED"))
    doc = {"ok": report.ok, "counts": counts, "rows": rows,
           "coprimality_flags": [r.as_dict() for r in flagged]}
    _emit(out, args.format or "text", "verify", doc, rows, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


# -- factor / cyclopoly / units -----------------------------------------------

def cmd_factor(args, out) -> int:
    n = int(args.n)
    try:
        fac = factor(n, budget=args.time_budget, seed=args.seed, cache=_cache(args))
        cofactors: list[int] = []
    except FactoringBudgetExceeded as exc:
        fac, cofactors = exc.partial, exc.cofactors
    rows = [{"prime": str(q), "exponent": e} for q, e in fac]
    doc = {"n": str(n), "factors": rows, "complete": not cofactors,
           "unfactored": [str(c) for c in cofactors]}
    text = f"{n} = {fac}" + "".join(f" * ({c})" for c in cofactors)
    if cofactors:
        text += "\nINCOMPLETE: budget exhausted"
    _emit(out, args.format or "text", "factor", doc, rows, text)
    return EXIT_BUDGET if cofactors else EXIT_OK


def cmd_cyclopoly(args, out) -> int:
    poly = cyclotomic_poly(args.m)
    if args.mod is not None:
        if not is_prime(args.mod):
            raise DomainError(f"{args.mod} is not prime")
        poly = poly.reduce(args.mod)
    coeffs = list(poly.coeffs)
    doc = {"m": args.m, "mod": args.mod, "coefficients": coeffs, "text": format_poly(coeffs)}
    text = f"coefficients (ascending): {coeffs}\n{format_poly(coeffs)}"
    rows = [{"degree": k, "coefficient": c} for k, c in enumerate(coeffs)]
    _emit(out, args.format or "text", "cyclopoly", doc, rows, text)
    return EXIT_OK


def cmd_units(args, out) -> int:
    m, p = args.m, args.p
    gens = reduced_generator_set(m, p) if args.reduced else enumerate_generators(m, p)
    fld = make_field(m, p, budget=args.time_budget, seed=args.seed, cache=_cache(args),
                     allow_partial=True) if args.images else None
    rows = []
    for g in gens:
        row = {"kind": g.kind.name.lower(), "d": g.d, "a": g.a, "unit": str(g)}
        if fld is not None:
            x = image_of_generator(g, fld)
            row["image"] = " ".join(map(str, x.coeffs))
            row["order"] = str(x.order() if fld.complete else x.partial_order())
        rows.append(row)
    lines = [f"{len(gens)} generators for n = {m * p}" + (" (reduced)" if args.reduced else "")]
    for row in rows:
        line = f"  {row['unit']}"
        if fld is not None:
            line += f"  ->  [{row['image']}]  order {row['order']}"
        lines.append(line)
    doc = {"m": m, "p": p, "reduced": args.reduced, "count": len(gens), "generators": rows}
    _emit(out, args.format or "text", "units", doc, rows, "\n".join(lines))
    return EXIT_OK if fld is None or fld.complete else EXIT_BUDGET


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycloswan",
                                     description="Swan subgroup orders for cyclotomic fields with inert primes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, budget=True, cache=True):
        sp.add_argument("--format", choices=("text", "json", "csv"))
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized primality/factoring")
        if budget:
            sp.add_argument("--time-budget", type=float, metavar="SECONDS")
        if cache:
            sp.add_argument("--cache", metavar="PATH", help="factorization cache (default $SWAN_CACHE)")

    sp = sub.add_parser("primroot", help="primitive roots and least inert primes")
    sp.add_argument("m", type=int, nargs="?")
    sp.add_argument("--table", choices=("22", "24"))
    sp.add_argument("--max-m", type=int, default=100)
    common(sp, budget=False, cache=False)
    sp.set_defaults(func=cmd_primroot)

    sp = sub.add_parser("swan", help="cokernel order for (m, p)")
    sp.add_argument("m", type=int)
    sp.add_argument("p", type=int)
    sp.add_argument("--method", choices=("full", "reduced", "both"))
    common(sp)
    sp.set_defaults(func=cmd_swan)

    sp = sub.add_parser("verify", help="recompute the embedded reference tables")
    sp.add_argument("--max-m", type=int, default=37)
    sp.add_argument("--tables", metavar="PATH", help="alternate reference-table JSON")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("factor", help="factor an integer")
    sp.add_argument("n")
    common(sp)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("cyclopoly", help="print the m-th cyclotomic polynomial")
    sp.add_argument("m", type=int)
    sp.add_argument("--mod", type=int, metavar="P")
    common(sp, budget=False, cache=False)
    sp.set_defaults(func=cmd_cyclopoly)

    sp = sub.add_parser("units", help="list cyclotomic-unit generators for n = mp")
    sp.add_argument("m", type=int)
    sp.add_argument("p", type=int)
    sp.add_argument("--reduced", action="store_true")
    sp.add_argument("--images", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_units)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except MethodDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except FactoringBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
