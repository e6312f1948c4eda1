"""Command-line interface.

Every command prints one JSON document on stdout (or a human-readable sketch
with --pretty) and exits 0 on success, 1 on a domain error (with a structured
error object), 2 on usage errors.  Output is deterministic: fixed key order,
no timestamps, thread-count independent.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import assembly, pointcount
from .arrangement import (
    LineArrangement,
    charpoly_value,
    comb_invariants,
    intersection_data,
    parse_arrangement,
    random_rational_arrangement,
    weak_comb_data,
)
from .errors import MilnorHodgeError
from .localhodge import OrdinarySing, local_hodge_table, local_spectrum
from .repring import HodgeTable

__all__ = ["main"]


def _load_arrangement(path: str) -> LineArrangement:
    return parse_arrangement(Path(path).read_text(encoding="utf-8"))


def _load_h3(path: str) -> assembly.SurfaceH3Data:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        return assembly.SurfaceH3Data(HodgeTable.from_json_dict(data, label="H3(X)"))
    except ValueError as exc:
        raise MilnorHodgeError(str(exc)) from exc


def _emit(payload: dict, pretty: bool, pretty_text: str | None = None) -> None:
    if pretty and pretty_text is not None:
        sys.stdout.write(pretty_text)
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _table_lines(table: HodgeTable) -> list[str]:
    lines = [f"  (p,q)            characters (index: mult)"]
    for (p, q), r in table.items():
        chars = ", ".join(f"{k}:{m}" for k, m in enumerate(r.mult) if m)
        lines.append(f"  ({p},{q})  dim {r.dim():>4}   {chars}")
    return lines


def _check_payload(checks) -> list[dict]:
    return [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in checks]


# ---------------------------------------------------------------------------
# command handlers


def _cmd_combinatorics(args) -> int:
    arr = _load_arrangement(args.arrangement)
    points = intersection_data(arr)
    w = weak_comb_data(arr)
    inv = comb_invariants(w)
    payload = {
        "arrangement": arr.describe(),
        "points": [
            {
                "point": list(pt.point) if isinstance(pt.point, tuple) else pt.point,
                "multiplicity": pt.multiplicity,
                "lines": sorted(pt.incident),
            }
            for pt in points
        ],
        "weak_data": {"d": w.d, "m": {str(k): n for k, n in w.m}},
        "invariants": {
            "b1M": inv.b1M,
            "b2M": inv.b2M,
            "chiM": inv.chiM,
            "chiF": inv.chiF,
            "charpoly": list(inv.charpoly),
        },
        "epoly_V": assembly.epoly_V(w).to_json_dict(),
    }
    text = (
        f"arrangement d={w.d}: {w.counts} multiple points\n"
        f"b1(M)={inv.b1M} b2(M)={inv.b2M} chi(M)={inv.chiM} chi(F)={inv.chiF}\n"
        f"charpoly={inv.charpoly}\n"
    )
    _emit(payload, args.pretty, text)
    return 0


def _cmd_local_hodge(args) -> int:
    sing = OrdinarySing(args.k, args.d)
    table = local_hodge_table(sing)
    payload = {
        "k": sing.k,
        "d": sing.d,
        "total_dimension": table.total(),
        "table": table.as_hodge_table().to_json_dict(),
        "spectrum": [str(e) for e in local_spectrum(sing)],
    }
    text = "\n".join(
        [f"local Hodge table for k={sing.k}, d={sing.d} (dim {table.total()})"]
        + _table_lines(table.as_hodge_table())
    ) + "\n"
    _emit(payload, args.pretty, text)
    return 0


def _cmd_fermat(args) -> int:
    table = assembly.fermat_surface_table(args.d)
    payload = {"d": args.d, "table": table.to_json_dict()}
    text = "\n".join([f"Fermat surface primitive H2, degree {args.d}"] + _table_lines(table)) + "\n"
    _emit(payload, args.pretty, text)
    return 0


def _cmd_spectrum(args) -> int:
    arr = _load_arrangement(args.arrangement)
    spec = assembly.spectrum(weak_comb_data(arr))
    payload = {"arrangement": arr.describe(), **spec.to_json_dict()}
    text = "\n".join(
        [f"spectrum, d={spec.d}, chi(F)={spec.chi_fiber}"]
        + [f"  m[{a}] = {m}" for a, m in spec.entries]
        + [f"  total = {spec.total()}"]
    ) + "\n"
    _emit(payload, args.pretty, text)
    return 0


def _cmd_h2f(args) -> int:
    arr = _load_arrangement(args.arrangement)
    h3 = _load_h3(args.h3x)
    report = assembly.assemble_all(arr, h3)
    payload = {
        "arrangement": arr.describe(),
        "h3x": h3.table.to_json_dict(),
        "H2_0X": report.h2x.to_json_dict(),
        "H1F": report.h1f.to_json_dict(),
        "H2F": report.h2f.to_json_dict(),
        "trivial": {f"H{j}": t.to_json_dict() for j, t in sorted(report.trivial.items())},
        "PX": report.px.to_json_dict(),
        "PcF": report.pcf.to_json_dict(),
        "spectrum": report.spec.to_json_dict(),
        "checks": _check_payload(report.checks),
        "all_pass": report.all_pass(),
    }
    text = "\n".join(
        ["H1(F), nontrivial characters:"]
        + _table_lines(report.h1f)
        + ["H2(F), nontrivial characters:"]
        + _table_lines(report.h2f)
        + [f"checks: {'all pass' if report.all_pass() else 'FAILURES'}"]
    ) + "\n"
    _emit(payload, args.pretty, text)
    # exit 1 is reserved for domain errors; failing consistency checks are
    # reported in the payload (the check command gates on them)
    return 0


def _parse_primes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise MilnorHodgeError(f"bad prime list {text!r}") from exc


def _count_payload(arr, args, extract: bool) -> dict:
    primes = _parse_primes(args.primes)
    tables = pointcount.count_tables(arr, primes, args.threads)
    d = arr.d
    fiber = args.target == "fiber"
    table_rows = []
    for t in tables:
        row = {
            "q": t.q,
            "generator": t.g,
            "class_counts": list(t.class_counts),
            "zero_count": t.zero_count,
        }
        if fiber:
            tw = pointcount.twisted_counts(t, d)
            row["twisted"] = [tw[j] for j in range(d)]
        else:
            row["complement"] = pointcount.complement_count(t)
        table_rows.append(row)

    fit = pointcount.fiber_fit(tables, d) if fiber else pointcount.complement_fit(tables, d)
    fit_payload = {
        "degree": fit.degree,
        "polynomial": fit.is_polynomial(),
        "per_twist": [
            None if coeffs is None else [str(c) for c in coeffs] for coeffs in fit.per_twist
        ],
        "witnesses": [[j, q] for j, q in fit.witnesses],
    }
    payload = {
        "arrangement": arr.describe(),
        "target": args.target,
        "primes": primes,
        "tables": table_rows,
        "fit": fit_payload,
    }
    if extract:
        if fit.is_polynomial():
            payload["epoly"] = pointcount.hodge_from_counts(fit, d).to_json_dict()
        else:
            payload["result"] = "not_polynomial_count"
            payload["witness"] = fit.first_witness()
    return payload


def _cmd_count(args) -> int:
    arr = _load_arrangement(args.arrangement)
    payload = _count_payload(arr, args, extract=False)
    verdict = "polynomial" if payload["fit"]["polynomial"] else "not polynomial"
    text = f"counted {args.target} at primes {payload['primes']}: fit is {verdict}\n"
    _emit(payload, args.pretty, text)
    return 0


def _cmd_hodge_from_counts(args) -> int:
    arr = _load_arrangement(args.arrangement)
    payload = _count_payload(arr, args, extract=True)
    if "epoly" in payload:
        text = "extracted diagonal Hodge-Deligne polynomial\n"
    else:
        text = f"counts not polynomial, witness prime {payload['witness']}\n"
    _emit(payload, args.pretty, text)
    return 0


def _cmd_check(args) -> int:
    arr = _load_arrangement(args.arrangement)
    checks: list[assembly.CheckResult] = []
    w = weak_comb_data(arr)
    inv = comb_invariants(w)
    checks.append(assembly.CheckResult("weak_data_pair_count", True, "census covers every line pair"))
    checks.append(
        assembly.CheckResult("chiF_multiplicativity", inv.chiF == w.d * inv.chiM, f"chiF={inv.chiF}")
    )
    for k, _ in w.m:
        sing = OrdinarySing(k, w.d)
        ok = local_hodge_table(sing).total() == sing.milnor_number
        checks.append(assembly.CheckResult(f"local_dimension_law_k{k}", ok))

    h3 = _load_h3(args.h3x) if args.h3x else None
    try:
        report = assembly.assemble_all(arr, h3)
        checks.extend(report.checks)
    except MilnorHodgeError as exc:
        checks.append(assembly.CheckResult("assembly", False, f"{exc.code}: {exc}"))

    rng = random.Random(args.seed)
    ok = True
    detail = ""
    for _ in range(5):
        sample = random_rational_arrangement(rng, rng.randint(3, 6))
        try:
            assembly.spectrum(weak_comb_data(sample))
        except MilnorHodgeError as exc:
            ok, detail = False, str(exc)
            break
    checks.append(assembly.CheckResult("random_weak_data_sum_rule", ok, detail))

    if args.primes:
        primes = _parse_primes(args.primes)
    else:
        primes = [f.p for f in pointcount.good_primes(arr, 2, min_q=3)]
    for q in primes:
        fast = pointcount.count_classes(arr, q)
        if q <= 50:
            brute = pointcount.brute_force_count(arr, q)
            agree = (
                fast.zero_count == brute.zero_count
                and fast.class_counts == brute.class_counts
                and pointcount.twisted_counts(fast, w.d) == pointcount.twisted_counts(brute, w.d)
            )
            checks.append(assembly.CheckResult(f"count_oracle_q{q}", agree))
        counted = pointcount.complement_count(fast)
        expected = charpoly_value(inv, q)
        checks.append(
            assembly.CheckResult(
                f"complement_charpoly_q{q}", counted == expected, f"{counted} vs {expected}"
            )
        )

    all_pass = all(c.passed for c in checks)
    payload = {
        "arrangement": arr.describe(),
        "checks": _check_payload(checks),
        "all_pass": all_pass,
    }
    text = "\n".join(
        f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
        for c in checks
    ) + ("\nall checks passed\n" if all_pass else "\nSOME CHECKS FAILED\n")
    _emit(payload, args.pretty, text)
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--threads", type=int, default=None, help="worker threads for counting")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized check suites")

    parser = argparse.ArgumentParser(
        prog="milnorhodge",
        description="Equivariant Hodge invariants of line-arrangement Milnor fibers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("combinatorics", parents=[common], help="intersection data and invariants")
    p.add_argument("--arrangement", required=True)
    p.set_defaults(func=_cmd_combinatorics)

    p = sub.add_parser("local-hodge", parents=[common], help="local Milnor fiber Hodge table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_local_hodge)

    p = sub.add_parser("fermat", parents=[common], help="Fermat surface reference table")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_fermat)

    p = sub.add_parser("spectrum", parents=[common], help="arrangement spectrum from weak data")
    p.add_argument("--arrangement", required=True)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("h2f", parents=[common], help="assembled fiber Hodge tables")
    p.add_argument("--arrangement", required=True)
    p.add_argument("--h3x", required=True, help="JSON file with H3(X) character data")
    p.set_defaults(func=_cmd_h2f)

    p = sub.add_parser("count", parents=[common], help="point counts over prime fields")
    p.add_argument("--arrangement", required=True)
    p.add_argument("--target", choices=("fiber", "complement"), required=True)
    p.add_argument("--primes", required=True, help="comma-separated primes, all 1 mod d")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser(
        "hodge-from-counts", parents=[common], help="extract the Hodge-Deligne polynomial"
    )
    p.add_argument("--arrangement", required=True)
    p.add_argument("--target", choices=("fiber", "complement"), required=True)
    p.add_argument("--primes", required=True)
    p.set_defaults(func=_cmd_hodge_from_counts)

    p = sub.add_parser("check", parents=[common], help="run the full consistency suite")
    p.add_argument("--arrangement", required=True)
    p.add_argument("--h3x", default=None)
    p.add_argument("--primes", default=None)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MilnorHodgeError as exc:
        sys.stdout.write(json.dumps({"error": exc.code, "message": str(exc)}, indent=2) + "\n")
        return 1
    except FileNotFoundError as exc:
        sys.stdout.write(json.dumps({"error": "file_not_found", "message": str(exc)}, indent=2) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
