"""Command-line front end: sweeps, table reproduction, verification runs.

Exit codes: 0 success, 1 verification failure, 2 usage error (argparse),
3 illegal parameter or domain error, 4 internal consistency error.
All JSON/CSV output is deterministic for identical invocations.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import forms, norms, oracle, quadratic, verify
from .codifferent import monogenicity_certificate
from .errors import IndecompError, NonIntegralTrace, RefinementLimit
from .families import (
    indecomposables_ennola,
    indecomposables_simplest,
    indecomposables_thomas,
)
from .order_kernel import (
    Family,
    FieldSpec,
    OrderElement,
    isolate_roots,
    make_field,
    norm,
    unit_generators,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INTERNAL = 4

_FAMILIES = {
    "simplest": Family.SIMPLEST_CUBIC,
    "ennola": Family.ENNOLA,
    "thomas": Family.THOMAS,
}


def element_json(el: OrderElement) -> dict:
    return {
        "coords": list(el.coords),
        "family": el.field.family.value,
        "a": el.field.a,
    }


def codiff_json(delta) -> dict:
    return {"numerator": list(delta.numerator.coords), "denominator": "fprime"}


def _emit(payload: dict, args, rows=None, header=None) -> None:
    payload = {"schema": SCHEMA_VERSION, **payload}
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if getattr(args, "csv", None) and rows is not None:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            if header:
                writer.writerow(header)
            writer.writerows(rows)


def _field(args) -> FieldSpec:
    return make_field(_FAMILIES[args.family], args.a)


def cmd_field_info(args) -> int:
    field = _field(args)
    ri = isolate_roots(field)
    us = unit_generators(field)
    info = {
        "family": field.family.value,
        "a": field.a,
        "minpoly": list(field.minpoly),
        "discriminant": field.discriminant,
        "roots": [[str(iv.lo), str(iv.hi)] for iv in ri.intervals],
        "fundamental_units": [element_json(u) for u in us.fundamental],
        "totally_positive_units": [element_json(u) for u in us.totally_positive],
    }
    if field.family is Family.SIMPLEST_CUBIC:
        info["monogenic"] = monogenicity_certificate(field).value
        info["order"] = norms.monogenic_label(field.a)
    print(f"{field!r}")
    print(f"  discriminant: {info['discriminant']}")
    for key in ("monogenic", "order"):
        if key in info:
            print(f"  {key}: {info[key]}")
    print(f"  roots: {[f'[{lo}, {hi}]' for lo, hi in info['roots']]}")
    print(f"  fundamental units: {[u['coords'] for u in info['fundamental_units']]}")
    print(f"  totally positive units: {[u['coords'] for u in info['totally_positive_units']]}")
    _emit(info, args)
    return EXIT_OK


def cmd_indecomposables(args) -> int:
    field = _field(args)
    if field.family is Family.SIMPLEST_CUBIC:
        records = indecomposables_simplest(args.a)
    elif field.family is Family.ENNOLA:
        records = indecomposables_ennola(args.a)
    else:
        records = indecomposables_thomas(args.a)
    rows = []
    for rec in records:
        cert = ""
        if rec.certificate is not None:
            cert = f"trace {rec.certificate[1]}"
        rows.append(
            (rec.kind, *("%d" % c for c in rec.element.coords), norm(rec.element), cert)
        )
    print(f"{len(records)} indecomposable representatives for {field!r}")
    for row in rows:
        print("  " + " ".join(str(x) for x in row))
    payload = {
        "family": field.family.value,
        "a": field.a,
        "count": len(records),
        "records": [
            {
                "kind": rec.kind,
                "element": element_json(rec.element),
                "norm": norm(rec.element),
                "certificate": None
                if rec.certificate is None
                else {"delta": codiff_json(rec.certificate[0]), "trace": rec.certificate[1]},
            }
            for rec in records
        ],
    }
    ok = True
    if args.verify_oracle:
        inv = oracle.indecomposables_by_search(field)
        closed = sorted(r.element.coords for r in records if r.kind != "unit")
        found = sorted(e.coords for e in inv.indecomposables)
        ok = closed == found
        payload["oracle_match"] = ok
        print(f"oracle match: {ok}")
    _emit(payload, args, rows=rows, header=("kind", "v1", "v2", "v3", "norm", "certificate"))
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_min_trace(args) -> int:
    field = _field(args)
    coords = tuple(int(c) for c in args.elem.split(","))
    if len(coords) != 3:
        raise IndecompError("--elem expects v1,v2,v3")
    el = OrderElement(coords, field)
    result = oracle.min_trace(el, t_max=args.tmax)
    if result is None:
        print(f"min trace > {args.tmax}")
        _emit({"element": element_json(el), "t": None, "t_max": args.tmax}, args)
        return EXIT_OK
    t, witness = result
    print(f"min trace: {t}  witness numerator: {witness.numerator.coords}")
    _emit(
        {"element": element_json(el), "t": t, "witness": codiff_json(witness)},
        args,
    )
    return EXIT_OK


def cmd_count_norms(args) -> int:
    a, X = args.a, args.x
    if args.method == "fast":
        res = norms.count_fast(a, X, include_unit=args.include_unit)
        count = res.count
        extra = {"pairs": [[p.k, p.w] for p in res.pairs]}
    elif args.method == "exact":
        count = norms.count_exact(a, X, include_unit=args.include_unit)
        extra = {}
    else:
        count = norms.count_bruteforce(a, X, include_unit=args.include_unit)
        extra = {}
    print(f"P_{a}({X}) [{args.method}] = {count}")
    _emit({"a": a, "x": X, "method": args.method, "count": count, **extra}, args)
    return EXIT_OK


def _sq_row(a: int) -> tuple[int, int]:
    return a, norms.sq_count(a)


def cmd_sq_table(args) -> int:
    targets = [
        a
        for a in range(args.a_min, args.a_max + 1)
        if norms.certified_simplest(a)
    ]
    done: dict[int, int] = {}
    if args.resume and os.path.exists(args.resume):
        with open(args.resume) as fh:
            done = {int(k): v for k, v in json.load(fh).items()}
    todo = [a for a in targets if a not in done]
    threads = args.threads or int(os.environ.get("INDECOMP_THREADS", "1"))
    if threads > 1 and todo:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for a, sq in pool.map(_sq_row, todo):
                done[a] = sq
                _write_resume(args.resume, done)
    else:
        for a in todo:
            done[a] = norms.sq_count(a)
            _write_resume(args.resume, done)
    rows = [(a, done[a]) for a in targets]
    print("a,sq(a)")
    for a, sq in rows:
        print(f"{a},{sq}")
    _emit(
        {"a_min": args.a_min, "a_max": args.a_max, "rows": [[a, sq] for a, sq in rows]},
        args,
        rows=rows,
        header=("a", "sq"),
    )
    return EXIT_OK


def _write_resume(path, done) -> None:
    if not path:
        return
    with open(path, "w") as fh:
        json.dump({str(k): v for k, v in sorted(done.items())}, fh, indent=0)
        fh.write("\n")


def cmd_bounds(args) -> int:
    field = _field(args)
    rep = forms.rank_report(field)
    payload = {
        "family": rep.family,
        "a": rep.a,
        "n": rep.n,
        "m": rep.m,
        "s_count": rep.s_count,
        "upper_diag": rep.upper_diag,
        "lower_classical": rep.lower_classical,
        "lower_diag": rep.lower_diag,
        "lower_nonclassical": rep.lower_nonclassical,
        "lower_nonclassical_exact": rep.lower_nonclassical_exact,
    }
    for key, value in payload.items():
        print(f"{key}: {value}")
    _emit(payload, args)
    return EXIT_OK


def cmd_quadratic(args) -> int:
    D = args.d
    cf = quadratic.cf_expand(D)
    n, s_count = quadratic.quad_counts(D)
    payload = {
        "D": D,
        "u0": cf.u0,
        "period": list(cf.period),
        "n": n,
        "s_count": s_count,
    }
    print(f"xi_{D} = [{cf.u0}; {list(cf.period)} repeating], n = {n}, #S = {s_count}")
    ok = True
    if args.certify:
        certs = []
        for i in range(-1, 2 * cf.period_length, 2):
            try:
                delta = quadratic.trace_one_delta(D, i)
                certs.append({"i": i, "numerator": list(delta.numerator.coords), "ok": True})
            except IndecompError as exc:
                certs.append({"i": i, "ok": False, "error": str(exc)})
                ok = False
        record = quadratic.trace_one_delta_scalings(D, 1)
        payload["certificates"] = certs
        payload["scaling"] = {
            "passing": record["passing"],
            "literal_trace": record["literal_trace"],
        }
        print(f"certificates: {sum(c['ok'] for c in certs)}/{len(certs)} pass; "
              f"scaling resolution: {record['passing']} (literal pairs to {record['literal_trace']})")
    _emit(payload, args)
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    failed = False
    for res in results:
        print(res.line())
        failed = failed or not res.passed
    payload = {
        "suite": args.suite,
        "results": [
            {"name": r.name, "passed": r.passed, "details": r.details} for r in results
        ],
    }
    _emit(payload, args)
    return EXIT_VERIFY_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indecomp",
        description="Indecomposable integers, codifferent traces, small norms and "
        "universal form bounds in cubic and quadratic fields.",
        epilog="Exit codes: 0 ok, 1 verification failure, 2 usage, 3 domain error, "
        "4 internal error.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family(p):
        p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
        p.add_argument("--a", type=int, required=True)

    def add_exports(p):
        p.add_argument("--json", metavar="PATH", help="write JSON output")
        p.add_argument("--csv", metavar="PATH", help="write CSV output")

    p = sub.add_parser("field-info", help="minimal polynomial, roots, units")
    add_family(p)
    add_exports(p)
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("indecomposables", help="closed-form indecomposable inventory")
    add_family(p)
    p.add_argument("--verify-oracle", action="store_true",
                   help="cross-check against the exhaustive window search")
    add_exports(p)
    p.set_defaults(func=cmd_indecomposables)

    p = sub.add_parser("min-trace", help="minimal trace over the totally positive codifferent")
    add_family(p)
    p.add_argument("--elem", required=True, metavar="v1,v2,v3")
    p.add_argument("--tmax", type=int, default=10)
    add_exports(p)
    p.set_defaults(func=cmd_min_trace)

    p = sub.add_parser("count-norms", help="primitive principal ideals of norm <= X")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--method", choices=("fast", "exact", "brute"), default="exact")
    p.add_argument("--include-unit", action="store_true")
    add_exports(p)
    p.set_defaults(func=cmd_count_norms)

    p = sub.add_parser("sq-table", help="squarefree-norm counts over certified a")
    p.add_argument("--a-min", type=int, default=-1)
    p.add_argument("--a-max", type=int, default=50)
    p.add_argument("--threads", type=int, default=0,
                   help="worker processes (default: INDECOMP_THREADS or 1)")
    p.add_argument("--resume", metavar="PATH", help="JSON checkpoint of completed rows")
    add_exports(p)
    p.set_defaults(func=cmd_sq_table)

    p = sub.add_parser("bounds", help="universal quadratic form rank bounds")
    add_family(p)
    add_exports(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("quadratic", help="continued fraction data for Q(sqrt(D))")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--certify", action="store_true",
                   help="verify trace-one certificates over two periods")
    add_exports(p)
    p.set_defaults(func=cmd_quadratic)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all",
                   choices=sorted(verify.SUITES) + ["all"])
    add_exports(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NonIntegralTrace, RefinementLimit) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except IndecompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
