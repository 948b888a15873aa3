"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 unsupported input or failed precondition,
3 integrity mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .catalog import (
    SUPPORTED_DISCRIMINANTS,
    UnsupportedDiscriminant,
    all_records,
    catalog_lookup,
    conjugate,
    export_json,
    export_tsv,
    validate_record,
)
from .numfield import BadReduction, UnsupportedPrime, format_element, ideal_generator, prime_spec
from .oracle import GROUP_BOUND, OracleBoundExceeded, brute_group_structure, count_points, reduce_curve
from .rayclass import RAY_CASES, RayClassIntegrityError, build_ray_context, ray_class_index
from .trace import METHODS, ConditionViolation, TraceIntegrityError, trace_at
from .verify import CHECKS, run_verify

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_INTEGRITY = 0, 1, 2, 3
INT64_MAX = 2**63 - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def json_int(n: int):
    """Integers beyond the signed 64-bit range become decimal strings."""
    return n if -INT64_MAX - 1 <= n <= INT64_MAX else str(n)


def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def trace_payload(res) -> dict:
    return {
        "disc": res.d,
        "p": json_int(res.p),
        "root": res.root,
        "ell": res.ell,
        "q": json_int(res.q),
        "u": json_int(res.u),
        "v": json_int(res.v),
        "epsilon": res.epsilon,
        "a": json_int(res.a),
        "N": json_int(res.N),
        "alpha": json_int(res.alpha),
        "beta": json_int(res.beta),
        "group": [json_int(res.group[0]), json_int(res.group[1])],
        "method": res.method,
    }


def _record(args):
    rec = catalog_lookup(args.disc)
    return conjugate(rec) if getattr(args, "conjugate", False) else rec


def _prime(args, rec):
    if args.prime < 3 or args.prime % 2 == 0:
        raise UsageError("prime must be odd")
    if rec.field.is_ramified(args.prime):
        raise ConditionViolation(f"{args.prime} ramifies in {rec.field}")
    try:
        return prime_spec(args.prime, rec.field, args.root)
    except UnsupportedPrime:
        raise
    except ValueError as exc:
        raise ConditionViolation(str(exc)) from None


def cmd_catalog(args) -> int:
    if args.action == "export":
        out = export_json() if args.format == "json" else export_tsv()
        sys.stdout.write(out if out.endswith("\n") else out + "\n")
        return EXIT_OK
    if args.action == "validate":
        bad = 0
        for rec in all_records():
            rep = validate_record(rec)
            bad += not rep.ok
            status = "ok" if rep.ok else "FAIL " + ",".join(rep.failures())
            print(f"{rec.d:>5}  {status}")
        return EXIT_INTEGRITY if bad else EXIT_OK
    recs = [catalog_lookup(args.disc)] if args.disc is not None else all_records()
    for rec in recs:
        print(f"d={rec.d}  m={rec.m} f0={rec.f0} f={rec.f} s={rec.s}  F={rec.field}")
        print(f"    A = {format_element(rec.A)}")
        print(f"    B = {format_element(rec.B)}")
    return EXIT_OK


def cmd_trace(args) -> int:
    rec = _record(args)
    ps = _prime(args, rec)
    res = trace_at(rec, ps, args.method)
    if args.json:
        print(render_json(trace_payload(res)))
    else:
        print(f"d = {res.d}, prime {ps} (ell = {res.ell}, q = {res.q})")
        print(f"4q = u^2 + {rec.mf2} v^2 with u = {res.u}, v = {res.v}")
        print(f"epsilon = {res.epsilon:+d} via {res.method}")
        print(f"a = {res.a}, N = {res.N}")
        print(f"group Z/{res.group[0]} + Z/{res.group[1]}  (alpha = {res.alpha}, beta = {res.beta})")
    return EXIT_OK


def cmd_count(args) -> int:
    rec = _record(args)
    ps = _prime(args, rec)
    try:
        E = reduce_curve(rec, ps)
    except BadReduction as exc:
        raise ConditionViolation(str(exc)) from None
    N = count_points(E)
    out = {"disc": rec.d, "p": ps.p, "root": ps.root, "ell": ps.degree, "q": json_int(ps.q),
           "N": json_int(N), "a": json_int(ps.q + 1 - N)}  # fmt: skip
    if ps.p < GROUP_BOUND[ps.degree]:
        out["group"] = list(brute_group_structure(E))
    if args.json:
        print(render_json(out))
    else:
        extra = f", group Z/{out['group'][0]} + Z/{out['group'][1]}" if "group" in out else ""
        print(f"#E(F_{ps.q}) = {N}, a = {ps.q + 1 - N}{extra}")
    return EXIT_OK


def cmd_rayclass(args) -> int:
    if args.disc not in RAY_CASES:
        raise UnsupportedDiscriminant(f"no ray class data for discriminant {args.disc}")
    t0 = time.perf_counter()
    ctx = build_ray_context(args.disc)
    dt = time.perf_counter() - t0
    inf = " with the conjugate real place" if ctx.infinite else ""
    print(f"modulus ({ctx.c}*sqrt(5)){inf}; |P| = {ctx.order}; unit image of size {len(ctx.unit_image)}")
    for name, gen, claimed in ctx.generators:
        print(f"  {name:3} = ({format_element(gen)})  order {ctx.generator_orders[name]} (expected {claimed})")
    print(f"  [P : P_M] = {ctx.index_pM}; exponent k = {ctx.k}; base g = {ctx.base}")
    print(f"integrity checks passed in {dt:.2f}s")
    if args.prime is not None:
        rec = catalog_lookup(args.disc)
        ps = _prime(args, rec)
        i = ray_class_index(ctx, ps)
        cls = ctx.class_of(ideal_generator(ps), ctx.k)
        print(f"prime {ps}: class of p^{ctx.k} = {ctx.describe(cls)}, index i = {i}")
    return EXIT_OK


def cmd_verify(args) -> int:
    discs = SUPPORTED_DISCRIMINANTS if args.all else (args.disc,)
    t0 = time.perf_counter()
    report = run_verify(discs, args.pmax, args.inert_pmax, args.jobs, conjugates=not args.no_conjugates)
    dt = time.perf_counter() - t0
    mat = report.matrix()
    print(f"{'curve':>10}  " + "  ".join(f"{c:>15}" for c in CHECKS))
    for (d, conj), row in sorted(mat.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
        label = f"{d}{'*' if conj else ''}"
        cells = []
        for c in CHECKS:
            cnt = row.get(c)
            if not cnt:
                cells.append(f"{'-':>15}")
            else:
                cells.append(f"{cnt['pass']}/{cnt['fail']}/{cnt['skip']:<3}".rjust(15))
        print(f"{label:>10}  " + "  ".join(cells))
    counts = report.counts()
    print(f"pass {counts['pass']}, fail {counts['fail']}, skip {counts['skip']} in {dt:.1f}s  "
          "(cells: pass/fail/skip, * = conjugate curve)")  # fmt: skip
    for o in report.failures()[:20]:
        print(f"FAIL d={o.d}{'*' if o.conjugated else ''} p={o.p} root={o.root} {o.check}: {o.detail}")
    return EXIT_OK if report.ok else EXIT_INTEGRITY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmtrace", description="Signed Frobenius traces of CM curves with class number 2 and 3.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="list, validate or export the curve catalog")
    p.add_argument("action", nargs="?", choices=("list", "export", "validate"), default="list")
    p.add_argument("--format", choices=("tsv", "json"), default="json")
    p.add_argument("--disc", type=int)
    p.set_defaults(func=cmd_catalog)

    def prime_args(sp):
        sp.add_argument("--disc", type=int, required=True)
        sp.add_argument("--prime", type=int, required=True)
        sp.add_argument("--root", type=int, help="image of the field generator mod p (degree-1 primes)")
        sp.add_argument("--conjugate", action="store_true", help="use the conjugate curve")
        sp.add_argument("--json", action="store_true")

    p = sub.add_parser("trace", help="signed trace, point count and group structure from the criteria")
    prime_args(p)
    p.add_argument("--method", choices=METHODS)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("count", help="brute-force point count of the reduced curve")
    prime_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("rayclass", help="ray class group integrity checks for Q(sqrt 5)")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--root", type=int)
    p.set_defaults(func=cmd_rayclass)

    p = sub.add_parser("verify", help="sweep primes against the brute-force oracles")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--disc", type=int, choices=SUPPORTED_DISCRIMINANTS, metavar="D")
    g.add_argument("--all", action="store_true")
    p.add_argument("--pmax", type=int, default=500)
    p.add_argument("--inert-pmax", type=int, default=200)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-conjugates", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and (args.pmax > 500 or args.inert_pmax > 200):
        parser.error("--pmax is capped at 500 and --inert-pmax at 200 (brute-force bounds)")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedDiscriminant, UnsupportedPrime, ConditionViolation, OracleBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (TraceIntegrityError, RayClassIntegrityError) as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY


if __name__ == "__main__":
    sys.exit(main())
