"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import os
import subprocess
import sys
import time

import pytest

from cmtrace.catalog import all_records, catalog_lookup, conjugate, validate_record
from cmtrace.modint import is_prime
from cmtrace.numfield import FieldSpec, primes_above
from cmtrace.oracle import frobenius_on_C5
from cmtrace.rayclass import build_ray_context, ray_class_index
from cmtrace.trace import check_condition1, trace_at, trace_via_congruence_minus20
from cmtrace.verify import _factor_pattern, qualifying_primes, run_verify

from conftest import ACCEPTANCE_LINES

Q5 = FieldSpec("quadratic", 5)


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _cold(code):
    """Run code in a fresh interpreter so caches do not hide the real cost."""
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    return proc.stdout.split()


WORKED = """
import time
t = time.perf_counter()
from cmtrace.trace import frobenius_trace
vals = [frobenius_trace(-15, 61, 26).a, frobenius_trace(-15, 83).a, frobenius_trace(-32, 17, 11).a]
vals += [frobenius_trace(-235, p, r).a for p, r in ((239, 208), (241, 138), (719, 60), (251, 235), (431, 250))]
print(*vals, time.perf_counter() - t)
"""


def test_criterion1_worked_examples():
    *vals, dt = _cold(WORKED)
    got = [int(v) for v in vals]
    expected = [-2, 154, -6, -4, 27, 44, -8, -28]
    report(1, got == expected and float(dt) < 1.0, f"traces {got}, {float(dt):.2f}s (limit 1s)")


RAY = """
import time
t = time.perf_counter()
from cmtrace.numfield import Quad
from cmtrace.rayclass import build_ray_context
out = []
for case in (-20, -35, -40, -115, -235):
    ctx = build_ray_context(case)
    out.append(",".join(str(o) for o in ctx.generator_orders.values()) + ":" + str(ctx.index_pM))
ctx = build_ray_context(-235)
m = ctx.distinguished
anchors = [
    ctx.class_of(Quad(16, 1, 5), 69) == ctx.word_class({"k": 1, "l": 1}),
    ctx.class_of(Quad.half(43, 5, 5), 69) == ctx.word_class({"k": 1}),
    ctx.class_of(Quad.half(31, 1, 5), 69) == ctx.class_mul(m, ctx.word_class({"k": 1})),
]
print(*out, all(anchors), time.perf_counter() - t)
"""


def test_criterion2_ray_class_integrity():
    *cases, anchors, dt = _cold(RAY)
    expected = ["4,2:4", "12:4", "4,4,2:4", "132,2,2:4", "276,2,2:4"]
    ok = cases == expected and anchors == "True" and float(dt) < 60
    report(2, ok, f"orders:index {cases}, anchors {anchors}, {float(dt):.2f}s (limit 60s)")


def test_criterion3_catalog_self_validation():
    recs = all_records()
    bad = [r.d for r in recs if not validate_record(r).ok]
    report(3, not bad and len(recs) == 22, f"{len(recs)} records validated (-100 has no data), failures {bad}")


@pytest.fixture(scope="module")
def sweep():
    discs = [r.d for r in all_records()]
    t = time.perf_counter()
    rep = run_verify(discs, pmax=500, inert_pmax=200, jobs=min(4, os.cpu_count() or 1))
    return rep, time.perf_counter() - t


def _tally(outcomes):
    passed = sum(o.status == "pass" for o in outcomes)
    failed = [o for o in outcomes if o.status == "fail"]
    return passed, failed


def test_criterion4_oracle_sweep(sweep):
    rep, dt = sweep
    oracle = [o for o in rep.outcomes if o.check == "oracle"]
    passed, failed = _tally(oracle)
    conj = sum(o.conjugated for o in oracle)
    inert = sum(o.root is None for o in oracle)
    ok = not failed and passed == len(oracle) and conj > 0 and inert > 0
    report(4, ok, f"{passed} prime ideals agree ({conj} on conjugate curves, {inert} inert), "
                  f"{len(failed)} mismatches, {dt:.0f}s")  # fmt: skip


def test_criterion5_theorem1_and_factor_pattern(sweep):
    rep, _ = sweep
    thm = [o for o in rep.outcomes if o.check == "theorem1" and o.p < 300]
    pat = [o for o in rep.outcomes if o.check == "factor-pattern" and o.p < 300 and o.status != "skip"]
    tp, tf = _tally(thm)
    pp, pf = _tally(pat)
    skipped = sum(o.check == "factor-pattern" and o.p < 300 and o.status == "skip" for o in rep.outcomes)
    ok = not tf and not pf and tp > 0 and pp > 0
    report(5, ok, f"2r = a mod 5 on {tp} ideals; factor pattern on {pp} ideals with (v, s) = 1 "
                  f"({skipped} ideals with s | v tested separately)")  # fmt: skip


def _literal_pattern_counterexamples():
    bad, total = 0, 0
    for base in all_records():
        if base.s not in (3, 5) or base.kind != "quadratic":
            continue
        for rec in (base, conjugate(base)):
            for ps in qualifying_primes(rec, 300, 200):
                total += 1
                bad += not _factor_pattern(rec, ps)[0]
    return bad, total


@pytest.mark.xfail(strict=True, reason="the pattern needs (v, s) = 1; at s | v Frobenius is scalar on E[s]")
def test_criterion5_factor_pattern_without_coprimality():
    bad, total = _literal_pattern_counterexamples()
    line = f"criterion 5 (every qualifying prime, no coprimality): {total - bad}/{total} hold, {bad} counterexamples"
    ACCEPTANCE_LINES.append(line + "  [expected failure]")
    assert bad == 0, line


def test_criterion6_group_structure(sweep):
    rep, _ = sweep
    grp = [o for o in rep.outcomes if o.check == "group" and o.status != "skip" and o.p < 200 and o.root is not None]
    passed, failed = _tally(grp)
    report(6, not failed and passed > 0, f"gcd formula equals enumeration on {passed} ideals, {len(failed)} mismatches")


def _split_ideals(rec, bound):
    out = []
    for p in range(3, bound, 2):
        if is_prime(p) and p != 5:
            out += [ps for ps in primes_above(p, Q5) if ps.degree == 1]
    return [ps for ps in out if qualifying(rec, ps)]


def qualifying(rec, ps):
    return check_condition1(rec, ps.p, ps) is None


def test_criterion7_cross_path_agreement():
    rec20 = catalog_lookup(-20)
    n20, bad20 = 0, []
    for ps in _split_ideals(rec20, 2000):
        if ps.p % 20 not in (1, 9):
            continue
        a_cong = trace_via_congruence_minus20(ps.p, ps.root).a
        a_ray = trace_at(rec20, ps, "rayclass-s5").a
        n20 += 1
        if a_cong != a_ray:
            bad20.append(ps.p)
    n2, bad2 = 0, []
    for d in (-35, -115, -235):
        for rec in (catalog_lookup(d), conjugate(catalog_lookup(d))):
            for ps in _split_ideals(rec, 2000):
                if ps.q % 5 != 1:
                    continue
                n2 += 1
                if trace_at(rec, ps, "symbol-s5").a != trace_at(rec, ps, "rayclass-s5").a:
                    bad2.append((d, ps.p))
    ok = not bad20 and not bad2 and n20 > 0 and n2 > 0
    report(7, ok, f"-20 congruence vs ray class on {n20} ideals; residue-symbol vs ray class on {n2} ideals; "
                  f"mismatches {bad20 + bad2}")  # fmt: skip


def test_criterion8_parity():
    rec = catalog_lookup(-235)
    ctx = build_ray_context(-235)
    n, bad = 0, []
    for p in range(3, 2000, 2):
        if not is_prime(p) or p == 5:
            continue
        for ps in primes_above(p, Q5):
            if not qualifying(rec, ps):
                continue
            i = ray_class_index(ctx, ps)
            n += 1
            if (i % 2 == 0) != (ps.q % 5 == 1):
                bad.append(p)
    report(8, not bad and n > 0, f"i even iff q = 1 mod 5 on {n} ideals, exceptions {bad}")


def test_theorem1_examples_direct():
    # the worked ideals of the -235 curve, independent of the sweep
    rec = catalog_lookup(-235)
    for p, root in ((239, 208), (241, 138), (251, 235)):
        ps = next(q for q in primes_above(p, Q5) if q.root == root)
        assert (2 * frobenius_on_C5(rec, ps) - trace_at(rec, ps).a) % 5 == 0
