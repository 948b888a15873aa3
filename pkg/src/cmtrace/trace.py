"""Signed Frobenius traces of the catalog curves without point counting.

|a| comes from 4q = u^2 + m f^2 v^2; the sign is fixed by a congruence mod s:
a residue symbol of alpha_E for s = 3, 4, and for s = 5 either the character
of h at a reduced root of H_1 or a ray class of Q(sqrt 5).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from math import gcd

from .catalog import CurveRecord, catalog_lookup, has_good_reduction
from .divpoly import h1_polynomial
from .ffield import quadratic_character, quadratic_roots
from .modint import cornacchia_4q, is_prime, legendre_symbol
from .numfield import (
    FieldSpec,
    PrimeSpec,
    Quad,
    UnsupportedPrime,
    ideal_generator,
    prime_spec,
    reduce_element,
    residue_symbol,
)
from .rayclass import build_ray_context, ray_class_index

METHODS = ("symbol-s3", "symbol-s4", "symbol-s5", "rayclass-s5", "congruence-minus20")


class ConditionViolation(ValueError):
    """The prime fails the standing hypothesis (splitting, conductor, good reduction)."""


class TraceIntegrityError(ArithmeticError):
    """An internal consistency check failed; the result would be wrong."""


@dataclass(frozen=True)
class TraceResult:
    d: int
    p: int
    ell: int
    q: int
    root: int | None
    u: int
    v: int
    epsilon: int
    a: int
    N: int
    alpha: int
    beta: int
    d_group: int
    group: tuple[int, int]
    method: str

    def as_dict(self) -> dict:
        return asdict(self)


def _field_prime(rec: CurveRecord, p: int, root: int | None) -> PrimeSpec:
    if p % 2 == 0:
        raise ConditionViolation("prime must be odd")
    if not is_prime(p):
        raise ConditionViolation(f"{p} is not prime")
    if rec.field.is_ramified(p):
        raise ConditionViolation(f"p ramifies in {rec.field}")
    return prime_spec(p, rec.field, root)


def check_condition1(rec: CurveRecord, p: int, ps: PrimeSpec) -> str | None:
    """None when p splits in Q(sqrt -m), p does not divide f and E reduces well at ps;
    otherwise the first violated clause."""
    if p % 2 == 0:
        return "prime must be odd"
    if ps.p != p:
        return f"{ps} does not lie over {p}"
    sym = legendre_symbol(-rec.m, p)
    if sym == 0:
        return "p divides f*m or ramifies in K"
    if sym == -1:
        return "p is inert in K"
    if rec.f % p == 0:
        return "p divides f"
    if not has_good_reduction(rec, ps):
        return "bad reduction at the prime"
    return None


def _solve_sign(u: int, target: int, s: int) -> int:
    """The unique eps in {+1, -1} with eps*u == target (mod s)."""
    ok = [eps for eps in (1, -1) if (eps * u - target) % s == 0]
    if len(ok) != 1:
        raise TraceIntegrityError(f"no unique sign: u={u}, target={target} mod {s}")
    return ok[0]


def group_structure(a: int, u: int, v: int, rec: CurveRecord, q: int | None = None) -> tuple[int, int, int, int]:
    """(d1, d2, alpha, beta) for phi = (a + b sqrt D)/2, D = d, 4q = a^2 + |D| b^2.

    E(F_q) = Z/d1 + Z/d2 with d2 = gcd(alpha - 1, beta), alpha = (a - bD)/2, beta = b.
    """
    D = rec.d
    if abs(D) == rec.mf2:
        b = v
    elif abs(D) == 4 * rec.mf2:
        if v % 2:
            raise TraceIntegrityError(f"v = {v} must be even for d = {D}")
        b = v // 2
    else:
        raise TraceIntegrityError(f"|d| = {abs(D)} is neither mf^2 nor 4mf^2")
    if (a - b * D) % 2:
        raise TraceIntegrityError("Frobenius is not in the order (parity)")
    four_q = a * a + abs(D) * b * b
    if q is not None and four_q != 4 * q:
        raise TraceIntegrityError("4q != a^2 + |d| b^2")
    N = four_q // 4 + 1 - a
    alpha, beta = (a - b * D) // 2, b
    d2 = gcd(alpha - 1, beta)
    if N % (d2 * d2):
        raise TraceIntegrityError(f"d2^2 = {d2 * d2} does not divide N = {N}")
    return N // d2, d2, alpha, beta


def _sign_symbol(rec: CurveRecord, ps: PrimeSpec, u: int) -> tuple[int, str]:
    chi = residue_symbol(rec.alpha, ps)
    if chi == 0:
        raise TraceIntegrityError("alpha_E vanishes modulo the prime")
    s = rec.s
    if s == 3:
        half = u * 2 % 3  # 2 is its own inverse mod 3
    else:
        if u % 2:
            raise TraceIntegrityError("u must be even when s = 4")
        half = u // 2
    return _solve_sign(half, chi, s), f"symbol-s{s}"


def _sign_h1_root(rec: CurveRecord, ps: PrimeSpec, u: int) -> int:
    h1 = h1_polynomial(rec).reduce(ps)
    if h1.degree() != 2:
        raise TraceIntegrityError("H_1 drops degree modulo the prime")
    roots = quadratic_roots(h1[2], h1[1], h1[0])
    if not roots:
        raise ConditionViolation("H_1 has no root in the residue field")
    a4, a6 = reduce_element(rec.A, ps), reduce_element(rec.B, ps)
    chis = {quadratic_character(xi * xi * xi + a4 * xi + a6) for xi in roots}
    if len(chis) != 1 or 0 in chis:
        raise TraceIntegrityError(f"roots of H_1 disagree on the character: {chis}")
    return _solve_sign(u, 2 * chis.pop(), 5)


def _conjugate_prime(ps: PrimeSpec) -> PrimeSpec:
    if ps.degree == 2:
        return ps
    return PrimeSpec(ps.p, ps.field, 1, (-ps.root) % ps.p)


def _sign_rayclass(rec: CurveRecord, ps: PrimeSpec, u: int) -> int:
    ctx = build_ray_context(rec.ray_case)
    if rec.conjugated:
        # the conjugate curve reduces at ps like the original one at conj(ps)
        ps = _conjugate_prime(ps)
    i = ray_class_index(ctx, ps)
    return _solve_sign(u, 2 * pow(ctx.base, i, 5), 5)


def trace_at(rec: CurveRecord, ps: PrimeSpec, method: str | None = None) -> TraceResult:
    """Signed trace of ``rec`` at the prime ideal ``ps``; ``method`` forces a sign criterion."""
    p = ps.p
    reason = check_condition1(rec, p, ps)
    if reason:
        raise ConditionViolation(reason)
    q = ps.q
    sol = cornacchia_4q(rec.mf2, q, p)
    if sol is None:
        raise TraceIntegrityError(f"4*{q} is not u^2 + {rec.mf2} v^2 although the prime qualifies")
    u, v = sol.u, sol.v
    if method is None:
        if rec.s in (3, 4):
            method = f"symbol-s{rec.s}"
        elif q % 5 == 1:
            method = "symbol-s5"
        else:
            method = "rayclass-s5"
    if method in ("symbol-s3", "symbol-s4"):
        if method != f"symbol-s{rec.s}" or rec.alpha is None:
            raise ConditionViolation(f"{method} does not apply to d = {rec.d}")
        eps, _ = _sign_symbol(rec, ps, u)
    elif method == "symbol-s5":
        if rec.s != 5:
            raise ConditionViolation(f"{method} does not apply to d = {rec.d}")
        eps = _sign_h1_root(rec, ps, u)
    elif method == "rayclass-s5":
        if rec.s != 5:
            raise ConditionViolation(f"{method} does not apply to d = {rec.d}")
        eps = _sign_rayclass(rec, ps, u)
    elif method == "congruence-minus20":
        if rec.d != -20:
            raise ValueError(f"{method} only applies to d = -20")
        if rec.conjugated:
            return replace(trace_via_congruence_minus20(p, _conjugate_prime(ps).root), root=ps.root)
        return trace_via_congruence_minus20(p, ps.root)
    else:
        raise ValueError(f"unknown method {method!r}")
    a = eps * u
    if a * a > 4 * q:
        raise TraceIntegrityError("Hasse bound violated")
    d1, d2, alpha, beta = group_structure(a, u, v, rec, q)
    return TraceResult(
        d=rec.d, p=p, ell=ps.degree, q=q, root=ps.root, u=u, v=v, epsilon=eps, a=a,
        N=q + 1 - a, alpha=alpha, beta=beta, d_group=d2, group=(d1, d2), method=method,
    )  # fmt: skip


def frobenius_trace(d: int, p: int, root: int | None = None, method: str | None = None) -> TraceResult:
    """Signed trace for catalog discriminant ``d`` at the prime above ``p`` given by ``root``."""
    rec = catalog_lookup(d)
    return trace_at(rec, _field_prime(rec, p, root), method)


# --- d = -20 via p = a^2 - 5 b^2 -------------------------------------------------

_C_BY_P_MOD_40 = {1: 1, 9: -3, 21: 11, 29: 7}
UNIT_SEARCH_BOUND = 40


def minus20_representation(ps: PrimeSpec) -> tuple[int, int]:
    """(a, b) with a + b sqrt 5 generating ps, a^2 - 5b^2 = p, and the normalizing congruences."""
    p = ps.p
    a_mod20 = 1 if p % 5 == 1 else 17
    b_mod4 = 2 if p % 8 == 5 else 0
    gamma = ideal_generator(ps)
    e = Quad.half(1, 1, 5)
    for k in range(UNIT_SEARCH_BOUND + 1):
        for kk in {k, -k}:
            for sgn in (1, -1):
                g = gamma * e**kk * sgn
                if g.den != 1 or g.norm() != p:
                    continue
                if g.x % 20 == a_mod20 and g.y % 4 == b_mod4:
                    return g.x, g.y
    raise ConditionViolation(f"no normalized representation of {p} within the unit search bound")


def trace_via_congruence_minus20(p: int, root: int | None = None) -> TraceResult:
    """Trace of the d = -20 curve from the congruences of the prime's generator a + b sqrt 5."""
    rec = catalog_lookup(-20)
    ps = _field_prime(rec, p, root)
    if p % 20 not in (1, 9):
        raise ConditionViolation(f"{p} is not 1 or 9 mod 20")
    reason = check_condition1(rec, p, ps)
    if reason:
        raise ConditionViolation(reason)
    a, b = minus20_representation(ps)
    c = _C_BY_P_MOD_40[p % 40]
    if (a + 5 * b - c) % 20:
        raise TraceIntegrityError(f"(a + 5b - c)/20 is not an integer for p = {p}")
    target = (-1) ** (((a + 5 * b - c) // 20) % 2) * a
    sol = cornacchia_4q(rec.mf2, p, p)
    if sol is None:
        raise TraceIntegrityError(f"{p} has no representation u^2 + 5 v^2")
    u, v = sol.u, sol.v
    eps = _solve_sign(u // 2, target, 5)
    aP = eps * u
    d1, d2, alpha, beta = group_structure(aP, u, v, rec, p)
    return TraceResult(
        d=-20, p=p, ell=1, q=p, root=ps.root, u=u, v=v, epsilon=eps, a=aP, N=p + 1 - aP,
        alpha=alpha, beta=beta, d_group=d2, group=(d1, d2), method="congruence-minus20",
    )  # fmt: skip


def twist_trace(rec: CurveRecord, delta, ps: PrimeSpec, a: int | None = None) -> int:
    """Trace at ps of y^2 = x^3 + A delta^2 x + B delta^3."""
    twisted = CurveRecord(
        rec.d, rec.m, rec.f0, rec.f, rec.s, rec.field,
        rec.A * delta * delta, rec.B * delta * delta * delta, rec.j, rec.class_eq,
    )  # fmt: skip
    if not has_good_reduction(twisted, ps):
        raise ConditionViolation("the twist has bad reduction at the prime")
    if a is None:
        a = trace_at(rec, ps).a
    return residue_symbol(delta, ps) * a


__all__ = [
    "ConditionViolation",
    "FieldSpec",
    "METHODS",
    "TraceIntegrityError",
    "TraceResult",
    "UnsupportedPrime",
    "check_condition1",
    "frobenius_trace",
    "group_structure",
    "minus20_representation",
    "trace_at",
    "trace_via_congruence_minus20",
    "twist_trace",
]
