"""Brute-force ground truth for reduced curves: point counts, group structure
and the Frobenius action on the rational cyclic 5-subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import CurveRecord, has_good_reduction
from .divpoly import h1_polynomial
from .ffield import FiniteField, FqElem, FqPoly
from .numfield import BadReduction, PrimeSpec, reduce_element

COUNT_BOUND = {1: 500, 2: 200}
GROUP_BOUND = {1: 200, 2: 60}


class OracleBoundExceeded(ValueError):
    """The brute-force method would be too slow for this field size."""


@dataclass(frozen=True)
class ReducedCurve:
    """y^2 = x^3 + a4 x + a6 over a finite field."""

    field: FiniteField
    a4: FqElem
    a6: FqElem

    def __post_init__(self):
        if not (4 * self.a4 * self.a4 * self.a4 + 27 * self.a6 * self.a6):
            raise BadReduction("singular reduction")

    @property
    def q(self) -> int:
        return self.field.q

    def rhs(self, x):
        F = self.field
        return F.add(F.mul(F.add(F.mul(x, x), self.a4.value), x), self.a6.value)


def reduce_curve(rec: CurveRecord, ps: PrimeSpec) -> ReducedCurve:
    if not has_good_reduction(rec, ps):
        raise BadReduction(f"d={rec.d} has bad reduction at {ps}")
    return ReducedCurve(ps.residue_field(), reduce_element(rec.A, ps), reduce_element(rec.B, ps))


def _check_bound(c: ReducedCurve, bounds: dict[int, int], limit: int | None) -> None:
    F = c.field
    bound = bounds.get(F.degree, 0) if limit is None else limit
    if F.p >= bound:
        raise OracleBoundExceeded(f"p = {F.p} exceeds the brute-force bound {bound} for degree {F.degree}")


def count_points(c: ReducedCurve, limit: int | None = None) -> int:
    """#E(F_q) = q + 1 + sum over x of chi(x^3 + a4 x + a6)."""
    _check_bound(c, COUNT_BOUND, limit)
    F = c.field
    p = F.p
    xs = np.arange(p, dtype=np.int64)
    is_sq = np.zeros(p, dtype=bool)
    is_sq[xs * xs % p] = True
    if F.degree == 1:
        a4, a6 = c.a4.value, c.a6.value
        vals = ((xs * xs % p + a4) % p * xs + a6) % p
    else:
        n = F.nonresidue
        a, b = (g.ravel() for g in np.meshgrid(xs, xs, indexing="ij"))

        def mul(x0, x1, y0, y1):
            return (x0 * y0 + n * x1 % p * y1) % p, (x0 * y1 + x1 * y0) % p

        s0, s1 = mul(a, b, a, b)
        s0, s1 = (s0 + c.a4.value[0]) % p, (s1 + c.a4.value[1]) % p
        t0, t1 = mul(s0, s1, a, b)
        t0, t1 = (t0 + c.a6.value[0]) % p, (t1 + c.a6.value[1]) % p
        vals = (t0 * t0 - n * (t1 * t1 % p)) % p
    chi = np.where(vals == 0, 0, np.where(is_sq[vals], 1, -1))
    return F.q + 1 + int(chi.sum())


# --- group structure -----------------------------------------------------------


def _points(c: ReducedCurve) -> list:
    F = c.field
    pts = []
    for x in F.elements():
        r = F.sqrt(c.rhs(x))
        if r is None:
            continue
        pts.append((x, r))
        if not F.is_zero(r):
            pts.append((x, F.neg(r)))
    return pts


def _add(c: ReducedCurve, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    F = c.field
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if F.is_zero(F.add(y1, y2)):
            return None
        num = F.add(F.scale(F.mul(x1, x1), 3), c.a4.value)
        lam = F.div(num, F.scale(y1, 2))
    else:
        lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
    x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
    y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
    return (x3, y3)


def _mul(c: ReducedCurve, n: int, P):
    R = None
    while n:
        if n & 1:
            R = _add(c, R, P)
        P = _add(c, P, P)
        n >>= 1
    return R


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _valuation(n: int, ell: int) -> int:
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def brute_group_structure(c: ReducedCurve, limit: int | None = None) -> tuple[int, int]:
    """Invariant factors (d1, d2), d2 | d1, of E(F_q) by full enumeration.

    Only primes ell with ell^2 | N can contribute to d2. For each, every point is
    pushed into the ell-Sylow subgroup and the counts of points killed by ell^j
    are matched against Z/ell^a + Z/ell^b; the match must be unique.
    """
    _check_bound(c, GROUP_BOUND, limit)
    pts = _points(c)
    N = len(pts) + 1
    d2 = 1
    for ell in _prime_factors(N):
        e = _valuation(N, ell)
        if e < 2:
            continue
        cof = N // ell**e
        killed = [0] * (e + 1)  # killed[j] = #{P in Sylow : ell^j P = O}
        for P in [None, *pts]:
            Q = _mul(c, cof, P) if P is not None else None
            j = 0
            while Q is not None:
                Q = _mul(c, ell, Q)
                j += 1
            for jj in range(j, e + 1):
                killed[jj] += 1
        # the map P -> cof*P is cof-to-one onto the Sylow subgroup
        killed = [k // cof for k in killed]
        matches = [
            b
            for b in range(e // 2 + 1)
            if all(killed[j] == ell ** (min(j, e - b) + min(j, b)) for j in range(e + 1))
        ]
        if len(matches) != 1:
            raise ArithmeticError(f"{ell}-part of the group not determined: {killed}")
        d2 *= ell ** matches[0]
    return N // d2, d2


# --- Frobenius on the rational 5-subgroup --------------------------------------


def frobenius_on_C5(rec: CurveRecord, ps: PrimeSpec) -> int:
    """The r in {1,2,3,4} with Frob(Q) = [r]Q for Q in the cyclic group cut out by H_1.

    Computed in F_q[x]/(h1): x^q = x means r = +-1, decided by y^q = y h(x)^((q-1)/2);
    otherwise x^q must equal the x-coordinate of [2]Q and the sign of the
    y-coordinate separates r = 2 from r = 3.
    """
    if rec.s != 5:
        raise ValueError("frobenius_on_C5 needs an s = 5 record")
    E = reduce_curve(rec, ps)
    F = E.field
    q = F.q
    h1 = h1_polynomial(rec).reduce(ps)
    if h1.degree() != 2 or not h1.is_squarefree():
        raise BadReduction(f"H_1 degenerates modulo {ps}")
    h1 = h1.monic()
    x = FqPoly.x(F)
    a4, a6 = E.a4, E.a6
    h = (x * x * x + x * a4 + FqPoly.constant(F, a6)) % h1
    if h.gcd(h1).degree() > 0:
        raise BadReduction("H_1 shares a root with x^3 + a4 x + a6")
    c = h.powmod((q - 1) // 2, h1)
    one = FqPoly.constant(F, 1)
    X = x.powmod(q, h1)
    if X == x:
        if c == one:
            return 1
        if c == -one:
            return 4
        raise ArithmeticError("y^q / y is not +-1 on a fixed x-coordinate")
    # [2](x, y) = (x2, y * Y2) with x2 = num/(4h), Y2 = (3x^2+a4)(x-x2)/(2h) - 1
    num = (x * x * x * x - x * x * (2 * a4) - x * (8 * a6) + FqPoly.constant(F, a4 * a4)) % h1
    if (X * h * 4 - num) % h1:
        raise ArithmeticError("x^q is neither x nor the x-coordinate of the double")
    hinv = h.invmod(h1)
    x2 = (num * hinv * FqPoly.constant(F, FqElem(F, F.inv(F.raw(4))))) % h1
    slope = ((x * x * 3 + FqPoly.constant(F, a4)) * (x - x2) * hinv) % h1
    Y2 = (slope * FqPoly.constant(F, FqElem(F, F.inv(F.raw(2)))) - one) % h1
    if c == Y2:
        return 2
    if c == -Y2:
        return 3
    raise ArithmeticError("y^q matches neither [2] nor [-2]")
