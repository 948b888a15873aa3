"""The 3-, 4- and 5-division polynomials of y^2 = x^3 + Ax + B and polynomials
over the number fields F.
"""

from __future__ import annotations

from .ffield import FqPoly
from .numfield import PrimeSpec, reduce_element


class FieldPoly:
    """Polynomial with exact field coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FieldPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"FieldPoly({self.coeffs})"

    def __str__(self):
        terms = [f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(terms)) or "0"

    def lead(self):
        return self.coeffs[-1]

    def __add__(self, other: FieldPoly) -> FieldPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return FieldPoly(out)

    def __neg__(self) -> FieldPoly:
        return FieldPoly([-c for c in self.coeffs])

    def __sub__(self, other: FieldPoly) -> FieldPoly:
        return self + (-other)

    def __mul__(self, other) -> FieldPoly:
        if not isinstance(other, FieldPoly):
            return FieldPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FieldPoly([])
        out = [a[0] * 0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return FieldPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: FieldPoly) -> tuple[FieldPoly, FieldPoly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        lead = other.lead()
        quo = [lead * 0] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            c = c / lead
            quo[i - db] = c
            for j, bj in enumerate(other.coeffs):
                rem[i - db + j] = rem[i - db + j] - c * bj
        return FieldPoly(quo), FieldPoly(rem[:db])

    def __call__(self, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> FieldPoly:
        lead = self.lead()
        return FieldPoly([c / lead for c in self.coeffs])

    def reduce(self, ps: PrimeSpec) -> FqPoly:
        """Coefficient-wise reduction modulo ``ps``."""
        F = ps.residue_field()
        return FqPoly(F, [reduce_element(c, ps) for c in self.coeffs])


def division_polynomial(s: int, A, B) -> FieldPoly:
    """Psi_3, Psi_4/(2y) or Psi_5 of y^2 = x^3 + Ax + B, as listed."""
    if s == 3:
        return FieldPoly([-A * A, 12 * B, 6 * A, 0 * A, 3 + 0 * A])
    if s == 4:
        A2, A3 = A * A, A * A * A
        return FieldPoly(
            [-16 * B * B - 2 * A3, -8 * A * B, -10 * A2, 40 * B, 10 * A, 0 * A, 2 + 0 * A]
        )
    if s == 5:
        A2 = A * A
        A3 = A2 * A
        A4 = A3 * A
        A5 = A4 * A
        A6 = A5 * A
        B2 = B * B
        B3 = B2 * B
        B4 = B3 * B
        return FieldPoly(
            [
                A6 - 32 * B2 * A3 - 256 * B4,
                -(640 * A * B3 + 100 * A4 * B),
                -(50 * A5 + 240 * A2 * B2),
                -(1600 * B3 + 80 * B * A3),
                -(125 * A4 + 1920 * A * B2),
                -696 * A2 * B,
                -(300 * A3 + 240 * B2),
                240 * A * B,
                -105 * A2,
                380 * B,
                62 * A,
                0 * A,
                5 + 0 * A,
            ]
        )
    raise ValueError(f"division polynomial for s={s} is not available (s in 3, 4, 5)")


def weierstrass_rhs(A, B) -> FieldPoly:
    """h(x) = x^3 + Ax + B."""
    return FieldPoly([B, A, 0 * A, 1 + 0 * A])


def h1_polynomial(rec) -> FieldPoly:
    """The F-rational factor H_1 of Psi_s cutting out the distinguished cyclic subgroup.

    For s = 3, 4 this is x - x_Q; for s = 5 the stored quadratic factor.
    """
    if rec.s in (3, 4):
        return FieldPoly([-rec.xQ, rec.xQ * 0 + 1])
    if rec.s == 5:
        return FieldPoly(rec.h1)
    raise ValueError(f"unsupported torsion level {rec.s}")
