"""Finite fields F_p and F_{p^2} with polynomial arithmetic over them.

F_{p^2} is always presented as F_p[t]/(t^2 - n) for a non-residue ``n``, so
that the abstract square root of ``n`` in a real quadratic field maps to the
concrete generator ``t``.

Field contexts work on raw values (an ``int`` for F_p, a pair ``(a, b)``
meaning ``a + b t`` for F_{p^2}); :class:`FqElem` wraps a raw value for
operator-style use.
"""

from __future__ import annotations

from functools import lru_cache

from .modint import is_prime, jacobi_symbol, sqrt_mod_prime


class FiniteField:
    """F_p (``degree == 1``) or F_p[t]/(t^2 - nonresidue) (``degree == 2``)."""

    __slots__ = ("p", "degree", "nonresidue", "q", "_nonsquare")

    def __init__(self, p: int, degree: int = 1, nonresidue: int | None = None):
        if p % 2 == 0 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        if degree not in (1, 2):
            raise ValueError("only F_p and F_{p^2} are supported")
        self.p = p
        self.degree = degree
        if degree == 2:
            if nonresidue is None:
                nonresidue = 2
                while jacobi_symbol(nonresidue, p) != -1:
                    nonresidue += 1
            elif jacobi_symbol(nonresidue, p) != -1:
                raise ValueError(f"{nonresidue} is a square mod {p}")
            self.nonresidue = nonresidue % p
        else:
            self.nonresidue = None
        self.q = p**degree
        self._nonsquare = None

    def __repr__(self):
        if self.degree == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^2, t^2={self.nonresidue})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.degree == other.degree
            and self.nonresidue == other.nonresidue
        )

    def __hash__(self):
        return hash((self.p, self.degree, self.nonresidue))

    # raw-value arithmetic -------------------------------------------------

    @property
    def zero(self):
        return 0 if self.degree == 1 else (0, 0)

    @property
    def one(self):
        return 1 if self.degree == 1 else (1, 0)

    def raw(self, a, b: int = 0):
        """Raw value of ``a + b t`` (``b`` must be 0 over F_p)."""
        if self.degree == 1:
            if b % self.p:
                raise ValueError("F_p has no generator t")
            return a % self.p
        return (a % self.p, b % self.p)

    def add(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x + y) % p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x - y) % p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def neg(self, x):
        p = self.p
        if self.degree == 1:
            return -x % p
        return (-x[0] % p, -x[1] % p)

    def mul(self, x, y):
        p = self.p
        if self.degree == 1:
            return x * y % p
        a, b = x
        c, d = y
        return ((a * c + self.nonresidue * b * d) % p, (a * d + b * c) % p)

    def scale(self, x, k: int):
        p = self.p
        if self.degree == 1:
            return x * k % p
        return (x[0] * k % p, x[1] * k % p)

    def is_zero(self, x) -> bool:
        return x == 0 if self.degree == 1 else x == (0, 0)

    def norm(self, x) -> int:
        """Norm to F_p."""
        if self.degree == 1:
            return x
        return (x[0] * x[0] - self.nonresidue * x[1] * x[1]) % self.p

    def inv(self, x):
        p = self.p
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.degree == 1:
            return pow(x, -1, p)
        ninv = pow(self.norm(x), -1, p)
        return (x[0] * ninv % p, -x[1] * ninv % p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e: int):
        if self.degree == 1:
            return pow(x, e, self.p)
        if e < 0:
            x, e = self.inv(x), -e
        result = (1, 0)
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def frobenius(self, x):
        """x -> x^p."""
        if self.degree == 1:
            return x
        # t^p = t * n^((p-1)/2) = -t
        return (x[0], -x[1] % self.p)

    def character(self, x) -> int:
        """Quadratic character in {-1, 0, 1}.

        Over F_{p^2} this uses x^((p^2-1)/2) = N(x)^((p-1)/2).
        """
        return jacobi_symbol(self.norm(x), self.p)

    def sqrt(self, x):
        """A square root of ``x`` or None if ``x`` is a non-square."""
        if self.is_zero(x):
            return self.zero
        if self.character(x) != 1:
            return None
        if self.degree == 1:
            return sqrt_mod_prime(x, self.p)
        # Tonelli-Shanks in the cyclic group F_{p^2}^*
        q, s = self.q - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        c = self.pow(self._find_nonsquare(), q)
        r = self.pow(x, (q + 1) // 2)
        t = self.pow(x, q)
        m = s
        one = self.one
        while t != one:
            i, t2 = 0, t
            while t2 != one:
                t2 = self.mul(t2, t2)
                i += 1
            b = self.pow(c, 1 << (m - i - 1))
            r = self.mul(r, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            m = i
        return r

    def _find_nonsquare(self):
        if self._nonsquare is None:
            # deterministic scan over 1 + b t
            b = 1
            while self.character((1, b)) != -1:
                b += 1
            self._nonsquare = (1, b)
        return self._nonsquare

    def elements(self):
        """Iterate over all raw field elements."""
        p = self.p
        if self.degree == 1:
            yield from range(p)
        else:
            for b in range(p):
                for a in range(p):
                    yield (a, b)

    def __call__(self, a, b: int = 0) -> FqElem:
        return FqElem(self, self.raw(a, b))


@lru_cache(maxsize=None)
def gf(p: int, degree: int = 1, nonresidue: int | None = None) -> FiniteField:
    """Cached field constructor."""
    return FiniteField(p, degree, nonresidue)


class FqElem:
    """An element of a :class:`FiniteField`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.raw(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __repr__(self):
        if self.field.degree == 1:
            return f"{self.value} (mod {self.field.p})"
        a, b = self.value
        return f"{a}+{b}t (mod {self.field.p}, t^2={self.field.nonresidue})"

    def frobenius(self) -> FqElem:
        return FqElem(self.field, self.field.frobenius(self.value))

    def norm(self) -> int:
        return self.field.norm(self.value)

    def sqrt(self) -> FqElem | None:
        r = self.field.sqrt(self.value)
        return None if r is None else FqElem(self.field, r)


def quadratic_character(a: FqElem) -> int:
    """0 for zero, otherwise a^((q-1)/2) read as +1 or -1."""
    return a.field.character(a.value)


def quadratic_roots(c2: FqElem, c1: FqElem, c0: FqElem) -> list[FqElem]:
    """All roots in F_q of ``c2 x^2 + c1 x + c0``, sorted by raw value."""
    F = c2.field
    if not c2:
        raise ValueError("leading coefficient must be nonzero")
    disc = c1 * c1 - 4 * c2 * c0
    s = disc.sqrt()
    if s is None:
        return []
    den = 2 * c2
    roots = {((-c1 + s) / den).value, ((-c1 - s) / den).value}
    out = [FqElem(F, r) for r in sorted(roots)]
    for r in out:
        if c2 * r * r + c1 * r + c0:
            raise ArithmeticError("quadratic root failed re-verification")
    return out


class FqPoly:
    """Univariate polynomial over a :class:`FiniteField`.

    ``coeffs`` holds raw values, lowest degree first, with no trailing zeros;
    the zero polynomial has an empty list.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs):
        self.field = field
        cs = [c.value if isinstance(c, FqElem) else c for c in coeffs]
        cs = [field.raw(c) if isinstance(c, int) and field.degree == 2 else c for c in cs]
        if field.degree == 1:
            cs = [c % field.p for c in cs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = cs

    @classmethod
    def x(cls, field: FiniteField) -> FqPoly:
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field: FiniteField, c) -> FqPoly:
        return cls(field, [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, FqPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __repr__(self):
        return f"FqPoly({self.field!r}, {self.coeffs})"

    def __getitem__(self, i: int) -> FqElem:
        return FqElem(self.field, self.coeffs[i] if i < len(self.coeffs) else self.field.zero)

    def lead(self):
        return self.coeffs[-1]

    def __add__(self, other: FqPoly) -> FqPoly:
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return FqPoly(F, out)

    def __neg__(self) -> FqPoly:
        F = self.field
        return FqPoly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: FqPoly) -> FqPoly:
        return self + (-other)

    def __mul__(self, other) -> FqPoly:
        F = self.field
        if isinstance(other, (int, FqElem)):
            k = F.raw(other) if isinstance(other, int) else other.value
            return FqPoly(F, [F.mul(c, k) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FqPoly(F, [])
        out = [F.zero] * (len(a) + len(b) - 1)
        mul, add = F.mul, F.add
        for i, ai in enumerate(a):
            if F.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = add(out[i + j], mul(ai, bj))
        return FqPoly(F, out)

    __rmul__ = __mul__

    def divmod(self, other: FqPoly) -> tuple[FqPoly, FqPoly]:
        F = self.field
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        inv_lead = F.inv(other.lead())
        quo = [F.zero] * max(0, len(rem) - db)
        b = other.coeffs
        mul, sub = F.mul, F.sub
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if F.is_zero(c):
                continue
            c = mul(c, inv_lead)
            quo[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] = sub(rem[i - db + j], mul(c, b[j]))
        return FqPoly(F, quo), FqPoly(F, rem[:db])

    def __mod__(self, other: FqPoly) -> FqPoly:
        return self.divmod(other)[1]

    def __floordiv__(self, other: FqPoly) -> FqPoly:
        return self.divmod(other)[0]

    def monic(self) -> FqPoly:
        F = self.field
        if not self:
            return self
        inv = F.inv(self.lead())
        return FqPoly(F, [F.mul(c, inv) for c in self.coeffs])

    def gcd(self, other: FqPoly) -> FqPoly:
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: FqPoly) -> tuple[FqPoly, FqPoly, FqPoly]:
        """(g, s, t) with g = s*self + t*other, g monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = FqPoly(F, [F.one]), FqPoly(F, [])
        t0, t1 = FqPoly(F, []), FqPoly(F, [F.one])
        while r1:
            qt, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if not r0:
            return r0, s0, t0
        inv = F.inv(r0.lead())
        return r0 * FqElem(F, inv), s0 * FqElem(F, inv), t0 * FqElem(F, inv)

    def invmod(self, modulus: FqPoly) -> FqPoly:
        g, s, _ = self.xgcd(modulus)
        if g.degree() != 0:
            raise ZeroDivisionError("polynomial is not invertible modulo the modulus")
        return s % modulus

    def powmod(self, e: int, modulus: FqPoly) -> FqPoly:
        F = self.field
        result = FqPoly(F, [F.one]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def derivative(self) -> FqPoly:
        F = self.field
        return FqPoly(F, [F.scale(c, i) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        F = self.field
        xv = x.value if isinstance(x, FqElem) else F.raw(x)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, xv), c)
        return FqElem(F, acc)

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree() == 0


def factor_degrees(f: FqPoly) -> list[int]:
    """Degrees of the irreducible factors of squarefree ``f`` (distinct-degree splitting)."""
    if f.degree() < 1:
        return []
    if not f.is_squarefree():
        raise ValueError("polynomial is not squarefree (bad reduction or wrong prime?)")
    F = f.field
    f = f.monic()
    x = FqPoly.x(F)
    h = x
    degrees: list[int] = []
    i = 0
    while f.degree() >= 2 * (i + 1):
        i += 1
        h = h.powmod(F.q, f)
        g = (h - x).gcd(f)
        if g.degree() > 0:
            degrees += [i] * (g.degree() // i)
            f = f // g
            h = h % f
    if f.degree() > 0:
        degrees.append(f.degree())
    return sorted(degrees)
