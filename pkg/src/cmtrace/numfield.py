"""Exact arithmetic in the real quadratic fields Q(sqrt n) and the pure cubic
fields Q(cbrt k), reduction modulo prime ideals, and Euclid in Z[(1+sqrt 5)/2].
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .ffield import FiniteField, FqElem, gf
from .modint import is_prime, jacobi_symbol, legendre_symbol, sqrt_mod_prime

QUADRATIC_RADICANDS = (2, 3, 5, 6, 7, 17, 21, 33, 41, 89)
CUBIC_RADICANDS = (2, 3)


class BadReduction(ArithmeticError):
    """An element (or curve) does not reduce modulo the given prime."""


class UnsupportedPrime(ValueError):
    """Prime splitting type outside the supported residue fields."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class Quad:
    """Element ``(x + y*sqrt(n)) / den`` of Q(sqrt n), kept in lowest terms."""

    __slots__ = ("x", "y", "den", "n")

    def __init__(self, x: int, y: int = 0, n: int = 5, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            x, y, den = -x, -y, -den
        g = gcd(gcd(x, y), den)
        if g > 1:
            x, y, den = x // g, y // g, den // g
        self.x, self.y, self.den, self.n = x, y, den, n

    @classmethod
    def half(cls, x: int, y: int, n: int) -> Quad:
        """The element (x + y sqrt n)/2."""
        return cls(x, y, n, 2)

    @classmethod
    def from_rationals(cls, a, b, n: int) -> Quad:
        """a + b sqrt(n) for rationals a, b."""
        a, b = Fraction(a), Fraction(b)
        den = _lcm(a.denominator, b.denominator)
        return cls(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), n, den)

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.x, self.den)

    @property
    def irrational_part(self) -> Fraction:
        return Fraction(self.y, self.den)

    def half_coords(self) -> tuple[Fraction, Fraction]:
        """(X, Y) with self = (X + Y sqrt n)/2."""
        return Fraction(2 * self.x, self.den), Fraction(2 * self.y, self.den)

    def is_integral(self) -> bool:
        if self.den == 1:
            return True
        if self.den != 2:
            return False
        if self.n % 4 == 1:
            return (self.x - self.y) % 2 == 0
        return False

    def _coerce(self, other):
        if isinstance(other, Quad):
            if other.n != self.n:
                raise ValueError(f"mixing Q(sqrt {self.n}) and Q(sqrt {other.n})")
            return other
        if isinstance(other, int):
            return Quad(other, 0, self.n)
        if isinstance(other, Fraction):
            return Quad(other.numerator, 0, self.n, other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = _lcm(self.den, o.den)
        a, b = d // self.den, d // o.den
        return Quad(self.x * a + o.x * b, self.y * a + o.y * b, self.n, d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.x, -self.y, self.n, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self.n
        return Quad(
            self.x * o.x + n * self.y * o.y,
            self.x * o.y + self.y * o.x,
            n,
            self.den * o.den,
        )

    __rmul__ = __mul__

    def conj(self) -> Quad:
        return Quad(self.x, -self.y, self.n, self.den)

    def norm(self) -> Fraction:
        return Fraction(self.x * self.x - self.n * self.y * self.y, self.den * self.den)

    def trace(self) -> Fraction:
        return Fraction(2 * self.x, self.den)

    def inverse(self) -> Quad:
        num = self.x * self.x - self.n * self.y * self.y
        if num == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/((x + y r)/d) = d (x - y r) / (x^2 - n y^2)
        return Quad(self.den * self.x, -self.den * self.y, self.n, num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int) -> Quad:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = Quad(1, 0, self.n), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Quad):
            return (self.x, self.y, self.den, self.n) == (other.x, other.y, other.den, other.n)
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and Fraction(self.x, self.den) == other
        return False

    def __hash__(self):
        return hash((self.x, self.y, self.den, self.n))

    def __bool__(self):
        return bool(self.x or self.y)

    def __repr__(self):
        return f"Quad({self})"

    def __str__(self):
        return format_quad(self)

    def denominator(self) -> int:
        """Smallest d with d*self in Z[sqrt n]."""
        return self.den

    def sign_conjugate(self) -> int:
        """Sign of the image under sqrt(n) -> -sqrt(n)."""
        return _sign_of(self.x, -self.y, self.n)

    def sign_real(self) -> int:
        """Sign of the image under the embedding with sqrt(n) > 0."""
        return _sign_of(self.x, self.y, self.n)


def _sign_of(x: int, y: int, n: int) -> int:
    """Sign of x + y sqrt(n) for integers x, y (exact)."""
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if (x > 0) == (y > 0):
        return 1 if x > 0 else -1
    # opposite signs: compare x^2 with n y^2
    lhs, rhs = x * x, n * y * y
    if lhs > rhs:
        return 1 if x > 0 else -1
    return 1 if y > 0 else -1


def format_quad(a: Quad) -> str:
    """Exact string ``X/D + Y/D*sqrt(n)``; integral elements use D = 2."""
    den = _lcm(2, a.den)
    k = den // a.den
    return f"{a.x * k}/{den} + {a.y * k}/{den}*sqrt({a.n})"


class Cubic:
    """Element ``c0 + c1*theta + c2*theta^2`` of Q(theta), theta^3 = k."""

    __slots__ = ("c", "k")

    def __init__(self, c0=0, c1=0, c2=0, k: int = 2):
        self.c = (Fraction(c0), Fraction(c1), Fraction(c2))
        self.k = k

    def _coerce(self, other):
        if isinstance(other, Cubic):
            if other.k != self.k:
                raise ValueError("mixing different cubic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Cubic(other, 0, 0, self.k)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cubic(*(a + b for a, b in zip(self.c, o.c)), k=self.k)

    __radd__ = __add__

    def __neg__(self):
        return Cubic(*(-a for a in self.c), k=self.k)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a0, a1, a2 = self.c
        b0, b1, b2 = o.c
        k = self.k
        return Cubic(
            a0 * b0 + k * (a1 * b2 + a2 * b1),
            a0 * b1 + a1 * b0 + k * a2 * b2,
            a0 * b2 + a1 * b1 + a2 * b0,
            k=k,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        a, b, c = self.c
        k = self.k
        return a**3 + k * b**3 + k * k * c**3 - 3 * k * a * b * c

    def inverse(self) -> Cubic:
        a, b, c = self.c
        k = self.k
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of zero")
        return Cubic((a * a - k * b * c) / nm, (k * c * c - a * b) / nm, (b * b - a * c) / nm, k=k)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int) -> Cubic:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = Cubic(1, k=self.k), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c and self.k == o.k

    def __hash__(self):
        return hash((self.c, self.k))

    def __bool__(self):
        return any(self.c)

    def denominator(self) -> int:
        d = 1
        for a in self.c:
            d = _lcm(d, a.denominator)
        return d

    def __repr__(self):
        return f"Cubic({self})"

    def __str__(self):
        return format_cubic(self)


def format_cubic(a: Cubic) -> str:
    c0, c1, c2 = a.c
    return f"{c0} + {c1}*cbrt({a.k}) + {c2}*cbrt({a.k})^2"


FieldElem = Quad | Cubic


@dataclass(frozen=True)
class FieldSpec:
    """Q(sqrt radicand) (``kind='quadratic'``) or Q(cbrt radicand) (``kind='cubic'``)."""

    kind: str
    radicand: int

    def __post_init__(self):
        allowed = QUADRATIC_RADICANDS if self.kind == "quadratic" else CUBIC_RADICANDS
        if self.kind not in ("quadratic", "cubic") or self.radicand not in allowed:
            raise ValueError(f"unsupported field {self.kind} {self.radicand}")

    def __str__(self):
        if self.kind == "quadratic":
            return f"Q(sqrt({self.radicand}))"
        return f"Q(cbrt({self.radicand}))"

    def element(self, *coords) -> FieldElem:
        if self.kind == "quadratic":
            return Quad.from_rationals(coords[0], coords[1] if len(coords) > 1 else 0, self.radicand)
        return Cubic(*coords, k=self.radicand)

    def one(self) -> FieldElem:
        return self.element(1)

    def is_ramified(self, p: int) -> bool:
        if self.kind == "quadratic":
            return self.radicand % p == 0 or p == 2
        return (3 * self.radicand) % p == 0


@dataclass(frozen=True)
class PrimeSpec:
    """A prime ideal of a supported field above the odd prime ``p``.

    ``root`` is the image of sqrt(n) (resp. cbrt(k)) in F_p for degree 1;
    for degree 2 the residue field is F_p[t]/(t^2 - n) with sqrt(n) -> t.
    """

    p: int
    field: FieldSpec
    degree: int
    root: int | None = None

    def __post_init__(self):
        p, fs = self.p, self.field
        if p % 2 == 0 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        if fs.is_ramified(p):
            raise ValueError(f"{p} ramifies in {fs}")
        if self.degree == 1:
            if self.root is None:
                raise ValueError("degree-1 prime needs a root")
            exp = 2 if fs.kind == "quadratic" else 3
            if (pow(self.root, exp, p) - fs.radicand) % p:
                raise ValueError(f"{self.root} is not a root of x^{exp} - {fs.radicand} mod {p}")
        elif self.degree == 2:
            if fs.kind != "quadratic" or jacobi_symbol(fs.radicand, p) != -1:
                raise ValueError(f"{p} is not inert in {fs}")
        else:
            raise UnsupportedPrime(f"degree {self.degree} primes are not supported")

    @property
    def q(self) -> int:
        return self.p**self.degree

    def residue_field(self) -> FiniteField:
        if self.degree == 1:
            return gf(self.p)
        return gf(self.p, 2, self.field.radicand % self.p)

    def __str__(self):
        if self.degree == 2:
            return f"({self.p})"
        sym = "sqrt" if self.field.kind == "quadratic" else "cbrt"
        return f"({self.p}, {sym}({self.field.radicand}) - {self.root})"


def _cube_roots_mod_p(k: int, p: int) -> list[int]:
    k %= p
    if p % 3 == 2:
        return [pow(k, (2 * p - 1) // 3, p)]
    from .ffield import FqPoly

    F = gf(p)
    f = FqPoly(F, [-k, 0, 0, 1])
    x = FqPoly.x(F)
    g = (x.powmod(p, f) - x).gcd(f)
    roots: list[int] = []
    stack = [g] if g.degree() > 0 else []
    shift = 0
    while stack:
        h = stack.pop()
        if h.degree() == 1:
            roots.append(F.neg(h.coeffs[0]))
            continue
        # deterministic equal-degree split with shifts 0, 1, 2, ...
        while True:
            shift += 1
            w = (x + FqPoly.constant(F, shift)).powmod((p - 1) // 2, h) - FqPoly.constant(F, 1)
            d = w.gcd(h)
            if 0 < d.degree() < h.degree():
                stack += [d, h // d]
                break
    return sorted(roots)


def splitting_type(p: int, field: FieldSpec) -> tuple[int, tuple[int, ...]]:
    """(degree, roots) for primes above ``p``: degree 1 with the roots of
    x^2 - n (or x^3 - k), or degree 2 for inert quadratic primes.

    Cubic primes without a degree-1 factor raise :class:`UnsupportedPrime`.
    """
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if field.is_ramified(p):
        raise ValueError(f"{p} ramifies in {field}")
    if field.kind == "quadratic":
        r = sqrt_mod_prime(field.radicand, p)
        if r is None:
            return 2, ()
        return 1, tuple(sorted({r, p - r}))
    roots = _cube_roots_mod_p(field.radicand, p)
    if not roots:
        raise UnsupportedPrime(f"{p} has no degree-1 prime in {field}")
    return 1, tuple(roots)


def prime_spec(p: int, field: FieldSpec, root: int | None = None) -> PrimeSpec:
    """Prime above ``p``; the smallest root is the default for degree-1 primes."""
    degree, roots = splitting_type(p, field)
    if degree == 2:
        if root is not None:
            raise ValueError(f"{p} is inert in {field}; no root to choose")
        return PrimeSpec(p, field, 2)
    if root is None:
        root = roots[0]
    elif root % p not in roots:
        raise ValueError(f"{root} is not a root for {field} mod {p}")
    return PrimeSpec(p, field, 1, root % p)


def primes_above(p: int, field: FieldSpec) -> list[PrimeSpec]:
    """All supported prime ideals above ``p``."""
    degree, roots = splitting_type(p, field)
    if degree == 2:
        return [PrimeSpec(p, field, 2)]
    return [PrimeSpec(p, field, 1, r) for r in roots]


def _reduce_fraction(fr: Fraction, p: int) -> int:
    if fr.denominator % p == 0:
        raise BadReduction(f"denominator {fr.denominator} is not invertible mod {p}")
    return fr.numerator * pow(fr.denominator, -1, p) % p


def reduce_element(x, ps: PrimeSpec) -> FqElem:
    """Image of ``x`` in the residue field of ``ps``."""
    F = ps.residue_field()
    p = ps.p
    if isinstance(x, (int, Fraction)):
        return FqElem(F, F.raw(_reduce_fraction(Fraction(x), p)))
    if isinstance(x, Quad):
        if ps.field.kind != "quadratic" or x.n != ps.field.radicand:
            raise ValueError(f"{x!r} does not belong to {ps.field}")
        if x.den % p == 0:
            raise BadReduction(f"denominator {x.den} is not invertible mod {p}")
        dinv = pow(x.den, -1, p)
        if ps.degree == 1:
            return FqElem(F, (x.x + x.y * ps.root) * dinv % p)
        return FqElem(F, (x.x * dinv % p, x.y * dinv % p))
    if isinstance(x, Cubic):
        if ps.field.kind != "cubic" or x.k != ps.field.radicand:
            raise ValueError(f"{x!r} does not belong to {ps.field}")
        r = ps.root
        c0, c1, c2 = (_reduce_fraction(c, p) for c in x.c)
        return FqElem(F, (c0 + c1 * r + c2 * r * r) % p)
    raise TypeError(f"cannot reduce {type(x).__name__}")


def residue_symbol(x, ps: PrimeSpec) -> int:
    """Quadratic residue symbol (x / p) for the prime ideal ``ps``."""
    if ps.degree == 1:
        return legendre_symbol(reduce_element(x, ps).value, ps.p)
    if isinstance(x, Quad):
        return legendre_symbol(_reduce_fraction(x.norm(), ps.p), ps.p)
    return legendre_symbol(reduce_element(x, ps).norm(), ps.p)


# --- Z[(1+sqrt 5)/2] ---------------------------------------------------------

FUNDAMENTAL_UNIT = Quad.half(1, 1, 5)


def _round_half_up(fr: Fraction) -> int:
    return (2 * fr.numerator + fr.denominator) // (2 * fr.denominator)


def _as_q5(a) -> Quad:
    if isinstance(a, int):
        return Quad(a, 0, 5)
    if not isinstance(a, Quad) or a.n != 5 or not a.is_integral():
        raise ValueError(f"{a!r} is not an integer of Q(sqrt 5)")
    return a


def divmod_q5(a: Quad, b: Quad) -> tuple[Quad, Quad]:
    """Euclidean division in Z[e]: a = qt*b + r with |N(r)| < |N(b)|."""
    quot = a / b
    # coordinates in basis {1, e}: c0 + c1 e = (2 c0 + c1 + c1 sqrt5)/2
    c1 = quot.irrational_part * 2
    c0 = quot.rational_part - c1 / 2
    qt = Quad.half(2 * _round_half_up(c0) + _round_half_up(c1), _round_half_up(c1), 5)
    r = a - qt * b
    if abs(r.norm()) >= abs(b.norm()):
        raise ArithmeticError("Euclidean step failed to decrease the norm")
    return qt, r


def canonical_associate(g: Quad) -> Quad:
    """Unit multiple of ``g`` that is totally positive with minimal trace."""
    g = _as_q5(g)
    if not g:
        return g
    if g.norm() < 0:
        g = g * FUNDAMENTAL_UNIT
    if g.sign_real() < 0:
        g = -g
    e2 = FUNDAMENTAL_UNIT * FUNDAMENTAL_UNIT
    e2inv = e2.inverse()
    while True:
        up, down = g * e2, g * e2inv
        if down.trace() < g.trace():
            g = down
        elif up.trace() < g.trace():
            g = up
        else:
            return g


def euclid_gcd_q5(a, b) -> Quad:
    """Generator of the ideal (a) + (b) in Z[(1+sqrt 5)/2], canonically normalized."""
    a, b = _as_q5(a), _as_q5(b)
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, divmod_q5(a, b)[1]
    return canonical_associate(a)


def euclid_xgcd_q5(a, b) -> tuple[Quad, Quad, Quad]:
    """(g, s, t) with g = s*a + t*b generating (a) + (b); g is not normalized."""
    a, b = _as_q5(a), _as_q5(b)
    s0, s1 = Quad(1, 0, 5), Quad(0, 0, 5)
    t0, t1 = Quad(0, 0, 5), Quad(1, 0, 5)
    while b:
        qt, r = divmod_q5(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    return a, s0, t0


def divides_q5(d: Quad, a: Quad) -> bool:
    """Whether ``d`` divides ``a`` in Z[e]."""
    if not d:
        return not a
    return (a / d).is_integral()


def ideal_generator(ps: PrimeSpec) -> Quad:
    """Canonical generator of the prime ideal ``ps`` of Q(sqrt 5)."""
    if ps.field != FieldSpec("quadratic", 5):
        raise ValueError("ideal generators are only available in Q(sqrt 5)")
    if ps.degree == 2:
        return Quad(ps.p, 0, 5)
    return euclid_gcd_q5(Quad(ps.p, 0, 5), Quad(-ps.root, 1, 5))


_QUAD_RE = re.compile(r"^\s*(-?\d+)/(\d+) \+ (-?\d+)/(\d+)\*sqrt\((\d+)\)\s*$")
_CUBIC_RE = re.compile(
    r"^\s*(-?\d+(?:/\d+)?) \+ (-?\d+(?:/\d+)?)\*cbrt\((\d+)\) \+ (-?\d+(?:/\d+)?)\*cbrt\(\3\)\^2\s*$"
)


def parse_element(text: str) -> FieldElem:
    """Inverse of :func:`format_quad` / :func:`format_cubic`."""
    m = _QUAD_RE.match(text)
    if m:
        x, dx, y, dy, n = (int(g) for g in m.groups())
        return Quad.from_rationals(Fraction(x, dx), Fraction(y, dy), n)
    m = _CUBIC_RE.match(text)
    if m:
        c0, c1, k, c2 = m.groups()
        return Cubic(Fraction(c0), Fraction(c1), Fraction(c2), k=int(k))
    raise ValueError(f"cannot parse field element {text!r}")


def format_element(a) -> str:
    if isinstance(a, Quad):
        return format_quad(a)
    if isinstance(a, Cubic):
        return format_cubic(a)
    raise TypeError(f"not a field element: {a!r}")
