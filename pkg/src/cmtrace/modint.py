"""Exact modular arithmetic on unbounded integers.

Legendre symbols, square roots modulo primes and prime powers, and the
decomposition ``4q = u^2 + D v^2`` used to pin down the absolute value of a
Frobenius trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

# Deterministic Miller-Rabin witness sets (Jaeschke / Sorenson-Webster bounds).
_MR_SMALL = (2, 3, 5, 7, 11, 13, 17)
_MR_SMALL_BOUND = 341_550_071_728_321
_MR_LARGE = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LARGE_BOUND = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n < 3.3e24``."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % sp == 0:
            return n == sp
    if n >= _MR_LARGE_BOUND:
        raise ValueError(f"primality of {n} is outside the deterministic range")
    bases = _MR_SMALL if n < _MR_SMALL_BOUND else _MR_LARGE
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive ``n``."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1}; ``p`` must be an odd prime."""
    _require_odd_prime(p)
    return jacobi_symbol(a, p)


def _smallest_nonresidue(p: int) -> int:
    z = 2
    while jacobi_symbol(z, p) != -1:
        z += 1
    return z


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Smaller square root of ``a`` modulo the odd prime ``p``.

    Returns 0 when ``p | a`` and None when ``a`` is a non-residue. Uses
    Tonelli-Shanks with the smallest non-residue as auxiliary, so the output
    is deterministic.
    """
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    if jacobi_symbol(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        c = pow(_smallest_nonresidue(p), q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
    return min(r, p - r)


def sqrt_mod_prime_power(a: int, p: int, k: int) -> int | None:
    """A square root of ``a`` modulo ``p**k`` for ``a`` a unit mod ``p`` (Hensel lift)."""
    r = sqrt_mod_prime(a, p)
    if r is None or a % p == 0:
        return None
    mod = p
    for _ in range(1, k):
        mod *= p
        # r <- r - (r^2 - a) / (2r)  (mod p^j)
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r


@dataclass(frozen=True)
class CornacchiaSolution:
    """Positive solution of ``u^2 + D v^2 = 4q`` with ``gcd(u, p) = 1``."""

    u: int
    v: int
    D: int
    q: int

    def __post_init__(self):
        if self.u <= 0 or self.v <= 0 or self.u * self.u + self.D * self.v * self.v != 4 * self.q:
            raise ValueError(f"invalid Cornacchia solution {self}")


def _prime_power_exponent(q: int, p: int) -> int:
    ell, r = 0, q
    while r % p == 0:
        r //= p
        ell += 1
    if r != 1 or ell == 0:
        raise ValueError(f"{q} is not a power of {p}")
    return ell


def _primitive_reps(D: int, M: int, roots: list[int]) -> set[tuple[int, int]]:
    """Primitive solutions of x^2 + D y^2 = M via Cornacchia's reduction."""
    out = set()
    bound = isqrt(M)
    for r0 in roots:
        a, b = M, r0 % M
        if b > M // 2:
            b = M - b
        while b > bound:
            a, b = b, a % b
        rest = M - b * b
        if rest <= 0 or rest % D:
            continue
        c = isqrt(rest // D)
        if c * c * D == rest and gcd(b, c) == 1:
            out.add((b, c))
    return out


def _roots_of_minus_d(D: int, p: int, ell: int, four: bool) -> list[int]:
    """All square roots of -D modulo p^ell (times 4 when ``four``)."""
    pk = p**ell
    r = sqrt_mod_prime_power(-D, p, ell)
    if r is None:
        return []
    odd_roots = {r, pk - r}
    if not four:
        return sorted(odd_roots)
    if (-D) % 4 != 1:
        return []
    roots = set()
    for s in odd_roots:
        for t in (1, 3):
            # CRT: x = s mod p^ell, x = t mod 4
            x = s + pk * (((t - s) * pow(pk, -1, 4)) % 4)
            roots.add(x % (4 * pk))
    return sorted(roots)


def cornacchia_4q(D: int, q: int, p: int) -> CornacchiaSolution | None:
    """The unique ``(u, v)`` with ``u, v > 0``, ``u^2 + D v^2 = 4q``, ``p`` not dividing ``u``.

    ``q`` must be a power of the odd prime ``p`` and ``D > 4``. Returns None
    when no such representation exists.
    """
    if D <= 0 or p % 2 == 0:
        raise ValueError("need D > 0 and p odd")
    ell = _prime_power_exponent(q, p)
    if D % p == 0:
        return None
    sols: set[tuple[int, int]] = set()
    if D % 4 == 0:
        # u even: (u/2)^2 + (D/4) v^2 = q
        d4 = D // 4
        for x, y in _primitive_reps(d4, q, _roots_of_minus_d(d4, p, ell, False)):
            sols.add((2 * x, y))
    else:
        for x, y in _primitive_reps(D, q, _roots_of_minus_d(D, p, ell, False)):
            sols.add((2 * x, 2 * y))
        if D % 4 == 3:
            for x, y in _primitive_reps(D, 4 * q, _roots_of_minus_d(D, p, ell, True)):
                if x % 2 and y % 2:
                    sols.add((x, y))
    sols = {(u, v) for u, v in sols if u % p}
    if not sols:
        return None
    if len(sols) > 1:
        raise ArithmeticError(f"non-unique representation of 4*{q} by u^2+{D}v^2: {sorted(sols)}")
    u, v = sols.pop()
    return CornacchiaSolution(u, v, D, q)


def cornacchia_4q_search(D: int, q: int, p: int) -> CornacchiaSolution | None:
    """Bounded search over ``v <= 2 sqrt(q/D)``; slow reference for :func:`cornacchia_4q`."""
    sols = []
    v = 1
    while D * v * v < 4 * q:
        rest = 4 * q - D * v * v
        u = isqrt(rest)
        if u * u == rest and u % p:
            sols.append((u, v))
        v += 1
    if not sols:
        return None
    if len(sols) > 1:
        raise ArithmeticError(f"non-unique representation of 4*{q} by u^2+{D}v^2: {sols}")
    return CornacchiaSolution(sols[0][0], sols[0][1], D, q)
