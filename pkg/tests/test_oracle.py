from math import lcm

import pytest

from cmtrace.catalog import catalog_lookup
from cmtrace.divpoly import h1_polynomial
from cmtrace.ffield import FqElem, factor_degrees, gf
from cmtrace.numfield import FieldSpec, Quad, prime_spec
from cmtrace.oracle import (
    OracleBoundExceeded,
    ReducedCurve,
    _add,
    _points,
    brute_group_structure,
    count_points,
    frobenius_on_C5,
    reduce_curve,
)
from cmtrace.verify import qualifying_primes


def curve(p, a4, a6, degree=1):
    F = gf(p, degree)
    return ReducedCurve(F, FqElem(F, F.raw(a4)), FqElem(F, F.raw(a6)))


def naive_count(c):
    F = c.field
    squares = {}
    for y in F.elements():
        s = F.mul(y, y)
        squares[s] = squares.get(s, 0) + 1
    return 1 + sum(squares.get(c.rhs(x), 0) for x in F.elements())


def test_count_minus15_at_61():
    rec = catalog_lookup(-15)
    E = reduce_curve(rec, prime_spec(61, rec.field, 26))
    assert (E.a4.value, E.a6.value) == (11, 59)
    assert count_points(E) == 64


def test_count_tiny_curve():
    assert count_points(curve(3, 1, 0)) == 4


@pytest.mark.parametrize("p, a4, a6, degree", [(7, 1, 3, 1), (61, 11, 59, 1), (101, 2, 7, 1), (7, 3, 2, 2), (13, 1, 1, 2)])
def test_count_matches_enumeration(p, a4, a6, degree):
    c = curve(p, a4, a6, degree)
    n = count_points(c)
    assert n == naive_count(c)
    assert (n - c.q - 1) ** 2 <= 4 * c.q


def test_count_bound():
    with pytest.raises(OracleBoundExceeded):
        count_points(curve(503, 1, 1))
    with pytest.raises(OracleBoundExceeded):
        count_points(curve(211, 1, 1, 2))


def test_singular_curve_rejected():
    with pytest.raises(ArithmeticError):
        curve(7, 0, 0)


def test_group_examples(prime_of):
    rec = catalog_lookup(-15)
    assert brute_group_structure(reduce_curve(rec, prime_spec(61, rec.field, 26))) == (16, 4)
    rec = catalog_lookup(-32)
    E = reduce_curve(rec, prime_of(Quad(1, -3, 2), FieldSpec("quadratic", 2)))
    assert brute_group_structure(E) == (24, 1)


def test_group_of_prime_order_is_cyclic():
    seen = 0
    for a6 in range(1, 30):
        try:
            c = curve(31, 1, a6)
        except ArithmeticError:
            continue
        n = count_points(c)
        if all(n % k for k in range(2, n)):
            assert brute_group_structure(c) == (n, 1)
            seen += 1
    assert seen


def _exponent_and_count(c):
    """Exponent of the group by repeated addition of every point."""
    pts = _points(c)
    exp = 1
    for P in pts:
        k, Q = 1, P
        while Q is not None:
            Q = _add(c, Q, P)
            k += 1
        exp = lcm(exp, k)
    return exp, len(pts) + 1


@pytest.mark.parametrize("p", [13, 29, 37, 41, 53])
def test_group_structure_properties(p):
    for a4 in range(1, 6):
        for a6 in range(0, 6):
            try:
                c = curve(p, a4, a6)
            except ArithmeticError:
                continue
            d1, d2 = brute_group_structure(c)
            exp, n = _exponent_and_count(c)
            assert d1 * d2 == n and d1 % d2 == 0 and (p - 1) % d2 == 0
            assert d1 == exp


@pytest.mark.parametrize("gen, r", [(Quad.half(31, 1, 5), 3), (Quad.half(33, 5, 5), 1), (Quad(16, 1, 5), 1)])
def test_frobenius_on_c5_examples(prime_of, gen, r):
    assert frobenius_on_C5(catalog_lookup(-235), prime_of(gen)) == r


def test_frobenius_on_c5_requires_s5():
    rec = catalog_lookup(-15)
    with pytest.raises(ValueError):
        frobenius_on_C5(rec, prime_spec(61, rec.field, 26))


def test_frobenius_on_c5_consistent_with_splitting():
    for d in (-20, -35, -40, -115, -235):
        rec = catalog_lookup(d)
        for ps in qualifying_primes(rec, 300, 0):
            r = frobenius_on_C5(rec, ps)
            degs = factor_degrees(h1_polynomial(rec).reduce(ps))
            assert degs == ([1, 1] if r in (1, 4) else [2])
