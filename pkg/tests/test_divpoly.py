import pytest

from cmtrace.catalog import all_records, catalog_lookup, conjugate
from cmtrace.divpoly import FieldPoly, division_polynomial, h1_polynomial, weierstrass_rhs
from cmtrace.ffield import FqElem, gf
from cmtrace.numfield import FieldSpec, Quad, prime_spec
from cmtrace.oracle import ReducedCurve, _mul


def q5(x, y=0, den=1):
    return Quad(x, y, 5, den)


def test_psi3_trivial_curve():
    psi = division_polynomial(3, q5(0), q5(1))
    assert psi == FieldPoly([q5(0), q5(12), q5(0), q5(0), q5(3)])


def test_psi3_root_for_minus15():
    psi = division_polynomial(3, q5(105, 48), q5(-784, -350))
    assert not psi(q5(6, 3))


def test_psi4_rational_roots_for_minus32():
    A, B = Quad(-105, -90, 2), Quad(630, 518, 2)
    psi = division_polynomial(4, A, B)
    assert psi.degree() == 6
    assert not psi(Quad(3, 5, 2)) and not psi(Quad(9, -1, 2))


def test_unsupported_level():
    with pytest.raises(ValueError):
        division_polynomial(7, q5(1), q5(1))


def test_h1_examples():
    rec = catalog_lookup(-235)
    assert h1_polynomial(rec) == FieldPoly([q5(624160, -262918), q5(3525, -2115), q5(10)])
    assert h1_polynomial(catalog_lookup(-15)) == FieldPoly([q5(-6, -3), q5(1)])


def test_h1_minus20_is_minimal_polynomial_of_shifted_root():
    # x_Q = c + t with t^2 = m/(sqrt5 e), m = 5; the factor is (x - c)^2 - m/(sqrt5 e)
    rec = catalog_lookup(-20)
    e = Quad.half(1, 1, 5)
    c = 5 * e * e / 3
    t2 = 5 / (Quad(0, 1, 5) * e)
    expected = FieldPoly([c * c - t2, -2 * c, q5(1)])
    assert h1_polynomial(rec).monic() == expected


@pytest.mark.parametrize("rec", all_records(), ids=lambda r: str(r.d))
def test_h1_divides_division_polynomial(rec):
    h1 = h1_polynomial(rec)
    q, r = division_polynomial(rec.s, rec.A, rec.B).divmod(h1)
    assert not r
    if rec.s in (3, 5):
        assert h1.degree() == (rec.s - 1) // 2
    if rec.kind == "quadratic":
        c = conjugate(rec)
        assert not division_polynomial(c.s, c.A, c.B).divmod(h1_polynomial(c))[1]


@pytest.mark.parametrize("p, A, B", [(11, 2, 5), (19, 1, 7), (29, 5, 1), (31, 3, 13), (41, 7, 9)])
def test_division_polynomial_roots_are_torsion_abscissas(p, A, B):
    # x in F_p is a root iff the lifted point over F_p^2 has exact order s
    # (order exactly 4 for the reduced fourth polynomial)
    ps = prime_spec(p, FieldSpec("quadratic", 5))
    F2 = gf(p, 2)
    c = ReducedCurve(F2, FqElem(F2, F2.raw(A)), FqElem(F2, F2.raw(B)))
    for s in (3, 4, 5):
        psi = division_polynomial(s, q5(A), q5(B)).reduce(ps)
        for x in range(p):
            y = F2.sqrt(c.rhs(F2.raw(x)))
            P = (F2.raw(x), y)
            exact = _mul(c, s, P) is None and (s != 4 or _mul(c, 2, P) is not None)
            assert exact == (not psi(FqElem(psi.field, x)))


def test_weierstrass_rhs():
    h = weierstrass_rhs(q5(2), q5(3))
    assert h(q5(2)) == 8 + 4 + 3
