from dataclasses import replace

import pytest

from cmtrace.catalog import (
    SUPPORTED_DISCRIMINANTS,
    UnsupportedDiscriminant,
    all_records,
    catalog_lookup,
    conjugate,
    export_json,
    export_tsv,
    has_good_reduction,
    import_json,
    import_tsv,
    j_invariant,
    validate_record,
)
from cmtrace.divpoly import division_polynomial
from cmtrace.numfield import FieldSpec, PrimeSpec, Quad, prime_spec, primes_above


def test_supported_list():
    assert len(SUPPORTED_DISCRIMINANTS) == 22
    assert -100 not in SUPPORTED_DISCRIMINANTS
    assert [r.d for r in all_records()] == list(SUPPORTED_DISCRIMINANTS)


def test_lookup_minus15():
    rec = catalog_lookup(-15)
    assert rec.A == Quad(105, 48, 5) and rec.B == Quad(-784, -350, 5)
    assert rec.alpha == Quad.half(1, 1, 5) and rec.s == 3


def test_lookup_minus24():
    rec = catalog_lookup(-24)
    assert rec.A == Quad(-21, 12, 2) and rec.B == Quad(-28, 22, 2)
    assert rec.alpha == Quad(1, 1, 2) and rec.s == 3


@pytest.mark.parametrize("d", [-100, -999, 0, 15])
def test_unsupported(d):
    with pytest.raises(UnsupportedDiscriminant):
        catalog_lookup(d)


@pytest.mark.parametrize("rec", all_records(), ids=lambda r: str(r.d))
def test_every_record_validates(rec):
    rep = validate_record(rec)
    assert rep.ok, rep.failures()
    if rec.kind == "quadratic":
        assert validate_record(conjugate(rec)).ok


def test_class_equation_values():
    rec = catalog_lookup(-15)
    assert rec.j == Quad.half(-191025, 85995, 5)
    assert rec.class_eq == (1, 191025, -121287375)
    j = catalog_lookup(-32).j
    assert j == Quad(26125000, 18473000, 2)
    assert j * j - 52250000 * j + 12167000000 == 0


def test_degenerate_record_fails_j_check():
    rec = replace(catalog_lookup(-15), A=Quad(0, 0, 5))
    rep = validate_record(rec)
    assert "j invariant" in rep.failures()
    assert j_invariant(rec.A, rec.B) == 0


def test_s4_records_have_two_distinct_roots():
    for rec in all_records():
        if rec.s == 4:
            psi = division_polynomial(4, rec.A, rec.B)
            assert rec.xQ != rec.xT
            assert not psi(rec.xQ) and not psi(rec.xT)


def test_good_reduction_examples():
    rec = catalog_lookup(-15)
    assert has_good_reduction(rec, prime_spec(61, rec.field, 26))
    rec = catalog_lookup(-235)
    assert all(not has_good_reduction(rec, ps) for ps in primes_above(47, rec.field))


def test_prime_two_rejected():
    with pytest.raises(ValueError):
        PrimeSpec(2, FieldSpec("quadratic", 5), 1, 1)


def test_good_reduction_wrong_field():
    rec = catalog_lookup(-24)
    with pytest.raises(ValueError):
        has_good_reduction(rec, prime_spec(61, FieldSpec("quadratic", 5), 26))


def test_json_round_trip():
    assert import_json(export_json()) == all_records()


def test_tsv_round_trip():
    text = export_tsv()
    assert len(text.strip().splitlines()) == 23
    assert import_tsv(text) == all_records()


def test_conjugate_is_involution():
    for rec in all_records():
        if rec.kind == "quadratic":
            assert conjugate(conjugate(rec)) == rec
