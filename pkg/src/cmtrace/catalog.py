"""CM curves with class number 2 and 3: coefficients, torsion data, j-invariants
and class equations, stored as exact literals, plus self-validation.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .divpoly import FieldPoly, division_polynomial, h1_polynomial, weierstrass_rhs
from .numfield import (
    BadReduction,
    Cubic,
    FieldSpec,
    PrimeSpec,
    Quad,
    format_element,
    parse_element,
    reduce_element,
)

SUPPORTED_DISCRIMINANTS = (
    -15, -20, -24, -32, -35, -36, -40, -48, -51, -60, -64,
    -72, -75, -99, -108, -112, -115, -123, -147, -235, -243, -267,
)  # fmt: skip


class UnsupportedDiscriminant(LookupError):
    """No catalog curve for this discriminant."""


@dataclass(frozen=True)
class CurveRecord:
    """One curve y^2 = x^3 + Ax + B over F with CM by the order of discriminant d.

    ``class_eq`` lists the integer coefficients of the class equation from the
    leading one down. ``h1`` holds the coefficients (constant term first) of the
    stored quadratic factor of Psi_5 when s = 5. ``xT`` is the second
    F-rational root of Psi_4/(2y) for s = 4.
    """

    d: int
    m: int
    f0: int
    f: int
    s: int
    field: FieldSpec
    A: object
    B: object
    j: object
    class_eq: tuple[int, ...]
    alpha: object = None
    xQ: object = None
    xT: object = None
    yQsq: object = None
    h1: tuple = ()
    ray_case: int | None = None
    conjugated: bool = False

    @property
    def mf2(self) -> int:
        return self.m * self.f * self.f

    @property
    def kind(self) -> str:
        return self.field.kind


def _q(n):
    def make(a, b=0):
        return Quad.from_rationals(Fraction(a), Fraction(b), n)

    return make


Q2, Q3, Q5, Q6, Q7 = _q(2), _q(3), _q(5), _q(6), _q(7)
Q17, Q21, Q33, Q41, Q89 = _q(17), _q(21), _q(33), _q(41), _q(89)
E5 = Quad.half(1, 1, 5)
F = Fraction


def _quad_field(n):
    return FieldSpec("quadratic", n)


def _build() -> dict[int, CurveRecord]:
    recs = [
        CurveRecord(
            -15, 15, 1, 1, 3, _quad_field(5),
            Q5(105, 48), Q5(-784, -350), Quad.half(-191025, 85995, 5),
            (1, 191025, -121287375),
            alpha=E5, xQ=Q5(6, 3), yQsq=16 * E5**11,
        ),
        CurveRecord(
            -24, 6, 1, 1, 3, _quad_field(2),
            Q2(-21, 12), Q2(-28, 22), Q2(2417472, 1707264),
            (1, -4834944, 14670139392),
            alpha=Q2(1, 1), xQ=Q2(-3, 3), yQsq=2 * Q2(1, -1) ** 6 * Q2(1, 1),
        ),
        CurveRecord(
            -36, 1, 3, 3, 3, _quad_field(3),
            Q3(-120, -42), Q3(448, 336), Q3(76771008, 44330496),
            (1, -153542016, -1790957481984),
            alpha=Q3(1, 1), xQ=Q3(3, 3), yQsq=4 * Q3(2, -1) ** 2 * Q3(1, 1),
        ),
        CurveRecord(
            -48, 3, 4, 2, 3, _quad_field(3),
            Q3(-1035, -240), Q3(12122, 5280), Q3(1417905000, 818626500),
            (1, -2835810000, 6549518250000),
            alpha=Q3(8, 6), xQ=Q3(-9, 18),
            yQsq=4 * Q3(2, -1) ** 4 * Q3(1, -2) ** 2 * Q3(8, 6),
        ),
        CurveRecord(
            -51, 51, 1, 1, 3, _quad_field(17),
            Q17(-60, -12), Q17(-210, -56), Q17(-2770550784, -671956992),
            (1, 5541101568, 6262062317568),
            alpha=Q17(-2), xQ=Q17(-6), yQsq=-2 * Q17(4, -1) ** 2,
        ),
        CurveRecord(
            -60, 15, 2, 1, 3, _quad_field(5),
            Quad.half(-645, 201, 5), Q5(1694, -924), Quad.half(37018076625, 16554983445, 5),
            (1, -37018076625, 153173312762625),
            alpha=Q5(-1), xQ=-Quad.half(45, -15, 5), yQsq=-16 * Quad.half(1, -1, 5) ** 16,
        ),
        CurveRecord(
            -72, 2, 3, 3, 3, _quad_field(6),
            Q6(-1470, -360), Q6(19208, 10080), Q6(188837384000, 77092288000),
            (1, -377674768000, 232381513792000000),
            alpha=Q6(2, 1), xQ=Q6(6, 9), yQsq=4 * Q6(5, -2) ** 2 * Q6(2, 1),
        ),
        CurveRecord(
            -75, 3, 5, 5, 3, _quad_field(5),
            Q5(-2160, 408), Q5(42130, -10472), Q5(-327201914880, 146329141248),
            (1, 654403829760, 5209253090426880),
            alpha=Q5(-25, -13), xQ=-Q5(15, 21),
            yQsq=Q5(-25, -13) * Q5(4, -1) ** 2 * E5**14,
        ),
        CurveRecord(
            -99, 11, 3, 3, 3, _quad_field(33),
            Q33(-45012, 7836), Q33(-5198438, 904932), Q33(-18808030478336, 3274057859072),
            (1, 37616060956672, -56171326053810176),
            alpha=Q33(-2), xQ=-Q33(87, -15), yQsq=Q33(-2),
        ),
        CurveRecord(
            -123, 123, 1, 1, 3, _quad_field(41),
            Q41(-960, 120), Q41(-13314, 2240), Q41(-677073420288000, 105741103104000),
            (1, 1354146840576 * 10**3, 148809594175488 * 10**6),
            alpha=Q41(-2), xQ=Q41(-24), yQsq=-2 * Q41(32, 5) ** 2,
        ),
        CurveRecord(
            -147, 3, 7, 7, 3, _quad_field(21),
            Q21(-2520, -240), Q21(-31724, -11418),
            Q21(-17424252776448000, 3802283679744000),
            (1, 34848505552896 * 10**3, 11356800389480448 * 10**6),
            alpha=Q21(7, -1), xQ=Q21(63, 9), yQsq=Q21(7, -1) * Quad.half(5, 1, 21) ** 8,
        ),
        CurveRecord(
            -267, 267, 1, 1, 3, _quad_field(89),
            Q89(-37500, 3180), Q89(3250002, -371000),
            Q89(-9841545927039744000000, 1043201781864732672000),
            (1, 19683091854079488 * 10**6, 531429662672621376897024 * 10**6),
            alpha=Q89(2), xQ=Q89(150), yQsq=2 * Q89(500, 53) ** 2,
        ),
        CurveRecord(
            -32, 2, 2, 2, 4, _quad_field(2),
            Q2(-105, -90), Q2(630, 518), Q2(26125000, 18473000),
            (1, -52250000, 12167000000),
            alpha=Q2(-3, 3), xQ=Q2(3, 5), xT=Q2(9, -1),
        ),
        CurveRecord(
            -64, 1, 4, 4, 4, _quad_field(2),
            Q2(-91, -60), Q2(462, 308), Q2(41113158120, 29071392966),
            (1, -82226316240, -7367066619912),
            alpha=Q2(1), xQ=Q2(5, 2), xT=Q2(-1, 6),
        ),
        CurveRecord(
            -112, 7, 4, 2, 4, _quad_field(7),
            Q7(-725, -240), Q7(9520, 3698), Q7(137458661985000, 51954490735875),
            (1, -274917323970000, 1337635747140890625),
            alpha=Q7(1), xQ=Q7(24, -1), xT=Q7(8, 5),
        ),
        CurveRecord(
            -20, 5, 1, 1, 5, _quad_field(5),
            Q5(F(-50, 3), -5), Q5(F(100, 3), F(280, 27)), Q5(632000, 282880),
            (1, -1264000, -681472000),
            h1=(Q5(F(65, 9), F(14, 3)), Q5(-5, F(-5, 3)), Q5(1)),
            ray_case=-20,
        ),
        CurveRecord(
            -35, 35, 1, 1, 5, _quad_field(5),
            Q5(0, F(-70, 3)), Q5(F(13475, 108), F(980, 108)), Q5(-58982400, -26378240),
            (1, 117964800, -134217728000),
            h1=(Q5(F(175, 6), F(-133, 18)), Q5(F(35, 6), F(-35, 6)), Q5(1)),
            ray_case=-35,
        ),
        CurveRecord(
            -40, 10, 1, 1, 5, _quad_field(5),
            Q5(-125, 15), Q5(-200, 240), Q5(212846400, 95178240),
            (1, -425692800, 9103145472000),
            h1=(Q5(125, -39), Q5(10, -10), Q5(1)),
            ray_case=-40,
        ),
        CurveRecord(
            -115, 115, 1, 1, 5, _quad_field(5),
            Q5(-345, -23), Q5(F(-19573, 4), F(-5290, 4)),
            Q5(-213932305612800, 95673435586560),
            (1, 427864611225600, 130231327260672000),
            h1=(Q5(F(3289, 2), F(6923, 10)), Q5(F(-115, 2), F(-69, 2)), Q5(1)),
            ray_case=-115,
        ),
        CurveRecord(
            -235, 235, 1, 1, 5, _quad_field(5),
            Q5(-15510, 2068), Q5(F(3200841, 4), F(-649446, 4)),
            Q5(-411588709724712960000, -184068066743177379840),
            (1, 82317741944942592 * 10**4, 11946621170462723407872 * 10**3),
            h1=(Q5(624160, -262918), Q5(3525, -2115), Q5(10)),
            ray_case=-235,
        ),
        CurveRecord(
            -108, 3, 6, 3, 3, FieldSpec("cubic", 2),
            Cubic(-135, -90, 105, k=2), Cubic(526, 738, -738, k=2),
            Cubic(50337742902000, 39953093016000, 31710790944000, k=2),
            (1, -151013228706 * 10**3, 224179462188 * 10**6, -1879994705688 * 10**9),
            alpha=Cubic(-1, 1, k=2), xQ=Cubic(9, -3, k=2),
            yQsq=4 * Cubic(1, -1, k=2) ** 8 * Cubic(-1, 1, k=2),
        ),
        CurveRecord(
            -243, 3, 9, 9, 3, FieldSpec("cubic", 3),
            Cubic(-1560, 0, 720, k=3), Cubic(32258, -11124, -7704, k=3),
            Cubic(-618587635244888064000, -428904711070941184000, -297385917043138560000, k=3),
            (1, 1855762905734664192 * 10**3, -3750657365033091072 * 10**6, 3338586724673519616 * 10**9),
            alpha=Cubic(-4, 0, 2, k=3), xQ=Cubic(42, 0, -18, k=3),
            yQsq=Cubic(-2, 0, 1, k=3) ** 8 * Cubic(-4, 0, 2, k=3),
        ),
    ]  # fmt: skip
    return {r.d: r for r in recs}


_CATALOG = _build()


def catalog_lookup(d: int) -> CurveRecord:
    """The catalog record for discriminant ``d``."""
    try:
        return _CATALOG[d]
    except KeyError:
        raise UnsupportedDiscriminant(f"unsupported discriminant {d}") from None


def all_records() -> list[CurveRecord]:
    return [_CATALOG[d] for d in SUPPORTED_DISCRIMINANTS]


def conjugate(rec: CurveRecord) -> CurveRecord:
    """The curve obtained by applying sqrt(n) -> -sqrt(n) to every coefficient."""
    if rec.kind != "quadratic":
        raise ValueError("conjugation is only defined for quadratic fields")

    def c(x):
        return None if x is None else x.conj()

    return replace(
        rec,
        A=c(rec.A), B=c(rec.B), j=c(rec.j), alpha=c(rec.alpha), xQ=c(rec.xQ),
        xT=c(rec.xT), yQsq=c(rec.yQsq), h1=tuple(x.conj() for x in rec.h1),
        conjugated=not rec.conjugated,
    )  # fmt: skip


# --- validation ----------------------------------------------------------------


@dataclass
class ValidationReport:
    d: int
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]


def j_invariant(A, B):
    """6912 A^3 / (4A^3 + 27B^2)."""
    A3 = A * A * A
    return 6912 * A3 / (4 * A3 + 27 * B * B)


def class_polynomial(rec: CurveRecord) -> FieldPoly:
    return FieldPoly([rec.j * 0 + c for c in reversed(rec.class_eq)])


def validate_record(rec: CurveRecord) -> ValidationReport:
    """Check the structural and arithmetic invariants of a record; never raises."""
    rep = ValidationReport(rec.d)
    m, f0, f = rec.m, rec.f0, rec.f
    expected_d = -m * f0 * f0 if m % 4 == 3 else -4 * m * f0 * f0
    rep.add("discriminant", rec.d == expected_d, f"-m f0^2 form gives {expected_d}")
    expected_f = f0 // 2 if m % 4 == 3 and f0 % 2 == 0 else f0
    rep.add("conductor", f == expected_f, f"expected f = {expected_f}")
    rep.add("torsion level", rec.s in (3, 4, 5) and rec.mf2 % rec.s == 0, f"s = {rec.s}")
    rep.add("class equation", not class_polynomial(rec)(rec.j), "H(j) = 0")
    try:
        jj = j_invariant(rec.A, rec.B)
        rep.add("j invariant", jj == rec.j, f"6912A^3/(4A^3+27B^2) = {jj}")
    except ZeroDivisionError:
        rep.add("j invariant", False, "singular curve")
    psi = division_polynomial(rec.s, rec.A, rec.B)
    if rec.s in (3, 4):
        rep.add("torsion root", rec.xQ is not None and not psi(rec.xQ), "Psi_s(x_Q) = 0")
    else:
        h1 = h1_polynomial(rec)
        rem = psi.divmod(h1)[1] if h1 else psi
        rep.add("torsion root", h1.degree() == 2 and not rem, "H_1 divides Psi_5")
    if rec.s == 4:
        ok = rec.xT is not None and rec.xT != rec.xQ and not psi(rec.xT)
        rep.add("second root", ok, "Psi_4/(2y)(x_T) = 0, x_T != x_Q")
    if rec.yQsq is not None:
        rep.add("y_Q^2", weierstrass_rhs(rec.A, rec.B)(rec.xQ) == rec.yQsq, "h(x_Q) = y_Q^2")
    return rep


def has_good_reduction(rec: CurveRecord, ps: PrimeSpec) -> bool:
    """Whether A, B reduce modulo ``ps`` and 4A^3 + 27B^2 stays nonzero."""
    if ps.field != rec.field:
        raise ValueError(f"{ps} is not a prime of {rec.field}")
    try:
        a4 = reduce_element(rec.A, ps)
        a6 = reduce_element(rec.B, ps)
    except BadReduction:
        return False
    return bool(4 * a4 * a4 * a4 + 27 * a6 * a6)


# --- export --------------------------------------------------------------------

_ELEMENT_FIELDS = ("A", "B", "j", "alpha", "xQ", "xT", "yQsq")
_INT_FIELDS = ("d", "m", "f0", "f", "s")


def record_to_dict(rec: CurveRecord) -> dict:
    """JSON-ready dict; field elements and class-equation coefficients become exact strings."""
    out = {k: getattr(rec, k) for k in _INT_FIELDS}
    out["field"] = {"kind": rec.field.kind, "radicand": rec.field.radicand}
    for k in _ELEMENT_FIELDS:
        v = getattr(rec, k)
        out[k] = None if v is None else format_element(v)
    out["h1"] = [format_element(c) for c in rec.h1]
    out["class_eq"] = [str(c) for c in rec.class_eq]
    out["ray_case"] = rec.ray_case
    out["conjugated"] = rec.conjugated
    return out


def record_from_dict(obj: dict) -> CurveRecord:
    kw = {k: int(obj[k]) for k in _INT_FIELDS}
    kw["field"] = FieldSpec(obj["field"]["kind"], int(obj["field"]["radicand"]))
    for k in _ELEMENT_FIELDS:
        v = obj.get(k)
        kw[k] = None if v is None else parse_element(v)
    kw["h1"] = tuple(parse_element(c) for c in obj.get("h1", []))
    kw["class_eq"] = tuple(int(c) for c in obj["class_eq"])
    kw["ray_case"] = obj.get("ray_case")
    kw["conjugated"] = bool(obj.get("conjugated", False))
    return CurveRecord(**kw)


def export_json(records=None) -> str:
    records = all_records() if records is None else records
    return json.dumps([record_to_dict(r) for r in records], indent=2)


def import_json(text: str) -> list[CurveRecord]:
    return [record_from_dict(o) for o in json.loads(text)]


TSV_COLUMNS = (*_INT_FIELDS, "field", *_ELEMENT_FIELDS, "h1", "class_eq", "ray_case")


def export_tsv(records=None) -> str:
    """One row per record; list columns are ';'-separated, empty cells mean absent."""
    records = all_records() if records is None else records
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(TSV_COLUMNS)
    for r in records:
        obj = record_to_dict(r)
        row = []
        for col in TSV_COLUMNS:
            v = obj[col]
            if col == "field":
                v = str(r.field)
            elif isinstance(v, list):
                v = ";".join(v)
            row.append("" if v is None else str(v))
        w.writerow(row)
    return buf.getvalue()


def import_tsv(text: str) -> list[CurveRecord]:
    rows = list(csv.reader(io.StringIO(text), delimiter="\t"))
    header, body = rows[0], rows[1:]
    out = []
    for row in body:
        cell = dict(zip(header, row))
        kind = "quadratic" if cell["field"].startswith("Q(sqrt") else "cubic"
        radicand = int(cell["field"].split("(")[2].rstrip(")"))
        obj = {k: int(cell[k]) for k in _INT_FIELDS}
        obj["field"] = {"kind": kind, "radicand": radicand}
        for k in _ELEMENT_FIELDS:
            obj[k] = cell[k] or None
        obj["h1"] = cell["h1"].split(";") if cell["h1"] else []
        obj["class_eq"] = cell["class_eq"].split(";")
        obj["ray_case"] = int(cell["ray_case"]) if cell["ray_case"] else None
        out.append(record_from_dict(obj))
    return out
