"""Ray class groups of Q(sqrt 5) for moduli (c*sqrt 5), optionally with the
real place where sqrt 5 -> -sqrt 5.

Q(sqrt 5) has class number 1, so the class of a prime ideal (gamma) prime to
the modulus is the image of gamma in ((O/m)^x x {+-1}) / <-1, e>. Elements of
O = Z[e], e = (1+sqrt 5)/2, are handled as pairs (a, b) meaning a + b*e.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .numfield import FieldSpec, PrimeSpec, Quad, ideal_generator

Q5 = FieldSpec("quadratic", 5)


class RayClassIntegrityError(AssertionError):
    """A tabulated generator order or subgroup index does not match the computation."""


def _q(x, y=0):
    return Quad(x, y, 5)


def _h(x, y):
    return Quad.half(x, y, 5)


# generators are (name, generator of the ideal, claimed order); subgroups are lists of words
_CASES = {
    -20: dict(
        c=8, infinite=False, k=1, base=2,
        generators=[("g1", _h(21, 1), 4), ("g2", _q(11, 2), 2)],
        pM=[{"g1": 2, "g2": 1}],
        distinguished=("g1", None), D=None,
    ),
    -35: dict(
        c=14, infinite=True, k=1, base=3,
        generators=[("h", _q(6, 1), 12)],
        pM=[{"h": 4}],
        distinguished=("h", None), D=None,
    ),
    -40: dict(
        c=16, infinite=True, k=1, base=2,
        generators=[("g", _q(6, 1), 4), ("h", _h(53, 3), 4), ("l", _h(37, 7), 2)],
        pM=[{"h": 1}, {"l": 1}],
        distinguished=("g", None), D=None,
    ),
    -115: dict(
        c=92, infinite=True, k=33, base=3,
        generators=[("f1", _h(1, 3), 132), ("f2", _q(24, 23), 2), ("f3", _q(91), 2)],
        pM=[{"f1": 4}, {"f2": 1}, {"f3": 1}],
        distinguished=("f0", (_q(423, 372), {"f1": 33})),
        D=[{"f2": 1}, {"f3": 1}],
    ),
    -235: dict(
        c=188, infinite=True, k=69, base=3,
        generators=[("g", _h(1, 3), 276), ("k", _q(46, 47), 2), ("l", _q(471), 2)],
        pM=[{"g": 4}, {"k": 1}, {"l": 1}],
        distinguished=("m", (_q(743, 756), {"g": 69})),
        D=[{"k": 1}, {"l": 1}],
    ),
}  # fmt: skip

RAY_CASES = tuple(sorted(_CASES, reverse=True))


def to_ab(g: Quad) -> tuple[int, int]:
    """(a, b) with g = a + b*e."""
    if g.n != 5 or not g.is_integral():
        raise ValueError(f"{g!r} is not an integer of Q(sqrt 5)")
    X, Y = g.half_coords()
    return int((X - Y) / 2), int(Y)


class RayCtx:
    """Ray class group for the modulus (c*sqrt 5) (times the conjugate real place if flagged).

    Construction enumerates the residue units, partitions them into cosets of
    the global-unit image and checks every claimed generator order.
    """

    def __init__(self, case: int):
        if case not in _CASES:
            raise ValueError(f"no ray class data for discriminant {case}")
        data = _CASES[case]
        self.case = case
        self.c: int = data["c"]
        self.infinite: bool = data["infinite"]
        self.k: int = data["k"]
        self.base: int = data["base"]
        self.n5c = 5 * self.c
        self.generators = [(n, g, o) for n, g, o in data["generators"]]
        self._gen_by_name = {n: g for n, g, _ in self.generators}
        for name, g, _ in self.generators:
            if not self.is_prime_to_modulus(g):
                raise RayClassIntegrityError(f"generator {name} is not prime to the modulus")

        self.unit_image = self._unit_image()
        self._class_id: dict[tuple, int] = {}
        self._class_rep: list[tuple] = []
        self._partition()
        self.order = len(self._class_rep)

        self.generator_orders = {n: self.class_order(self.class_of(g)) for n, g, _ in self.generators}
        for name, _, claimed in self.generators:
            if self.generator_orders[name] != claimed:
                raise RayClassIntegrityError(
                    f"{case}: generator {name} has order {self.generator_orders[name]}, expected {claimed}"
                )
        self._check_direct_product()

        self.pM = self.subgroup(data["pM"])
        self.index_pM = self.order // len(self.pM)
        if self.index_pM != 4:
            raise RayClassIntegrityError(f"{case}: [P : P_M] = {self.index_pM}, expected 4")

        dname, dinfo = data["distinguished"]
        self.distinguished_name = dname
        if dinfo is None:
            self.distinguished = self.class_of(self._gen_by_name[dname])
        else:
            rep, word = dinfo
            self.distinguished = self.class_of(rep)
            if self.distinguished != self.word_class(word):
                raise RayClassIntegrityError(f"{case}: class of {rep} is not {word}")
        self.D = self.pM if data["D"] is None else self.subgroup(data["D"])
        self._coset_index = self._coset_table()

    # residue arithmetic ---------------------------------------------------

    def residue(self, a: int, b: int, sign: int = 1) -> tuple:
        c = self.c
        kk = b // c
        b0 = b - kk * c
        a0 = (a - 2 * kk * c) % self.n5c
        return (a0, b0, sign if self.infinite else 1)

    def residue_of(self, g: Quad) -> tuple:
        a, b = to_ab(g)
        return self.residue(a, b, g.sign_conjugate())

    def mul(self, x: tuple, y: tuple) -> tuple:
        a, b, s = x
        c, d, t = y
        return self.residue(a * c + b * d, a * d + b * c + b * d, s * t)

    def power(self, x: tuple, n: int) -> tuple:
        result, base = self.residue(1, 0), x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_prime_to_modulus(self, g: Quad) -> bool:
        a, b = to_ab(g)
        return gcd(a * a + a * b - b * b, self.n5c) == 1

    def unit_group_size(self) -> int:
        """|(O/m)^x|, times 2 when the real place is included."""
        n = 0
        for a in range(self.n5c):
            for b in range(self.c):
                if gcd(a * a + a * b - b * b, self.n5c) == 1:
                    n += 1
        return 2 * n if self.infinite else n

    def _unit_image(self) -> frozenset:
        gens = [self.residue(-1, 0, -1), self.residue(0, 1, -1)]
        seen = {self.residue(1, 0)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def _partition(self) -> None:
        units = list(self.unit_image)
        signs = (1, -1) if self.infinite else (1,)
        cid = self._class_id
        for a in range(self.n5c):
            for b in range(self.c):
                if gcd(a * a + a * b - b * b, self.n5c) != 1:
                    continue
                for s in signs:
                    x = (a, b, s)
                    if x in cid:
                        continue
                    idx = len(self._class_rep)
                    self._class_rep.append(x)
                    for u in units:
                        cid[self.mul(x, u)] = idx

    # classes --------------------------------------------------------------

    def class_of(self, g: Quad, power: int = 1) -> int:
        """Class id of the ideal (g)^power."""
        if not self.is_prime_to_modulus(g):
            raise ValueError(f"{g} is not prime to the modulus")
        return self._class_id[self.power(self.residue_of(g), power)]

    def class_mul(self, x: int, y: int) -> int:
        return self._class_id[self.mul(self._class_rep[x], self._class_rep[y])]

    def class_pow(self, x: int, n: int) -> int:
        return self._class_id[self.power(self._class_rep[x], n % self.order if n >= 0 else n)]

    @property
    def identity(self) -> int:
        return self._class_id[self.residue(1, 0)]

    def class_order(self, x: int) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.class_mul(y, x)
            n += 1
        return n

    def word_class(self, word: dict[str, int]) -> int:
        cls = self.identity
        for name, e in word.items():
            cls = self.class_mul(cls, self.class_pow(self.class_of(self._gen_by_name[name]), e))
        return cls

    def subgroup(self, words: list[dict[str, int]]) -> frozenset:
        gens = [self.word_class(w) for w in words]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.class_mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def _check_direct_product(self) -> None:
        prod = 1
        for _, _, o in self.generators:
            prod *= o
        span = self.subgroup([{n: 1} for n, _, _ in self.generators])
        if prod != self.order or len(span) != self.order:
            raise RayClassIntegrityError(
                f"{self.case}: generators span {len(span)} of {self.order} classes, orders multiply to {prod}"
            )

    def _coset_table(self) -> dict[int, int]:
        table: dict[int, int] = {}
        shift = self.identity
        for i in range(4):
            for x in self.D:
                y = self.class_mul(shift, x)
                if y in table:
                    raise RayClassIntegrityError(f"{self.case}: cosets of D overlap")
                table[y] = i
            shift = self.class_mul(shift, self.distinguished)
        return table

    def coset_index(self, cls: int) -> int:
        """The i in {0,1,2,3} with cls in distinguished^i * D."""
        try:
            return self._coset_index[cls]
        except KeyError:
            raise RayClassIntegrityError(f"{self.case}: class {cls} lies outside the four cosets") from None

    def describe(self, cls: int) -> str:
        """The class as a word in the tabulated generators (for display)."""
        names = [n for n, _, _ in self.generators]
        orders = [o for _, _, o in self.generators]
        word = [0] * len(names)
        gens = [self.class_of(g) for _, g, _ in self.generators]
        cur = [self.identity]

        def rec(pos, acc):
            if pos == len(names):
                return acc == cls
            for e in range(orders[pos]):
                word[pos] = e
                if rec(pos + 1, self.class_mul(acc, self.class_pow(gens[pos], e))):
                    return True
            return False

        if not rec(0, cur[0]):
            raise RayClassIntegrityError("class is not a word in the generators")
        parts = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, word) if e]
        return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def build_ray_context(case: int) -> RayCtx:
    return RayCtx(case)


def ray_class_index(ctx: RayCtx, ps: PrimeSpec) -> int:
    """Coset index of the class of ps^k in distinguished^i * D."""
    if ps.field != Q5:
        raise ValueError("ray class index needs a prime of Q(sqrt 5)")
    gamma = ideal_generator(ps)
    if not ctx.is_prime_to_modulus(gamma):
        raise ValueError(f"{ps} divides the modulus")
    return ctx.coset_index(ctx.class_of(gamma, ctx.k))
