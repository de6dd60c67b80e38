"""Metacyclic groups Z/(nN) acting on Z/(q^n - 1) and their exact irreps.

Elements are pairs (k, e) with k mod R = nN and e mod M = q^n - 1, multiplied
by (k, e) * (k', e') = (k + k', e * q^k' + e').  The cyclic part acts through
the Frobenius e -> q e, so irreducible representations are indexed by
Frobenius orbits on Z/M together with a twist s mod R/f (f = orbit size).
Each irrep is realised by explicit monomial matrices over the cyclotomic ring,
so characters, multiplicities and intertwiners are all exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .cyclotomic import Cyc, divisors
from .funcfield import is_prime_power

Element = tuple[int, int]


def mobius(m: int) -> int:
    if m == 1:
        return 1
    out, mm, p = 1, m, 2
    while p * p <= mm:
        if mm % p == 0:
            mm //= p
            if mm % p == 0:
                return 0
            out = -out
        p += 1
    if mm > 1:
        out = -out
    return out


def orbit_count_of_size(q: int, n: int, d: int) -> int:
    """Number of Frobenius orbits on Z/(q^n - 1) of size exactly d (d | n)."""
    assert n % d == 0
    total = sum(mobius(d // e) * (q**e - 1) for e in divisors(d))
    assert total % d == 0
    return total // d


@dataclass(frozen=True)
class GroupParams:
    q: int
    n: int
    level: int = 1

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise ValueError(f"q = {self.q} must be a prime power")
        if self.n < 1 or self.level < 1:
            raise ValueError("n and the level must be positive")

    @property
    def M(self) -> int:
        return self.q**self.n - 1

    @property
    def R(self) -> int:
        return self.n * self.level

    @property
    def order(self) -> int:
        return self.M * self.R

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "N": self.level}


class Gamma:
    """The group of pairs (k mod nN, e mod q^n - 1) under the twisted law."""

    def __init__(self, q: int, n: int, level: int = 1):
        self.params = GroupParams(q, n, level)
        self.q = q
        self.n = n
        self.level = level
        self.M = self.params.M
        self.R = self.params.R
        self.order = self.params.order
        # ambient cyclotomic order: all character values live in this ring
        self.cyc_order = lcm(self.M, self.R)
        self._elements: list[Element] | None = None
        self._index: dict[Element, int] | None = None
        self._classes: list[tuple[Element, ...]] | None = None

    # -- group law -------------------------------------------------------

    @property
    def identity(self) -> Element:
        return (0, 0)

    def frob_power(self, k: int) -> int:
        """q^k mod M, using that q has order n modulo M."""
        if self.M == 1:
            return 0
        return pow(self.q, k % self.n, self.M)

    def mul(self, g: Element, h: Element) -> Element:
        k1, e1 = g
        k2, e2 = h
        return ((k1 + k2) % self.R, (e1 * self.frob_power(k2) + e2) % self.M)

    def inv(self, g: Element) -> Element:
        k, e = g
        return ((-k) % self.R, (-e * self.frob_power(-k)) % self.M)

    def power(self, g: Element, m: int) -> Element:
        if m < 0:
            return self.power(self.inv(g), -m)
        out, base = self.identity, g
        while m:
            if m & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            m >>= 1
        return out

    def conjugate(self, g: Element, x: Element) -> Element:
        """g x g^{-1}."""
        return self.mul(self.mul(g, x), self.inv(g))

    def elements(self) -> list[Element]:
        if self._elements is None:
            self._elements = [
                (k, e) for k in range(self.R) for e in range(self.M)
            ]
            self._index = {g: i for i, g in enumerate(self._elements)}
        return self._elements

    def element_index(self, g: Element) -> int:
        self.elements()
        return self._index[g]

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and 0 <= g[0] < self.R
            and 0 <= g[1] < self.M
        )

    def conjugacy_classes(self) -> list[tuple[Element, ...]]:
        """Brute-force conjugacy classes, each sorted, in order of least element."""
        if self._classes is not None:
            return self._classes
        gens = [(1 % self.R, 0), (0, 1 % self.M)]
        gens += [self.inv(g) for g in gens]
        seen: set[Element] = set()
        classes: list[tuple[Element, ...]] = []
        for x in self.elements():
            if x in seen:
                continue
            # closure under conjugation by generators = full conjugacy class
            block = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for g in gens:
                    z = self.conjugate(g, y)
                    if z not in block:
                        block.add(z)
                        frontier.append(z)
            seen |= block
            classes.append(tuple(sorted(block)))
        self._classes = classes
        return classes

    # -- Frobenius orbits and irrep labels -------------------------------

    def frobenius_orbit(self, c: int) -> tuple[int, ...]:
        M = self.M
        c %= M
        orbit = [c]
        x = c * self.q % M
        while x != c:
            orbit.append(x)
            x = x * self.q % M
        return tuple(sorted(orbit))

    def orbit_tags(self, orbit: tuple[int, ...]) -> tuple[int, ...]:
        """The orbit in Frobenius order starting from its least element."""
        M = self.M
        c = orbit[0]
        tags = [c]
        x = c * self.q % M
        while x != c:
            tags.append(x)
            x = x * self.q % M
        assert tuple(sorted(tags)) == orbit
        return tuple(tags)

    def __repr__(self):
        return f"Gamma(q={self.q}, n={self.n}, level={self.level})"


@lru_cache(maxsize=None)
def gamma(q: int, n: int, level: int = 1) -> Gamma:
    return Gamma(q, n, level)


def enumerate_orbits(group: Gamma) -> list[tuple[int, ...]]:
    """All Frobenius orbits on Z/M, as sorted tuples, ordered by least element."""
    M = group.M
    seen: set[int] = set()
    orbits: list[tuple[int, ...]] = []
    for c in range(M):
        if c in seen:
            continue
        orb = group.frobenius_orbit(c)
        seen.update(orb)
        orbits.append(orb)
    # orbit sizes divide n, and the census matches the necklace counts
    for orb in orbits:
        assert group.n % len(orb) == 0
    for d in divisors(group.n):
        expected = orbit_count_of_size(group.q, group.n, d)
        got = sum(1 for orb in orbits if len(orb) == d)
        assert got == expected, (d, got, expected)
    return orbits


@dataclass(frozen=True, order=True)
class IrrepLabel:
    """An irrep: a Frobenius orbit (sorted tuple) plus a twist s mod R/f."""

    orbit: tuple[int, ...]
    s: int

    @property
    def dim(self) -> int:
        return len(self.orbit)

    def to_json(self) -> dict:
        return {"orbit": list(self.orbit), "s": self.s, "dim": self.dim}

    @staticmethod
    def from_json(data: dict) -> IrrepLabel:
        return IrrepLabel(tuple(data["orbit"]), data["s"])


def enumerate_irreps(group: Gamma) -> list[IrrepLabel]:
    """All irrep labels, sorted by (orbit, s); one of dimension f per orbit
    of size f and twist s mod R/f."""
    labels = []
    for orbit in enumerate_orbits(group):
        f = len(orbit)
        assert group.R % f == 0
        for s in range(group.R // f):
            labels.append(IrrepLabel(orbit, s))
    labels.sort()
    assert sum(lab.dim**2 for lab in labels) == group.order
    return labels


class Irrep:
    """Monomial model of the irrep with the given label.

    Basis vectors are tagged by the orbit in Frobenius order (c, qc, q^2 c,
    ...); the abelian generator acts diagonally through those tags and the
    cyclic generator permutes them, picking up the twist on wraparound.
    """

    def __init__(self, group: Gamma, label: IrrepLabel):
        self.group = group
        self.label = label
        self.tags = group.orbit_tags(label.orbit)
        self.f = len(self.tags)
        self.s = label.s
        self.s_modulus = group.R // self.f
        self.m = group.cyc_order

    @property
    def dim(self) -> int:
        return self.f

    def _zeta_M(self, e: int) -> Cyc:
        M = self.group.M
        return Cyc.zeta(self.m, (self.m // M) * (e % M))

    def _zeta_twist(self, j: int) -> Cyc:
        return Cyc.zeta(self.m, (self.m // self.s_modulus) * (j % self.s_modulus))

    def matrix(self, g: Element) -> list[list[Cyc]]:
        """The representing matrix, rows indexed like columns by basis tags."""
        k, e = g
        k %= self.group.R
        zero = Cyc.zero(self.m)
        out = [[zero] * self.f for _ in range(self.f)]
        for j in range(self.f):
            i = (j + k) % self.f
            wraps = (j + k) // self.f
            out[i][j] = self._zeta_twist(self.s * wraps) * self._zeta_M(
                e * self.tags[j]
            )
        return out

    def character(self, g: Element) -> Cyc:
        """Trace of matrix(g), by the closed formula."""
        k, e = g
        k %= self.group.R
        if k % self.f:
            return Cyc.zero(self.m)
        val = Cyc.zero(self.m)
        for tag in self.tags:
            val = val + self._zeta_M(e * tag)
        return self._zeta_twist(self.s * (k // self.f)) * val

    def __repr__(self):
        return f"Irrep({self.group!r}, orbit={self.label.orbit}, s={self.s})"


def build_model(group: Gamma, label: IrrepLabel) -> Irrep:
    return Irrep(group, label)


def character_of(group: Gamma, label: IrrepLabel, g: Element) -> Cyc:
    return Irrep(group, label).character(g)


def chi_multiplicity(group: Gamma, label: IrrepLabel, c_exp: int) -> int:
    """Multiplicity of the abelian character e -> zeta_M^(c_exp * e) in the
    restriction of the irrep to the normal subgroup of pairs (0, e).

    Computed two independent ways (basis-tag count, and the exact character
    inner product over the abelian subgroup); both must agree.
    """
    M = group.M
    c_exp %= M
    rep = Irrep(group, label)
    by_tags = sum(1 for tag in rep.tags if tag == c_exp)

    total = Cyc.zero(rep.m)
    for e in range(M):
        total = total + rep.character((0, e)) * rep._zeta_M(-c_exp * e)
    value = total.to_rational() / M
    assert value.denominator == 1
    by_sum = int(value)

    assert by_tags == by_sum, (label, c_exp, by_tags, by_sum)
    return by_tags


def character_table(group: Gamma):
    """(labels, class representatives, class sizes, value matrix)."""
    labels = enumerate_irreps(group)
    classes = group.conjugacy_classes()
    reps = [cls[0] for cls in classes]
    sizes = [len(cls) for cls in classes]
    irreps = [Irrep(group, lab) for lab in labels]
    values = [[rep.character(g) for g in reps] for rep in irreps]
    return labels, reps, sizes, values


def character_inner(
    group: Gamma, row_a: list[Cyc], row_b: list[Cyc], sizes: list[int]
) -> Fraction:
    total = Cyc.zero(group.cyc_order)
    for size, a, b in zip(sizes, row_a, row_b):
        total = total + a * b.conj() * size
    return total.to_rational() / group.order
