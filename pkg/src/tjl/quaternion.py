"""Exact arithmetic in the quaternion algebra i^2 = eps, j^2 = t, ji = -ij
over the rational function field F_q(t), q odd.

The algebra is ramified exactly at the place t and at infinity (eps a
non-square makes the residue norm form anisotropic there; at every other
place the conic x^2 - eps y^2 = t has a smooth point, certified by brute
force over the residue field).  The standard order spanned by 1, i, j, ij
over F_q[t] is maximal: its reduced discriminant is (t).

Elements carry exact rational-function coordinates, so local reductions at
t and at infinity are computed from valuations with no precision tracking.
Reduction at a ramified place sends x to (k, u): k the valuation of nrd(x)
and u the residue after dividing out the k-th uniformizer power on the left
(uniformizer j at t, j/t at infinity).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .funcfield import GF, Fq2, Fq2Element, Poly, RatFunc, fq2, gf, monic_irreducibles


class NotInvertibleError(ZeroDivisionError):
    pass


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraParams:
    """q odd prime power, eps the canonical non-square, level N for the
    arithmetic quotient at t."""

    q: int
    level: int = 1
    eps: int | None = None

    def __post_init__(self) -> None:
        F = gf(self.q)
        if F.p == 2:
            raise ValueError("the algebra needs odd characteristic")
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.eps is None:
            object.__setattr__(self, "eps", F.smallest_nonsquare)
        elif F.is_square(self.eps):
            raise ValueError(f"eps = {self.eps} is a square in F_{self.q}")

    @property
    def field(self) -> GF:
        return gf(self.q)

    @property
    def residue(self) -> Fq2:
        if self.eps == self.field.smallest_nonsquare:
            return fq2(self.q)
        return Fq2(self.field, self.eps)

    def to_json(self) -> dict:
        return {"q": self.q, "N": self.level, "eps": self.eps}


@dataclass(frozen=True)
class LocalReduction:
    """Class of a local unit group coset: uniformizer power k and residue
    unit u in F_{q^2}^* with its discrete log."""

    place: str  # "zero" or "infinity"
    k: int
    residue: Fq2Element
    exponent: int

    def to_gamma(self, R: int, M: int) -> tuple[int, int]:
        return (self.k % R, self.exponent % M)


class OrderElement:
    """Quaternion a + b i + c j + d ij with exact RatFunc coordinates.

    Instances with polynomial coordinates are order elements proper; general
    rational coordinates appear in witness products and local computations.
    """

    __slots__ = ("alg", "a", "b", "c", "d")

    def __init__(self, alg: AlgebraParams, a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc):
        self.alg = alg
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_polys(alg: AlgebraParams, a: Poly, b: Poly, c: Poly, d: Poly,
                   t_denominator_power: int = 0) -> OrderElement:
        den = RatFunc.t_power(a.field, -t_denominator_power)
        return OrderElement(
            alg,
            RatFunc(a) * den,
            RatFunc(b) * den,
            RatFunc(c) * den,
            RatFunc(d) * den,
        )

    @staticmethod
    def zero(alg: AlgebraParams) -> OrderElement:
        z = RatFunc.zero(alg.field)
        return OrderElement(alg, z, z, z, z)

    @staticmethod
    def one(alg: AlgebraParams) -> OrderElement:
        z = RatFunc.zero(alg.field)
        return OrderElement(alg, RatFunc.one(alg.field), z, z, z)

    @staticmethod
    def i(alg: AlgebraParams) -> OrderElement:
        z = RatFunc.zero(alg.field)
        return OrderElement(alg, z, RatFunc.one(alg.field), z, z)

    @staticmethod
    def j(alg: AlgebraParams) -> OrderElement:
        z = RatFunc.zero(alg.field)
        return OrderElement(alg, z, z, RatFunc.one(alg.field), z)

    @staticmethod
    def ij(alg: AlgebraParams) -> OrderElement:
        z = RatFunc.zero(alg.field)
        return OrderElement(alg, z, z, z, RatFunc.one(alg.field))

    @staticmethod
    def scalar(alg: AlgebraParams, r: RatFunc) -> OrderElement:
        z = RatFunc.zero(alg.field)
        return OrderElement(alg, r, z, z, z)

    @staticmethod
    def teichmuller(alg: AlgebraParams, u: Fq2Element) -> OrderElement:
        """The constant a + b i realizing u = a + b sqrt(eps) globally."""
        F = alg.field
        z = RatFunc.zero(F)
        return OrderElement(
            alg,
            RatFunc.constant(F, u.a),
            RatFunc.constant(F, u.b),
            z,
            z,
        )

    def coords(self) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
        return (self.a, self.b, self.c, self.d)

    # -- ring structure ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderElement):
            return NotImplemented
        return self.coords() == other.coords()

    def __hash__(self) -> int:
        return hash(self.coords())

    def __add__(self, other: OrderElement) -> OrderElement:
        return OrderElement(self.alg, self.a + other.a, self.b + other.b,
                            self.c + other.c, self.d + other.d)

    def __sub__(self, other: OrderElement) -> OrderElement:
        return OrderElement(self.alg, self.a - other.a, self.b - other.b,
                            self.c - other.c, self.d - other.d)

    def __neg__(self) -> OrderElement:
        return OrderElement(self.alg, -self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: OrderElement) -> OrderElement:
        F = self.alg.field
        eps = RatFunc.constant(F, self.alg.eps)
        t = RatFunc.t_power(F, 1)
        a, b, c, d = self.coords()
        e, f_, g, h = other.coords()
        return OrderElement(
            self.alg,
            a * e + eps * b * f_ + t * c * g - eps * t * d * h,
            a * f_ + b * e - t * c * h + t * d * g,
            a * g + c * e + eps * b * h - eps * d * f_,
            a * h + d * e + b * g - c * f_,
        )

    def scale(self, r: RatFunc) -> OrderElement:
        return OrderElement(self.alg, self.a * r, self.b * r, self.c * r, self.d * r)

    def conj(self) -> OrderElement:
        return OrderElement(self.alg, self.a, -self.b, -self.c, -self.d)

    def nrd(self) -> RatFunc:
        F = self.alg.field
        eps = RatFunc.constant(F, self.alg.eps)
        t = RatFunc.t_power(F, 1)
        a, b, c, d = self.coords()
        return a * a - eps * b * b - t * c * c + eps * t * d * d

    def trd(self) -> RatFunc:
        return self.a + self.a

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coords())

    def inverse(self) -> OrderElement:
        n = self.nrd()
        if n.is_zero():
            raise NotInvertibleError("zero has no inverse in a division algebra")
        return self.conj().scale(n.inverse())

    def power(self, k: int) -> OrderElement:
        base = self if k >= 0 else self.inverse()
        out = OrderElement.one(self.alg)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __repr__(self) -> str:
        return f"OrderElement({self.a}, {self.b}, {self.c}, {self.d})"

    # -- integrality and unit-group membership -------------------------

    def coords_polynomial(self) -> bool:
        return all(x.is_polynomial() for x in self.coords())

    def t_integral(self) -> bool:
        return all(x.t_valuation() >= 0 for x in self.coords())

    def infinity_integral(self) -> bool:
        """Membership in the maximal order at infinity: in the unramified
        coordinate frame (a, b, tc, td) every entry is integral there."""
        return (self.a.valuation_at_infinity() >= 0
                and self.b.valuation_at_infinity() >= 0
                and self.c.valuation_at_infinity() >= 1
                and self.d.valuation_at_infinity() >= 1)

    def in_K1_infinity(self) -> bool:
        """Principal unit at infinity: congruent to 1 mod the maximal ideal."""
        one = RatFunc.one(self.alg.field)
        return ((self.a - one).valuation_at_infinity() >= 1
                and self.b.valuation_at_infinity() >= 1
                and self.c.valuation_at_infinity() >= 1
                and self.d.valuation_at_infinity() >= 1)

    def in_K_infinity(self) -> bool:
        return self.infinity_integral() and self.nrd().valuation_at_infinity() == 0


def nrd(x: OrderElement) -> RatFunc:
    return x.nrd()


# -- local reductions at the two ramified places -----------------------


def _j_power(alg: AlgebraParams, k: int) -> OrderElement:
    """j^k for any integer k, using j^2 = t and j^{-1} = j/t."""
    F = alg.field
    half, odd = divmod(k, 2)  # floor division keeps odd in {0, 1}
    out = OrderElement.scalar(alg, RatFunc.t_power(F, half))
    if odd:
        out = out * OrderElement.j(alg)
    return out


def reduce_at_zero(x: OrderElement) -> LocalReduction:
    """Valuation and unit residue of x in the completed algebra at t."""
    if x.is_zero():
        raise ReductionError("cannot reduce zero")
    k = x.nrd().t_valuation()
    # left division: with x = j^k y the unit residues compose by
    # (k,e)(k',e') = (k+k', e q^{k'} + e'), matching the finite model
    y = _j_power(x.alg, -k) * x
    if not y.t_integral():
        raise ReductionError("reduced element fails integrality at t")
    K = x.alg.residue
    u = K.element(y.a.value_at_zero(), y.b.value_at_zero())
    if u == K.zero:
        raise ReductionError("unit residue vanished at t")
    # the residue norm matches the unit part of nrd
    n = y.nrd()
    assert n.t_valuation() == 0
    assert K.norm(u) == n.value_at_zero()
    return LocalReduction("zero", k, u, K.dlog(u))


def reduce_at_infinity(x: OrderElement) -> LocalReduction:
    """Valuation and unit residue at infinity, uniformizer j/t."""
    if x.is_zero():
        raise ReductionError("cannot reduce zero")
    k = x.nrd().valuation_at_infinity()
    y = _pi_infinity_power(x.alg, -k) * x
    if not y.infinity_integral():
        raise ReductionError("reduced element fails integrality at infinity")
    K = x.alg.residue
    u = K.element(y.a.value_at_infinity(), y.b.value_at_infinity())
    if u == K.zero:
        raise ReductionError("unit residue vanished at infinity")
    assert y.nrd().valuation_at_infinity() == 0
    return LocalReduction("infinity", k, u, K.dlog(u))


def _pi_infinity_power(alg: AlgebraParams, k: int) -> OrderElement:
    """(j/t)^k exactly: j^k scaled by t^{-k} on the j-side pairing."""
    # (j/t)^2 = j^2/t^2 = 1/t, so (j/t)^k = j^k * t^{-k}
    return _j_power(alg, k).scale(RatFunc.t_power(alg.field, -k))


def reduce_homomorphism_check(alg: AlgebraParams, pairs) -> None:
    """reduce_at_zero is a homomorphism to Z x F_{q^2}^* twisted by the
    Frobenius: residue(xy) = residue(x)^{q^{k(y)}} * residue(y) and the
    valuations add.  Verified exactly on the supplied element pairs."""
    K = alg.residue
    for x, y in pairs:
        rx, ry, rxy = reduce_at_zero(x), reduce_at_zero(y), reduce_at_zero(x * y)
        assert rxy.k == rx.k + ry.k
        twisted = K.power(rx.residue, pow(alg.q, ry.k % 2, alg.q * alg.q - 1))
        assert rxy.residue == K.mul(twisted, ry.residue)


# -- maximality and ramification certificates --------------------------


def gram_determinant(alg: AlgebraParams) -> RatFunc:
    """det of trd(e_i e_j) on the basis 1, i, j, ij; equals -16 eps^2 t^2,
    so the reduced discriminant of the standard order is exactly (t)."""
    basis = [OrderElement.one(alg), OrderElement.i(alg),
             OrderElement.j(alg), OrderElement.ij(alg)]
    gram = [[(u * v).trd() for v in basis] for u in basis]
    # direct 4x4 determinant by expansion; entries are only diagonal here
    det = RatFunc.one(alg.field)
    for k in range(4):
        for l in range(4):
            if k != l:
                assert gram[k][l].is_zero()
        det = det * gram[k][k]
    return det


def maximality_certificate(alg: AlgebraParams) -> bool:
    F = alg.field
    det = gram_determinant(alg)
    sixteen = F.embed_int(16)
    coeff = F.neg(F.mul(sixteen, F.mul(alg.eps, alg.eps)))
    expected = RatFunc(Poly(F, (0, 0, coeff)))
    assert det == expected, "Gram determinant must be -16 eps^2 t^2"
    return True


def residue_field_elements(pi: Poly):
    """All residues mod pi in canonical (constant-first lex) order."""
    F = pi.field
    for coeffs in product(range(F.q), repeat=pi.degree):
        yield Poly(F, coeffs)


def split_certificate(alg: AlgebraParams, pi: Poly) -> tuple[Poly, Poly] | None:
    """A point (x, y) with x^2 - eps y^2 = t mod pi, or None if anisotropic.

    A smooth residue point Hensel-lifts, so a hit certifies the algebra
    splits at pi.  The first hit in canonical order is returned, making the
    downstream splitting matrices deterministic.
    """
    F = alg.field
    eps = Poly.constant(F, alg.eps)
    t = Poly.t(F)
    for x in residue_field_elements(pi):
        xx = (x * x) % pi
        for y in residue_field_elements(pi):
            if x.is_zero() and y.is_zero():
                continue  # only smooth points certify splitting
            lhs = (xx - eps * y * y - t) % pi
            if lhs.is_zero():
                return (x, y)
    return None


def ramification_certificate(alg: AlgebraParams, max_deg: int = 2) -> dict:
    """Split at every monic irreducible pi != t up to max_deg; division at t
    and at infinity because eps is a non-square (residue norm form
    anisotropic, checked by brute force)."""
    F = alg.field
    t = Poly.t(F)
    split_at = []
    for pi in monic_irreducibles(F, max_deg):
        if pi == t:
            continue
        point = split_certificate(alg, pi)
        assert point is not None, f"unexpected ramification at {pi}"
        split_at.append((pi, point))
    # anisotropy of x^2 - eps y^2 over the residue field at t (= F_q): only
    # the trivial zero.  The same form controls the place at infinity.
    zeros = [(x, y) for x in range(F.q) for y in range(F.q)
             if F.sub(F.mul(x, x), F.mul(alg.eps, F.mul(y, y))) == 0]
    assert zeros == [(0, 0)], "norm form must be anisotropic at the ramified places"
    return {
        "split_places": [p for p, _ in split_at],
        "split_points": {p: pt for p, pt in split_at},
        "ramified": ("t", "infinity"),
    }


def unit_congruence_certificate(alg: AlgebraParams) -> bool:
    """{delta in the standard order with delta in K^1 at infinity} = {1}.

    Polynomial coordinates have infinity-valuation <= 0 unless zero, so the
    congruence conditions force b = c = d = 0 and a = 1; the constant case
    is also enumerated directly over F_q^2 as an executable check.
    """
    F = alg.field
    for k in range(7):
        mono = RatFunc.t_power(F, k)
        assert mono.valuation_at_infinity() == -k <= 0
    hits = []
    for a in range(F.q):
        for b in range(F.q):
            delta = OrderElement.teichmuller(alg, alg.residue.element(a, b))
            if delta.in_K1_infinity():
                hits.append((a, b))
    assert hits == [(1, 0)]
    return True
