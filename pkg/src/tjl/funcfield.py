"""Small finite fields F_q, polynomials over F_q[t], and exact rational functions.

Fields are kept tiny (q <= 9 in every supported run), so elements are plain
ints 0..q-1 whose base-p digits are the coefficients of the residue polynomial,
and all arithmetic goes through precomputed tables.  The canonical modulus for
non-prime q is the first monic irreducible in lexicographic coefficient order,
and the canonical enumeration of field elements is by that integer encoding.

Rational functions carry exact valuations at every place (monic irreducible of
F_q[t], plus the degree valuation at infinity), so no truncated t-adic
arithmetic is needed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return (p, r) with q = p**r for p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q and p != q:
            break
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            return (p, r) if m == 1 else None
    return (q, 1)


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


class GF:
    """The finite field with q elements, q = p^r a small prime power."""

    def __init__(self, q: int):
        dec = prime_power_decomposition(q)
        if dec is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.r = dec
        if self.r == 1:
            self.modulus = None
        else:
            self.modulus = self._canonical_irreducible()
        self._build_tables()
        self._squares = {self.mul(a, a) for a in range(q)}

    # -- construction helpers -------------------------------------------

    def _digits(self, a: int) -> tuple[int, ...]:
        p, r = self.p, self.r
        return tuple((a // p**i) % p for i in range(r))

    def _undigits(self, ds) -> int:
        return sum(int(d) % self.p * self.p**i for i, d in enumerate(ds))

    def _canonical_irreducible(self) -> tuple[int, ...]:
        """Coefficients (c0..c_{r-1}, 1) of the first irreducible monic over F_p."""
        p, r = self.p, self.r
        for tail in product(range(p), repeat=r):
            cand = tuple(tail) + (1,)
            if self._fp_poly_irreducible(cand):
                return cand
        raise AssertionError("no irreducible polynomial found")

    def _fp_poly_irreducible(self, poly: tuple[int, ...]) -> bool:
        p = self.p
        deg = len(poly) - 1

        def pmul(a, b):
            out = [0] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                for j, cb in enumerate(b):
                    out[i + j] = (out[i + j] + ca * cb) % p
            while out and out[-1] == 0:
                out.pop()
            return tuple(out)

        def pmod(a, b):
            a = list(a)
            db = len(b) - 1
            inv_lead = pow(b[-1], p - 2, p)
            while len(a) - 1 >= db and a:
                c = a[-1] * inv_lead % p
                k = len(a) - 1 - db
                for j, cb in enumerate(b):
                    a[k + j] = (a[k + j] - c * cb) % p
                while a and a[-1] == 0:
                    a.pop()
            return tuple(a)

        monics = [()]
        for d in range(1, deg // 2 + 1):
            for tail in product(range(p), repeat=d):
                cand = tuple(tail) + (1,)
                if d == 1 or all(
                    pmod(cand, g) != () for g in monics if 1 <= len(g) - 1 <= d // 2
                ):
                    monics.append(cand)
                    if pmod(poly, cand) == ():
                        return False
        return True

    def _build_tables(self):
        q, p, r = self.q, self.p, self.r
        self._add = [[0] * q for _ in range(q)]
        self._mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = self._digits(a)
            for b in range(q):
                db = self._digits(b)
                self._add[a][b] = self._undigits(
                    (x + y) % p for x, y in zip(da, db)
                )
                if r == 1:
                    self._mul[a][b] = a * b % p
                else:
                    conv = [0] * (2 * r - 1)
                    for i, x in enumerate(da):
                        if x:
                            for j, y in enumerate(db):
                                conv[i + j] = (conv[i + j] + x * y) % p
                    # reduce modulo the canonical irreducible (monic)
                    for k in range(2 * r - 2, r - 1, -1):
                        c = conv[k]
                        if c:
                            conv[k] = 0
                            for j in range(r):
                                conv[k - r + j] = (conv[k - r + j] - c * self.modulus[j]) % p
                    self._mul[a][b] = self._undigits(conv[:r])
        self._neg = [self._solve_neg(a) for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def _solve_neg(self, a: int) -> int:
        for b in range(self.q):
            if self._add[a][b] == 0:
                return b
        raise AssertionError

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def embed_int(self, n: int) -> int:
        """Image of the rational integer n in the prime field."""
        return n % self.p

    def is_square(self, a: int) -> bool:
        return a in self._squares

    @property
    def smallest_nonsquare(self) -> int:
        """First non-square unit in the canonical enumeration; odd q only."""
        if self.p == 2:
            raise ValueError("every element of a characteristic-2 field is a square")
        for a in range(1, self.q):
            if not self.is_square(a):
                return a
        raise AssertionError

    def multiplicative_order(self, a: int) -> int:
        assert a != 0
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def generator(self) -> int:
        for a in range(1, self.q):
            if self.multiplicative_order(a) == self.q - 1:
                return a
        raise AssertionError

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def gf(q: int) -> GF:
    return GF(q)


class Poly:
    """Dense polynomial over a small finite field, coefficients constant-first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs):
        self.field = field
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(field: GF) -> Poly:
        return Poly(field, ())

    @staticmethod
    def one(field: GF) -> Poly:
        return Poly(field, (1,))

    @staticmethod
    def constant(field: GF, c: int) -> Poly:
        return Poly(field, (c,))

    @staticmethod
    def t(field: GF) -> Poly:
        return Poly(field, (0, 1))

    @staticmethod
    def t_power(field: GF, k: int) -> Poly:
        return Poly(field, (0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __add__(self, other: Poly) -> Poly:
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(
            F,
            (
                F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
                for i in range(n)
            ),
        )

    def __neg__(self) -> Poly:
        F = self.field
        return Poly(F, (F.neg(c) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                row = F._mul[ca]
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = F.add(out[i + j], row[cb])
        return Poly(F, out)

    def scale(self, c: int) -> Poly:
        F = self.field
        if c == 0:
            return Poly.zero(F)
        return Poly(F, (F.mul(c, x) for x in self.coeffs))

    def shift(self, k: int) -> Poly:
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def divmod(self, den: Poly) -> tuple[Poly, Poly]:
        F = self.field
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        num = list(self.coeffs)
        dd = den.degree
        inv_lead = F.inv(den.lead)
        quot = [0] * max(len(num) - dd, 0)
        for k in range(len(num) - 1, dd - 1, -1):
            c = F.mul(num[k], inv_lead)
            if c:
                quot[k - dd] = c
                for j, cd in enumerate(den.coeffs):
                    num[k - dd + j] = F.sub(num[k - dd + j], F.mul(c, cd))
            num.pop()
        return Poly(F, quot), Poly(F, num)

    def __mod__(self, den: Poly) -> Poly:
        return self.divmod(den)[1]

    def __floordiv__(self, den: Poly) -> Poly:
        return self.divmod(den)[0]

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: Poly) -> tuple[Poly, Poly, Poly]:
        """(g, u, v) with u*self + v*other = g monic (or zero)."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = Poly.one(F), Poly.zero(F)
        t0, t1 = Poly.zero(F), Poly.one(F)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        c = F.inv(r0.lead)
        return r0.scale(c), s0.scale(c), t0.scale(c)

    def evaluate(self, x: int) -> int:
        F = self.field
        out = 0
        for c in reversed(self.coeffs):
            out = F.add(F.mul(out, x), c)
        return out

    def valuation(self, pi: Poly) -> int:
        """Exact pi-adic valuation; raises on the zero polynomial."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        v, cur = 0, self
        while True:
            q, r = cur.divmod(pi)
            if not r.is_zero():
                return v
            v, cur = v + 1, q

    def t_valuation(self) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        v = 0
        while self.coeffs[v] == 0:
            v += 1
        return v

    def __repr__(self):
        return f"Poly[{self.field.q}]({format_poly(self)})"


def format_poly(poly: Poly, var: str = "t") -> str:
    if poly.is_zero():
        return "0"
    parts = []
    for e in range(poly.degree, -1, -1):
        c = poly.coeffs[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            parts.append(f"{head}{var}" + (f"^{e}" if e > 1 else ""))
    return "+".join(parts)


def parse_poly(field: GF, text: str, var: str = "t") -> Poly:
    """Parse expressions like 't^2+2t+1' or 't-1' over the given field."""
    s = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms
    terms: list[str] = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            terms.append(cur)
            cur = ch if ch == "-" else ""
        elif ch in "+-" and not cur and ch == "-":
            cur = "-"
        else:
            cur += ch
    terms.append(cur)
    coeffs: dict[int, int] = {}
    for term in terms:
        if not term or term in "+-":
            raise ValueError(f"bad polynomial syntax: {text!r}")
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if var in body:
            cpart, _, epart = body.partition(var)
            coeff = int(cpart) if cpart else 1
            exp = int(epart.lstrip("^")) if epart else 1
        else:
            coeff, exp = int(body), 0
        val = field.embed_int(sign * coeff)
        coeffs[exp] = field.add(coeffs.get(exp, 0), val)
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Poly(field, out)


def is_irreducible(poly: Poly) -> bool:
    """Trial division by the enumerated monic irreducibles of half the degree."""
    d = poly.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    for g in monic_irreducibles(poly.field, d // 2):
        if g.divides(poly):
            return False
    return True


@lru_cache(maxsize=None)
def _monic_irreducibles_cached(q: int, max_deg: int) -> tuple[Poly, ...]:
    field = gf(q)
    out: list[Poly] = []
    for d in range(1, max_deg + 1):
        for tail in product(range(q), repeat=d):
            cand = Poly(field, tuple(tail) + (1,))
            if all(not g.divides(cand) for g in out if 2 * g.degree <= d):
                out.append(cand)
    return tuple(out)


def monic_irreducibles(field: GF, max_deg: int) -> list[Poly]:
    """All monic irreducibles of degree <= max_deg, in (degree, lex) order."""
    return [g for g in _monic_irreducibles_cached(field.q, max_deg)]


INF = float("inf")


class RatFunc:
    """Exact rational function num/den over F_q[t], den monic and coprime to num."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        field = num.field
        if den is None:
            den = Poly.one(field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.one(field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
            c = field.inv(den.lead)
            num = num.scale(c)
            den = den.scale(c)
        self.num = num
        self.den = den

    @staticmethod
    def zero(field: GF) -> RatFunc:
        return RatFunc(Poly.zero(field))

    @staticmethod
    def one(field: GF) -> RatFunc:
        return RatFunc(Poly.one(field))

    @staticmethod
    def constant(field: GF, c: int) -> RatFunc:
        return RatFunc(Poly.constant(field, c))

    @staticmethod
    def t_power(field: GF, k: int) -> RatFunc:
        if k >= 0:
            return RatFunc(Poly.t_power(field, k))
        return RatFunc(Poly.one(field), Poly.t_power(field, -k))

    @property
    def field(self) -> GF:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: RatFunc) -> RatFunc:
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: RatFunc) -> RatFunc:
        return self + (-other)

    def __mul__(self, other: RatFunc) -> RatFunc:
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RatFunc) -> RatFunc:
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def scale(self, c: int) -> RatFunc:
        return RatFunc(self.num.scale(c), self.den)

    def inverse(self) -> RatFunc:
        return RatFunc.one(self.field) / self

    def valuation(self, pi: Poly):
        """pi-adic valuation; +inf for zero."""
        if self.is_zero():
            return INF
        return self.num.valuation(pi) - self.den.valuation(pi)

    def valuation_at_infinity(self):
        """deg(den) - deg(num); +inf for zero."""
        if self.is_zero():
            return INF
        return self.den.degree - self.num.degree

    def t_valuation(self):
        if self.is_zero():
            return INF
        return self.num.t_valuation() - self.den.t_valuation()

    def value_at_zero(self) -> int:
        """Residue at t=0 (requires t-valuation >= 0)."""
        v = self.t_valuation()
        if v == INF or v > 0:
            return 0
        if v < 0:
            raise ValueError("pole at t=0")
        F = self.field
        a = self.num.coeffs[self.num.t_valuation()]
        b = self.den.coeffs[self.den.t_valuation()]
        return F.div(a, b)

    def value_at_infinity(self) -> int:
        v = self.valuation_at_infinity()
        if v == INF or v > 0:
            return 0
        if v < 0:
            raise ValueError("pole at infinity")
        return self.field.div(self.num.lead, self.den.lead)

    def reduce_mod(self, pi: Poly, power: Poly) -> Poly:
        """Image in F_q[t]/power (power = pi^k); den must be a unit at pi."""
        if self.is_zero():
            return Poly.zero(self.field)
        if not (self.den.valuation(pi) == 0):
            raise ValueError("denominator not a unit at the place")
        g, u, _ = self.den.xgcd(power)
        assert g.is_one(), "denominator not invertible modulo the given power"
        return (self.num * u) % power

    def __repr__(self):
        if self.den.is_one():
            return f"RatFunc({format_poly(self.num)})"
        return f"RatFunc(({format_poly(self.num)})/({format_poly(self.den)}))"


@dataclass(frozen=True)
class Fq2Element:
    """a + b*i with i^2 = eps, encoded over the base field."""

    a: int
    b: int

    def index(self, q: int) -> int:
        return self.a + q * self.b


class Fq2:
    """The quadratic extension F_q(i), i^2 = eps a fixed non-square; odd q."""

    def __init__(self, base: GF, eps: int | None = None):
        if base.p == 2:
            raise ValueError("quadratic extension by a nonsquare needs odd q")
        self.base = base
        self.eps = base.smallest_nonsquare if eps is None else eps
        assert not base.is_square(self.eps)
        self.q = base.q
        self._dlog: dict[Fq2Element, int] | None = None
        self._powers: list[Fq2Element] | None = None

    def element(self, a: int, b: int) -> Fq2Element:
        return Fq2Element(a, b)

    @property
    def zero(self) -> Fq2Element:
        return Fq2Element(0, 0)

    @property
    def one(self) -> Fq2Element:
        return Fq2Element(1, 0)

    @property
    def i(self) -> Fq2Element:
        return Fq2Element(0, 1)

    def elements(self):
        for b in range(self.q):
            for a in range(self.q):
                yield Fq2Element(a, b)

    def add(self, x: Fq2Element, y: Fq2Element) -> Fq2Element:
        F = self.base
        return Fq2Element(F.add(x.a, y.a), F.add(x.b, y.b))

    def neg(self, x: Fq2Element) -> Fq2Element:
        F = self.base
        return Fq2Element(F.neg(x.a), F.neg(x.b))

    def mul(self, x: Fq2Element, y: Fq2Element) -> Fq2Element:
        F = self.base
        a = F.add(F.mul(x.a, y.a), F.mul(self.eps, F.mul(x.b, y.b)))
        b = F.add(F.mul(x.a, y.b), F.mul(x.b, y.a))
        return Fq2Element(a, b)

    def conj(self, x: Fq2Element) -> Fq2Element:
        """The nontrivial automorphism a+bi -> a-bi, which is x -> x^q."""
        return Fq2Element(x.a, self.base.neg(x.b))

    def norm(self, x: Fq2Element) -> int:
        """N(a+bi) = a^2 - eps b^2 in the base field."""
        F = self.base
        return F.sub(F.mul(x.a, x.a), F.mul(self.eps, F.mul(x.b, x.b)))

    def inv(self, x: Fq2Element) -> Fq2Element:
        n = self.norm(x)
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Fq2")
        c = self.base.inv(n)
        xb = self.conj(x)
        F = self.base
        return Fq2Element(F.mul(c, xb.a), F.mul(c, xb.b))

    def power(self, x: Fq2Element, k: int) -> Fq2Element:
        if k < 0:
            return self.power(self.inv(x), -k)
        out, base = self.one, x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def multiplicative_order(self, x: Fq2Element) -> int:
        assert x != self.zero
        k, y = 1, x
        while y != self.one:
            y = self.mul(y, x)
            k += 1
        return k

    @property
    def generator(self) -> Fq2Element:
        """Smallest generator of the unit group in the index enumeration."""
        self._ensure_dlog()
        return self._powers[1]

    def _ensure_dlog(self):
        if self._dlog is not None:
            return
        full = self.q * self.q - 1
        best = None
        for x in sorted(
            (e for e in self.elements() if e != self.zero),
            key=lambda e: e.index(self.q),
        ):
            if self.multiplicative_order(x) == full:
                best = x
                break
        assert best is not None
        powers = [self.one]
        table = {self.one: 0}
        cur = self.one
        for k in range(1, full):
            cur = self.mul(cur, best)
            powers.append(cur)
            table[cur] = k
        self._powers = powers
        self._dlog = table

    def dlog(self, x: Fq2Element) -> int:
        """Discrete log base the canonical generator; x must be a unit."""
        if x == self.zero:
            raise ZeroDivisionError("dlog of 0")
        self._ensure_dlog()
        return self._dlog[x]

    def from_dlog(self, k: int) -> Fq2Element:
        self._ensure_dlog()
        return self._powers[k % (self.q * self.q - 1)]


@lru_cache(maxsize=None)
def fq2(q: int) -> Fq2:
    return Fq2(gf(q))
