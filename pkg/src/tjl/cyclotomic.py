"""Exact arithmetic in cyclotomic integer rings Z[zeta_m] and their fraction fields.

A scalar of order m is a Z-linear (or Q-linear) combination of the m-th roots
of unity, stored as a sparse exponent -> coefficient map.  Addition and
multiplication happen in the group ring Z[Z/m] (exponents add mod m) and are
therefore cheap; the m-th cyclotomic polynomial enters only when a question
about the underlying complex number is asked (equality, rationality,
inversion).  Two scalars are equal iff the difference of their coefficient
vectors is divisible by Phi_m.

No floating point is used anywhere.  numpy appears only as an overflow-checked
int64 fast path for the reduction matvec; the pure Python route is kept and
used whenever coefficients are Fractions or too large.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

RationalLike = int | Fraction


class OrderMismatchError(ValueError):
    """Raised when combining scalars of different cyclotomic orders."""


class NotRationalError(ValueError):
    """Raised when a scalar expected to be rational is not."""


def divisors(m: int) -> list[int]:
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return tuple(out)


def _poly_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Divide num by the monic integer polynomial den, asserting zero remainder."""
    assert den[-1] == 1
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        quot[k - dd] = c
        for j, cd in enumerate(den):
            num[k - dd + j] -= c * cd
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Dense coefficients (constant first) of Phi_m, via exact division of x^m - 1."""
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        num = _poly_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Rows x^k mod Phi_m for 0 <= k < m, plus the maximal absolute entry."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    rows: list[tuple[int, ...]] = []
    cur = [0] * d
    for k in range(m):
        if k < d:
            row = [0] * d
            row[k] = 1
        else:
            prev = rows[k - 1]
            row = [0] + list(prev[: d - 1])
            lead = prev[d - 1]
            if lead:
                for j in range(d):
                    row[j] -= lead * phi[j]
        rows.append(tuple(row))
    mx = max((abs(c) for row in rows for c in row), default=0)
    return tuple(rows), mx


@lru_cache(maxsize=None)
def _reduction_matrix(m: int):
    rows, mx = _reduction_rows(m)
    if mx < 2**31:
        return np.array(rows, dtype=np.int64)
    return None


class Cyc:
    """An element of Q(zeta_m), exact, with sparse group-ring storage.

    Coefficients are ints or Fractions.  The dense length-m coefficient
    sequence of the group-ring representative is available as .coefficients;
    the canonical reduced form (length phi(m), basis 1, zeta, ..., zeta^(d-1))
    as .reduced().
    """

    __slots__ = ("order", "_c", "_red")
    __hash__ = None  # mutable-free but equality is modular; do not hash

    def __init__(self, order: int, coeffs: dict[int, RationalLike] | None = None):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        c: dict[int, RationalLike] = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    e %= order
                    nv = c.get(e, 0) + v
                    if nv:
                        c[e] = nv
                    elif e in c:
                        del c[e]
        self._c = c
        self._red = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(order: int) -> Cyc:
        return Cyc(order)

    @staticmethod
    def from_rational(order: int, v: RationalLike) -> Cyc:
        return Cyc(order, {0: v})

    @staticmethod
    def zeta(order: int, k: int = 1) -> Cyc:
        return Cyc(order, {k % order: 1})

    @property
    def coefficients(self) -> tuple[RationalLike, ...]:
        """Dense group-ring coefficient sequence of length m."""
        out = [0] * self.order
        for e, v in self._c.items():
            out[e] = v
        return tuple(out)

    # -- ring operations -------------------------------------------------

    def _check(self, other: Cyc) -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(self.order, other)
        if not isinstance(other, Cyc):
            return NotImplemented
        self._check(other)
        c = dict(self._c)
        for e, v in other._c.items():
            nv = c.get(e, 0) + v
            if nv:
                c[e] = nv
            elif e in c:
                del c[e]
        out = Cyc(self.order)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Cyc(self.order)
        out._c = {e: -v for e, v in self._c.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(self.order, other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyc(self.order)
            out = Cyc(self.order)
            out._c = {e: v * other for e, v in self._c.items()}
            return out
        if not isinstance(other, Cyc):
            return NotImplemented
        self._check(other)
        m = self.order
        c: dict[int, RationalLike] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                if e >= m:
                    e -= m
                nv = c.get(e, 0) + v1 * v2
                if nv:
                    c[e] = nv
                elif e in c:
                    del c[e]
        out = Cyc(m)
        out._c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyc.from_rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> Cyc:
        """Complex conjugation: exponent negation mod m."""
        out = Cyc(self.order)
        out._c = {(-e) % self.order: v for e, v in self._c.items()}
        return out

    # -- reduction and predicates ---------------------------------------

    def reduced(self) -> tuple[RationalLike, ...]:
        """Coefficients on the basis 1, zeta, ..., zeta^(phi(m)-1)."""
        if self._red is not None:
            return self._red
        m = self.order
        rows, rowmax = _reduction_rows(m)
        d = len(rows[0])
        ints_only = all(isinstance(v, int) for v in self._c.values())
        if ints_only and self._c:
            mat = _reduction_matrix(m)
            cmax = max(abs(v) for v in self._c.values())
            if mat is not None and (rowmax + 1) * (cmax + 1) * (len(self._c) + 1) < 2**62:
                vec = np.zeros(m, dtype=np.int64)
                for e, v in self._c.items():
                    vec[e] = v
                red = vec @ mat
                self._red = tuple(int(x) for x in red)
                return self._red
        acc: list[RationalLike] = [0] * d
        for e, v in self._c.items():
            row = rows[e]
            for j in range(d):
                if row[j]:
                    acc[j] += v * row[j]
        self._red = tuple(acc)
        return self._red

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.reduced())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(self.order, other)
        if not isinstance(other, Cyc):
            return NotImplemented
        if self.order != other.order:
            return False
        if self._c == other._c:
            return True
        return (self - other).is_zero()

    def is_rational(self) -> bool:
        red = self.reduced()
        return all(c == 0 for c in red[1:])

    def to_rational(self) -> Fraction:
        """Exact rational value; raises NotRationalError otherwise."""
        red = self.reduced()
        if any(c != 0 for c in red[1:]):
            raise NotRationalError(f"not rational: reduced form {red}")
        return Fraction(red[0]) if red else Fraction(0)

    def is_integral(self) -> bool:
        """Whether the scalar lies in Z[zeta_m] (integer reduced coefficients)."""
        return all(Fraction(c).denominator == 1 for c in self.reduced())

    def inverse(self) -> Cyc:
        """Multiplicative inverse in Q(zeta_m), via xgcd with Phi_m over Q[x]."""
        red = [Fraction(c) for c in self.reduced()]
        if all(c == 0 for c in red):
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        inv = _modular_inverse_poly(red, phi)
        return Cyc(self.order, {e: v for e, v in enumerate(inv) if v})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / Cyc.from_rational(self.order, other)
        if not isinstance(other, Cyc):
            return NotImplemented
        self._check(other)
        return self * other.inverse()

    def sort_key(self) -> tuple:
        """Deterministic total order key (reduced coefficients as num/den pairs)."""
        out = []
        for c in self.reduced():
            f = Fraction(c)
            out.append((f.numerator, f.denominator))
        return tuple(out)

    def to_json(self) -> dict:
        """Canonical JSON shape: order plus reduced coefficients."""
        coeffs = []
        for c in self.reduced():
            f = Fraction(c)
            coeffs.append(f.numerator if f.denominator == 1 else [f.numerator, f.denominator])
        return {"order": self.order, "coeffs": coeffs}

    def __repr__(self):
        terms = ", ".join(f"{e}: {v}" for e, v in sorted(self._c.items()))
        return f"Cyc({self.order}, {{{terms}}})"


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    dd = len(den) - 1
    quot = [Fraction(0)] * max(len(num) - dd, 0)
    lead = den[-1]
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] / lead
        if c:
            quot[k - dd] = c
            for j, cd in enumerate(den):
                num[k - dd + j] -= c * cd
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _modular_inverse_poly(u: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    """Inverse of u modulo the irreducible polynomial mod, over Q."""
    # extended Euclid: keep r = s*u + t*mod, return s/r0 when r is constant
    r0, r1 = list(mod), list(u)
    s0: list[Fraction] = [Fraction(0)]
    s1: list[Fraction] = [Fraction(1)]
    while True:
        while r1 and r1[-1] == 0:
            r1.pop()
        if len(r1) == 0:
            raise ZeroDivisionError("element not invertible modulo Phi_m")
        if len(r1) == 1:
            c = r1[0]
            return [x / c for x in s1]
        q, rem = _frac_poly_divmod(r0, r1)
        r0, r1 = r1, rem
        qs1 = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, ca in enumerate(q):
            if ca:
                for j, cb in enumerate(s1):
                    if cb:
                        qs1[i + j] += ca * cb
        ns = [Fraction(0)] * max(len(s0), len(qs1))
        for i, c in enumerate(s0):
            ns[i] += c
        for i, c in enumerate(qs1):
            ns[i] -= c
        s0, s1 = s1, ns


def inner_product(
    f_values: list[Cyc],
    g_values: list[Cyc],
    weights: list[int],
    group_order: int,
) -> Fraction:
    """(1/|G|) * sum_c w_c * f(c) * conj(g(c)), which must be exactly rational."""
    if not (len(f_values) == len(g_values) == len(weights)):
        raise ValueError("mismatched lengths")
    if not f_values:
        return Fraction(0)
    m = f_values[0].order
    acc = Cyc(m)
    for fv, gv, w in zip(f_values, g_values, weights):
        acc = acc + fv * gv.conj() * w
    val = acc.to_rational()
    return val / group_order
