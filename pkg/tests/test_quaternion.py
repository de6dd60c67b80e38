from __future__ import annotations

import random

import pytest

from tjl.funcfield import Poly, RatFunc, gf, monic_irreducibles, parse_poly
from tjl.quaternion import (
    AlgebraParams,
    OrderElement,
    ReductionError,
    gram_determinant,
    maximality_certificate,
    ramification_certificate,
    reduce_at_infinity,
    reduce_at_zero,
    reduce_homomorphism_check,
    split_certificate,
    unit_congruence_certificate,
)


def random_element(alg, rng, deg=2, denom=0):
    F = alg.field
    polys = [
        Poly(F, tuple(rng.randrange(F.q) for _ in range(deg + 1)))
        for _ in range(4)
    ]
    return OrderElement.from_polys(alg, *polys, t_denominator_power=denom)


def test_defining_relations():
    alg = AlgebraParams(3)
    one, i, j, k = (OrderElement.one(alg), OrderElement.i(alg),
                    OrderElement.j(alg), OrderElement.ij(alg))
    F = alg.field
    eps = RatFunc.constant(F, alg.eps)
    t = RatFunc.t_power(F, 1)
    assert i * i == OrderElement.scalar(alg, eps)
    assert j * j == OrderElement.scalar(alg, t)
    assert j * i == -(i * j)
    assert i * j == k
    assert k * k == OrderElement.scalar(alg, -(eps * t))
    # the sixteen basis products stay in the order
    basis = [one, i, j, k]
    for x in basis:
        for y in basis:
            assert (x * y).coords_polynomial()


def test_associativity_and_distributivity():
    alg = AlgebraParams(5)
    rng = random.Random(31)
    for _ in range(40):
        x, y, z = (random_element(alg, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


def test_norm_values():
    alg = AlgebraParams(3)
    F = alg.field
    assert OrderElement.j(alg).nrd() == -RatFunc.t_power(F, 1)
    assert OrderElement.i(alg).nrd() == RatFunc.constant(F, F.neg(alg.eps))
    x = OrderElement.one(alg) + OrderElement.i(alg).scale(RatFunc.t_power(F, 1))
    expect = RatFunc.one(F) - RatFunc.constant(F, alg.eps) * RatFunc.t_power(F, 2)
    assert x.nrd() == expect


def test_norm_is_multiplicative_and_conj():
    for q in (3, 5):
        alg = AlgebraParams(q)
        rng = random.Random(32 + q)
        for _ in range(120):
            x = random_element(alg, rng, deg=2, denom=rng.randrange(2))
            y = random_element(alg, rng, deg=2, denom=rng.randrange(2))
            assert (x * y).nrd() == x.nrd() * y.nrd()
            prod = x * x.conj()
            assert prod.b.is_zero() and prod.c.is_zero() and prod.d.is_zero()
            assert prod.a == x.nrd()


def test_inverse():
    alg = AlgebraParams(3)
    rng = random.Random(33)
    for _ in range(30):
        x = random_element(alg, rng)
        if x.is_zero():
            continue
        assert x * x.inverse() == OrderElement.one(alg)
        assert x.inverse() * x == OrderElement.one(alg)


def test_division_algebra_has_no_zero_divisors():
    alg = AlgebraParams(3)
    rng = random.Random(34)
    for _ in range(60):
        x = random_element(alg, rng, deg=1)
        if not x.is_zero():
            assert not x.nrd().is_zero()


def test_reduce_at_zero_examples():
    alg = AlgebraParams(3)
    j = OrderElement.j(alg)
    r = reduce_at_zero(j)
    assert (r.k, r.exponent) == (1, 0)
    assert r.residue == alg.residue.one

    r = reduce_at_zero(j * j)  # = t, central uniformizer squared
    assert (r.k, r.exponent) == (2, 0)

    i = OrderElement.i(alg)
    r = reduce_at_zero(i)
    assert r.k == 0
    assert r.residue == alg.residue.i

    x = OrderElement.one(alg) + j
    r = reduce_at_zero(x)
    assert (r.k, r.exponent) == (0, 0)

    with pytest.raises(ReductionError):
        reduce_at_zero(OrderElement.zero(alg))


def test_reduce_at_infinity_examples():
    alg = AlgebraParams(3)
    F = alg.field
    j = OrderElement.j(alg)
    pi_inf = j.scale(RatFunc.t_power(F, -1))
    r = reduce_at_infinity(pi_inf)
    assert (r.k, r.exponent) == (1, 0)
    r = reduce_at_infinity(j)
    assert (r.k, r.exponent) == (-1, 0)
    u = alg.residue.from_dlog(3)
    r = reduce_at_infinity(OrderElement.teichmuller(alg, u))
    assert (r.k, r.exponent) == (0, 3)


def test_reduce_is_twisted_homomorphism():
    for q in (3, 5):
        alg = AlgebraParams(q)
        rng = random.Random(35 + q)
        pairs = []
        while len(pairs) < 25:
            x = random_element(alg, rng, deg=1, denom=rng.randrange(2))
            y = random_element(alg, rng, deg=1, denom=rng.randrange(2))
            if not x.is_zero() and not y.is_zero():
                pairs.append((x, y))
        reduce_homomorphism_check(alg, pairs)


def test_reduction_consistent_with_gamma_law():
    # to_gamma composes like the metacyclic law (k + k', e q^{k'} + e')
    alg = AlgebraParams(3, level=1)
    M, R = 8, 2
    rng = random.Random(36)
    for _ in range(25):
        x = random_element(alg, rng, deg=1)
        y = random_element(alg, rng, deg=1)
        if x.is_zero() or y.is_zero():
            continue
        kx, ex = reduce_at_zero(x).to_gamma(R, M)
        ky, ey = reduce_at_zero(y).to_gamma(R, M)
        kxy, exy = reduce_at_zero(x * y).to_gamma(R, M)
        assert kxy == (kx + ky) % R
        assert exy == (ex * pow(3, ky, M) + ey) % M


def test_principal_unit_membership():
    alg = AlgebraParams(3)
    F = alg.field
    one = OrderElement.one(alg)
    assert one.in_K1_infinity()
    x = one + OrderElement.i(alg).scale(RatFunc.t_power(F, -1))
    assert x.in_K1_infinity()
    assert not (one + OrderElement.i(alg)).in_K1_infinity()
    # witnesses shaped t^{-1}(t + c j + d ij) are principal units
    w = OrderElement.from_polys(
        alg, Poly.t(F), Poly.zero(F), Poly.one(F), Poly.one(F),
        t_denominator_power=1,
    )
    assert w.in_K1_infinity()
    assert not OrderElement.j(alg).in_K1_infinity()


def test_maximality_and_discriminant():
    for q in (3, 5, 7, 9):
        alg = AlgebraParams(q)
        assert maximality_certificate(alg)
        det = gram_determinant(alg)
        assert det.is_polynomial() and det.num.degree == 2


def test_ramification_certificates():
    for q in (3, 5):
        alg = AlgebraParams(q)
        cert = ramification_certificate(alg, max_deg=2)
        t = Poly.t(alg.field)
        expected = [p for p in monic_irreducibles(alg.field, 2) if p != t]
        assert cert["split_places"] == expected
        for pi, (x, y) in cert["split_points"].items():
            F = alg.field
            eps = Poly.constant(F, alg.eps)
            lhs = (x * x - eps * y * y - Poly.t(F)) % pi
            assert lhs.is_zero()
        assert cert["ramified"] == ("t", "infinity")


def test_anisotropic_at_t():
    alg = AlgebraParams(3)
    assert split_certificate(alg, Poly.t(alg.field)) is None


def test_unit_congruence_certificate():
    for q in (3, 5):
        assert unit_congruence_certificate(AlgebraParams(q))


def test_params_validation():
    with pytest.raises(ValueError):
        AlgebraParams(2)
    with pytest.raises(ValueError):
        AlgebraParams(4)
    with pytest.raises(ValueError):
        AlgebraParams(3, eps=1)
    with pytest.raises(ValueError):
        AlgebraParams(3, level=0)
    alg = AlgebraParams(3)
    assert alg.eps == 2
    assert AlgebraParams(7).eps == 3


def test_parse_place_compatibility():
    # CLI place strings resolve to the monic irreducibles used here
    F = gf(3)
    assert parse_poly(F, "t-1") == Poly(F, (2, 1))
    assert parse_poly(F, "t^2+1") == Poly(F, (1, 0, 1))
