"""Split places, canonical witnesses, Hecke matrices, and adele round trips."""

import random
from collections import Counter

import numpy as np
import pytest

from tjl.funcfield import Poly, RatFunc, parse_poly
from tjl.metacyclic import gamma
from tjl.quaternion import AlgebraParams, OrderElement, reduce_at_zero
from tjl.adelic import (
    AdeleDescription,
    FactorizationError,
    SplitPlace,
    default_places,
    factorize,
    factorize_adele,
    group_of,
    hecke_matrix,
    infinity_action_matrices,
    left_translation_matrix,
    right_translation_matrix,
    standard_conjugator,
    synthesize_random_adele,
    verify_action_relations,
    verify_witness_uniqueness,
    witness_set,
)


def _random_element(alg, rng, deg=2):
    F = alg.field
    coords = []
    for _ in range(4):
        num = Poly(F, tuple(rng.randrange(F.q) for _ in range(deg + 1)))
        coords.append(RatFunc(num))
    return OrderElement(alg, *coords)


def test_split_place_determinant_is_norm():
    rng = random.Random(41)
    for q in (3, 5):
        alg = AlgebraParams(q)
        for pi in default_places(alg, 1)[:2]:
            sp = SplitPlace(alg, pi)
            for _ in range(20):
                x = _random_element(alg, rng)
                y = _random_element(alg, rng)
                mx, my = sp.embed(x), sp.embed(y)
                assert sp.matmul(mx, my) == sp.embed(x * y)
                lhs = sp.det(mx)
                rhs = x.nrd().reduce_mod(sp.pi, sp.modulus)
                assert lhs == rhs


def test_split_place_rejects_t():
    alg = AlgebraParams(3)
    with pytest.raises(ValueError):
        SplitPlace(alg, Poly.t(alg.field))


def test_witness_shifts_frozen_q3():
    alg = AlgebraParams(3)
    F = alg.field
    G = group_of(alg)
    ws = witness_set(alg, parse_poly(F, "t-1"))
    assert sorted(ws.shifts(G)) == [(1, 0), (1, 2), (1, 4), (1, 6)]
    ws = witness_set(alg, parse_poly(F, "t+1"))
    assert sorted(ws.shifts(G)) == [(1, 1), (1, 3), (1, 5), (1, 7)]
    ws = witness_set(alg, parse_poly(F, "t^2+1"))
    assert Counter(ws.shifts(G)) == Counter(
        {(0, 0): 4, (0, 4): 4, (0, 2): 1, (0, 6): 1})


def test_witness_counts_and_normalization():
    for q, max_deg in ((3, 2), (5, 1)):
        alg = AlgebraParams(q)
        for pi in default_places(alg, max_deg):
            ws = witness_set(alg, pi)
            assert len(ws.witnesses) == q ** pi.degree + 1
            for w in ws.witnesses:
                g = w.element
                assert g.in_K1_infinity()
                n = g.nrd()
                assert n.valuation(pi) == 1
                assert n.valuation_at_infinity() == 0
                assert n.t_valuation() == -pi.degree


def test_witness_cosets_cover_exactly():
    alg = AlgebraParams(3)
    for name in ("t-1", "t^2+1"):
        pi = parse_poly(alg.field, name)
        sp = SplitPlace(alg, pi)
        ws = witness_set(alg, pi)
        assert set(ws.by_right) == set(sp.right_coset_labels())
        assert set(ws.by_left) == set(sp.left_coset_labels())


def test_witness_uniqueness_certificates():
    alg = AlgebraParams(3)
    for name in ("t-1", "t+1", "t^2+1"):
        pi = parse_poly(alg.field, name)
        cert = verify_witness_uniqueness(alg, pi, depth_bound=3)
        assert cert["cosets"] == 3 ** pi.degree + 1
        assert cert["witnesses"] == cert["cosets"]
        assert cert["norm_degree_bound"] == 6


def test_hecke_matrices_structure():
    alg = AlgebraParams(3)
    F = alg.field
    G = group_of(alg)
    mats = {name: hecke_matrix(alg, parse_poly(F, name))
            for name in ("t-1", "t+1", "t^2+1")}
    for name, T in mats.items():
        assert T.shape == (16, 16)
        assert T.dtype == np.int64
        assert (T >= 0).all()
        want = 4 if name != "t^2+1" else 10
        assert (T.sum(axis=1) == want).all()
        assert (T.sum(axis=0) == want).all()
    pairs = list(mats.values())
    for A in pairs:
        for B in pairs:
            assert (A @ B == B @ A).all()
    for g in G.elements():
        L = left_translation_matrix(alg, g)
        for T in pairs:
            assert (L @ T == T @ L).all()


def test_hecke_matrix_is_sum_of_right_translations():
    alg = AlgebraParams(3)
    T = hecke_matrix(alg, parse_poly(alg.field, "t-1"))
    S = sum(right_translation_matrix(alg, (1, e)) for e in (0, 2, 4, 6))
    assert (T == S).all()


def test_hecke_independent_of_splitting():
    alg = AlgebraParams(3)
    for name in ("t-1", "t^2+1"):
        pi = parse_poly(alg.field, name)
        T = hecke_matrix(alg, pi)
        conj = SplitPlace(alg, pi, conjugator=standard_conjugator(alg))
        assert (T == hecke_matrix(alg, pi, split=conj)).all()


def test_infinity_action_relations():
    for q in (3, 5):
        verify_action_relations(AlgebraParams(q))
    verify_action_relations(AlgebraParams(3, level=2))


def test_infinity_action_commutes_with_hecke():
    alg = AlgebraParams(3)
    act = infinity_action_matrices(alg)
    mats = [act["uniformizer"]] + act["units"]
    for name in ("t-1", "t+1", "t^2+1"):
        T = hecke_matrix(alg, parse_poly(alg.field, name))
        for A in mats:
            assert (A @ T == T @ A).all()


def test_elementary_factorizations_frozen():
    alg = AlgebraParams(3)
    K = alg.residue
    res = factorize(alg, AdeleDescription("uniformizer"))
    assert res.shift == (1, 0)
    for d in range(1, 8):
        res = factorize(alg, AdeleDescription("teichmuller", unit=K.from_dlog(d)))
        assert res.shift == (0, (-d) % 8)
    pi = parse_poly(alg.field, "t-1")
    shifts = {}
    for lab in SplitPlace(alg, pi).right_coset_labels():
        r = factorize(alg, AdeleDescription("hecke", place=pi, coset=lab))
        assert r.witness.in_K1_infinity()
        shifts[lab] = r.shift
    assert shifts == {("diag",): (1, 2), ("upper", ()): (1, 6),
                      ("upper", (1,)): (1, 4), ("upper", (2,)): (1, 0)}


def test_factorize_rejects_bad_descriptions():
    alg = AlgebraParams(3)
    with pytest.raises(FactorizationError):
        factorize(alg, AdeleDescription("frobenius"))
    with pytest.raises(FactorizationError):
        factorize(alg, AdeleDescription("teichmuller", unit=alg.residue.zero))
    with pytest.raises(FactorizationError):
        factorize(alg, AdeleDescription(
            "hecke", place=parse_poly(alg.field, "t-1"), coset=("upper", (7,))))


def test_round_trips_recover_class():
    alg = AlgebraParams(3)
    places = default_places(alg)
    rng = random.Random(97)
    one = OrderElement.one(alg)
    for _ in range(12):
        state, cls, grand = synthesize_random_adele(alg, rng, places)
        recovered, rho = factorize_adele(alg, state)
        assert recovered == cls
        # the peeled global factor cancels the synthesized one exactly
        assert grand * rho == one
        assert state.infinity.in_K1_infinity()
        for comp in state.split.values():
            assert comp.is_unit()


def test_round_trips_level_two():
    alg = AlgebraParams(3, level=2)
    places = default_places(alg, 1)
    rng = random.Random(101)
    one = OrderElement.one(alg)
    for _ in range(6):
        state, cls, grand = synthesize_random_adele(alg, rng, places)
        recovered, rho = factorize_adele(alg, state)
        assert recovered == cls
        assert grand * rho == one


def test_round_trips_q5():
    alg = AlgebraParams(5)
    places = default_places(alg, 1)
    rng = random.Random(103)
    one = OrderElement.one(alg)
    for _ in range(4):
        state, cls, grand = synthesize_random_adele(alg, rng, places)
        recovered, rho = factorize_adele(alg, state)
        assert recovered == cls
        assert grand * rho == one


def test_level_scaling_is_invisible():
    # multiplying the component at t by t^N leaves the class unchanged
    alg = AlgebraParams(3, level=2)
    G = group_of(alg)
    x = OrderElement.teichmuller(alg, alg.residue.from_dlog(5))
    scaled = OrderElement.scalar(
        alg, RatFunc.t_power(alg.field, alg.level)) * x
    r1 = reduce_at_zero(x)
    r2 = reduce_at_zero(scaled)
    assert r1.to_gamma(G.R, G.M) == r2.to_gamma(G.R, G.M)
    assert r2.k - r1.k == 2 * alg.level
