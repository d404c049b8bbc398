from __future__ import annotations

import random
from fractions import Fraction

import pytest
from _support import multiadic_terms, random_poly, residual_at_slope, worked_branch

from montes.engine import initial_branches
from montes.errors import InternalCheckError
from montes.ffield import FieldTower
from montes.fixtures import golden_poly, random_branch
from montes.polygon import INF, NewtonPolygon
from montes.vtypes import TypeLevel, TypeRec
from montes.zpoly import IntPoly, X, phi_expansion, val_int

GOLDEN = golden_poly()
PHI2 = IntPoly([6, 0, 0, 1])


def x_branch() -> TypeRec:
    """Order-1 branch for phi_1 = x over F_2."""
    return TypeRec([], X, FieldTower(2, [(0, 1)]), 0, 12, [], [])


def f4_branch() -> TypeRec:
    """Order-1 branch for phi_1 = x^2 + x + 1 over F_2, residue field F_4."""
    return TypeRec([], IntPoly([1, 1, 1]), FieldTower(2, [(1, 1, 1)]), 0, 1, [], [])


def f4_order2_branch() -> TypeRec:
    br = f4_branch()
    tw = br.tower
    psi = (tw.gen(1), tw.one(1))  # y + z over F_4
    rep2 = br.representative(1, 2, psi)
    lvl = TypeLevel(br.rep, 1, 2, psi, 0)
    return TypeRec([lvl], rep2, tw.extend(psi), 0, 1, [], [])


def test_type_level_invariants():
    lvl = worked_branch().levels[0]
    assert lvl.V == 1
    assert lvl.ell == 1
    assert lvl.lam == Fraction(-1, 3)
    assert lvl.fdeg == 1
    with pytest.raises(InternalCheckError, match="lowest terms"):
        TypeLevel(X, 2, 4, ((1,), (1,)), 0)


def test_branch_structure():
    br = worked_branch()
    assert br.order == 2
    assert br.p == 2
    assert br.f0 == 1
    assert br.e_prod() == 3
    assert br.f_prod() == 1
    assert br.notation() == "(x; -1/3, x^3 + 6)"
    assert br.vrep == 3


def test_level2_valuations():
    br = worked_branch()
    assert br.v(IntPoly.const(2), 2) == 3
    assert br.v(X, 2) == 1
    assert br.v(IntPoly.const(1408), 2) == 21
    assert br.v(IntPoly.const(896) * PHI2, 2) == 24
    assert br.v(IntPoly.const(220) * PHI2 * PHI2, 2) == 12
    assert br.v(IntPoly(), 2) == INF
    # p-constants scale by the ramification product
    assert br.v(IntPoly.const(40), 2) == 3 * val_int(40, 2)


def test_v_next_on_the_steep_side():
    br = worked_branch()
    assert br.v_next(GOLDEN, 9, 2) == 42


def test_set_rep_invalidates_cached_value():
    br = worked_branch()
    assert br.vrep == 3
    br.set_rep(X)
    assert br.vrep == 1


def test_residue_level0():
    br = x_branch()
    assert br.residue(0, IntPoly.const(4), 1) == br.tower.zero(1)
    assert br.residue(0, IntPoly.const(4), 2) == (1,)
    assert br.residue(0, IntPoly(), 5) == br.tower.zero(1)
    with pytest.raises(InternalCheckError, match="target above"):
        br.residue(0, IntPoly.const(2), 2)
    br4 = f4_branch()
    assert br4.residue(0, IntPoly([6, 2]), 1) == (1, 1)


def test_residue_level1_of_constant_block():
    br = worked_branch()
    assert br.residue(1, IntPoly.const(1408), 21) == br.tower.one(2)
    assert br.residue(1, IntPoly.const(1408), 20) == br.tower.zero(2)


def test_lift_residual_level0():
    br = x_branch()
    assert br.lift_residual(0, (1,), 3) == IntPoly.const(8)
    br4 = f4_branch()
    assert br4.lift_residual(0, br4.tower.gen(1), 2) == IntPoly([0, 4])
    with pytest.raises(ValueError, match="zero element"):
        br.lift_residual(0, br.tower.zero(1), 1)


def test_lift_residual_level1_worked_value():
    br = worked_branch()
    assert br.lift_residual(1, br.tower.one(2), 5) == IntPoly([0, 0, 2])


def test_lift_residue_round_trip_over_f4():
    br = f4_order2_branch()
    tw = br.tower
    rng = random.Random(31)
    done = 0
    while done < 20:
        xi = tw.rand_el(2)
        if tw.is_zero(2, xi):
            continue
        m = rng.randint(0, 8)
        a = br.lift_residual(1, xi, m)
        assert a.degree < br.rep.degree
        assert br.v(a, 2) == m
        assert br.residue(1, a, m) == xi
        done += 1


def test_residue_is_additive_at_fixed_target():
    br = f4_order2_branch()
    tw = br.tower
    rng = random.Random(37)
    done = 0
    for _ in range(400):
        if done >= 12:
            break
        m = rng.randint(0, 6)
        a = random_poly(rng, 2, br.rep.degree - 1, vmax=4)
        b = random_poly(rng, 2, br.rep.degree - 1, vmax=4)
        if br.v(a, 2) < m or br.v(b, 2) < m:
            continue
        lhs = br.residue(1, a + b, m)
        rhs = tw.eadd(2, br.residue(1, a, m), br.residue(1, b, m))
        assert lhs == rhs
        done += 1
    assert done >= 12


def test_residual_on_side_of_reference_cloud():
    br = initial_branches(GOLDEN, 2)[0]
    coeffs, _ = phi_expansion(GOLDEN, br.rep)
    pts = [(j, br.v(c, 1)) for j, c in enumerate(coeffs)]  # vrep is 0 here
    sides = NewtonPolygon(pts).principal()
    tw = br.tower
    assert tw.pstr(1, br.residual_on_side(sides[0], coeffs)) == "y^2 + y + 1"
    assert tw.pstr(1, br.residual_on_side(sides[1], coeffs)) == "y^2 + 1"


def test_representative_construction_matches_hand_value():
    br = initial_branches(GOLDEN, 2)[0]
    one = br.tower.one(1)
    assert br.representative(1, 3, (one, one)) == IntPoly([2, 0, 0, 1])


def test_representative_check_accepts_and_rejects():
    br = initial_branches(GOLDEN, 2)[0]
    one = br.tower.one(1)
    br._check_representative(IntPoly([6, 0, 0, 1]), 1, 3, (one, one), 1, 1)
    with pytest.raises(InternalCheckError):
        br._check_representative(IntPoly([4, 0, 0, 1]), 1, 3, (one, one), 1, 1)


def _assorted_branches() -> list[TypeRec]:
    rng = random.Random(41)
    out = [worked_branch(), f4_order2_branch()]
    out.append(random_branch(rng, 3, 1))
    out.append(random_branch(rng, 5, 2))
    return out


def test_valuation_axioms():
    rng = random.Random(43)
    for br in _assorted_branches():
        r = br.order
        for _ in range(12):
            P = random_poly(rng, br.p, br.rep.degree + 3)
            Q = random_poly(rng, br.p, br.rep.degree + 3)
            assert br.v(P * Q, r) == br.v(P, r) + br.v(Q, r)
            s = P + Q
            if not s.is_zero:
                assert br.v(s, r) >= min(br.v(P, r), br.v(Q, r))
        c = rng.randint(1, 10_000)
        assert br.v(IntPoly.const(c), r) == br.e_prod() * val_int(c, br.p)


def test_multiadic_development_attains_the_value():
    rng = random.Random(47)
    for br in _assorted_branches():
        if br.order < 2:
            continue
        r = br.order
        for _ in range(8):
            P = random_poly(rng, br.p, br.rep.degree - 1)
            terms = multiadic_terms(br, P)
            assert br.v(P, r) == min(br.v(t, r) for t in terms)


def test_slope_residual_is_multiplicative():
    rng = random.Random(53)
    for br in _assorted_branches():
        tw = br.tower
        r = br.order
        for _ in range(5):
            while True:
                e = rng.randint(1, 3)
                h = rng.randint(1, 5)
                if e == 1 or h % e:
                    break
            P = random_poly(rng, br.p, br.rep.degree * 2 + 1)
            Q = random_poly(rng, br.p, br.rep.degree * 2 + 1)
            rp = residual_at_slope(br, P, h, e)
            rq = residual_at_slope(br, Q, h, e)
            rpq = residual_at_slope(br, P * Q, h, e)
            assert rpq == tw.pmul(r, rp, rq)
            assert not tw.is_zero(r, rp[0]) and not tw.is_zero(r, rp[-1])
