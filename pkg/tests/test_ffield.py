from __future__ import annotations

import random

import pytest

from montes.errors import InputError, InternalCheckError
from montes.ffield import FieldTower


def f4() -> FieldTower:
    return FieldTower(2, [(1, 1, 1)])


def f16() -> FieldTower:
    tw = f4()
    z = tw.gen(1)
    return tw.extend((z, tw.one(1), tw.one(1)))  # y^2 + y + z, irreducible over F_4


def test_structure_sizes():
    tw = f16()
    assert tw.height == 2
    assert tw.ext_degree(0) == 1
    assert tw.ext_degree(1) == 2
    assert tw.ext_degree(2) == 4
    assert tw.size(2) == 16


def test_modulus_validation():
    with pytest.raises(InputError, match="monic"):
        FieldTower(3, [(1, 2)])
    with pytest.raises(InputError, match="degree >= 1"):
        FieldTower(3, [(1,)])
    tw = f4()
    # above level 0 the generator must be invertible
    with pytest.raises(InternalCheckError, match="nonzero constant"):
        FieldTower(2, [(1, 1, 1), (tw.zero(1), tw.one(1))])


def test_extend_rejects_reducible():
    tw = FieldTower(2)
    with pytest.raises(InternalCheckError, match="reducible"):
        tw.extend((1, 0, 1))  # y^2 + 1 = (y + 1)^2 over F_2


def test_f4_arithmetic():
    tw = f4()
    z = tw.gen(1)
    one = tw.one(1)
    assert tw.emul(1, z, z) == tw.eadd(1, z, one)
    assert tw.einv(1, z) == tw.eadd(1, z, one)
    assert tw.epow(1, z, 3) == one
    assert tw.epow(1, z, -1) == tw.einv(1, z)
    assert tw.esub(1, z, z) == tw.zero(1)
    with pytest.raises(ZeroDivisionError):
        tw.einv(1, tw.zero(1))


def test_frobenius_is_additive_on_f4():
    tw = f4()
    els = [tw.zero(1), tw.one(1), tw.gen(1), tw.eadd(1, tw.gen(1), tw.one(1))]
    for a in els:
        for b in els:
            lhs = tw.epow(1, tw.eadd(1, a, b), 2)
            rhs = tw.eadd(1, tw.epow(1, a, 2), tw.epow(1, b, 2))
            assert lhs == rhs


def test_element_conversions_and_strings():
    tw = f4()
    assert tw.from_int(1, 5) == tw.one(1)
    assert tw.from_int(1, 4) == tw.zero(1)
    assert tw.embed1(1, 1) == (1,)
    assert tw.embed1(1, 0) == ()
    assert tw.flat(1, tw.gen(1)) == (0, 1)
    assert tw.estr(1, (1, 1)) == "(1,1)"
    assert tw.estr(1, (1,)) == "1"
    assert tw.estr(1, tw.zero(1)) == "0"


def test_gen_of_f16_has_order_fifteen():
    tw = f16()
    g = tw.gen(2)
    assert tw.epow(2, g, 15) == tw.one(2)
    assert tw.epow(2, g, 3) != tw.one(2)
    assert tw.epow(2, g, 5) != tw.one(2)


def test_pstr_layout():
    tw = f4()
    z = tw.gen(1)
    poly = (tw.one(1), tw.eadd(1, z, tw.one(1)), tw.one(1))
    assert tw.pstr(1, poly) == "y^2 + (1,1)*y + 1"
    assert tw.pstr(1, ()) == "0"


def test_factor_level0_cases():
    tw = FieldTower(2)
    assert tw.factor_monic(0, (1, 1, 1)) == [((1, 1, 1), 1)]
    assert tw.factor_monic(0, (1, 0, 1)) == [((1, 1), 2)]
    assert tw.factor_monic(0, (0, 1, 1)) == [((0, 1), 1), ((1, 1), 1)]
    # derivative vanishes, exercising the p-th power path of the squarefree split
    assert tw.factor_monic(0, (1, 0, 0, 0, 1)) == [((1, 1), 4)]  # y^4 + 1 = (y+1)^4


def test_factor_quadratic_over_f4_splits():
    tw = f4()
    one = tw.one(1)
    z = tw.gen(1)
    z1 = tw.eadd(1, z, one)
    lifted = (one, one, one)  # y^2 + y + 1 acquires its roots in F_4
    assert tw.factor_monic(1, lifted) == [((z, one), 1), ((z1, one), 1)]


def test_factor_monic_guards():
    tw = FieldTower(2)
    with pytest.raises(ValueError, match="degree >= 1"):
        tw.factor_monic(0, (1,))
    with pytest.raises(ValueError, match="monic"):
        FieldTower(3).factor_monic(0, (1, 2))


def test_is_irreducible_basics():
    tw = FieldTower(2)
    assert tw.is_irreducible(0, (1, 1))
    assert tw.is_irreducible(0, (1, 1, 1))
    assert not tw.is_irreducible(0, (0, 0, 1))
    assert not tw.is_irreducible(0, (1, 0, 1))
    assert not tw.is_irreducible(0, (1,))


def test_ord_factor():
    tw = FieldTower(2)
    f = (0, 1)  # y
    g = (1, 1)  # y + 1
    prod = tw.pmul(0, tw.pmul(0, g, g), tw.pmul(0, g, f))
    assert tw.ord_factor(0, prod, g) == 3
    assert tw.ord_factor(0, prod, f) == 1
    assert tw.ord_factor(0, prod, (1, 1, 1)) == 0


def _random_monic(tw: FieldTower, k: int, deg: int, rng: random.Random) -> tuple:
    return tuple(tw.rand_el(k) for _ in range(deg)) + (tw.one(k),)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_factor_round_trip_level0(p):
    rng = random.Random(p * 101)
    tw = FieldTower(p, [], random.Random(0))
    for _ in range(20):
        f = _random_monic(tw, 0, rng.randint(1, 6), rng)
        factors = tw.factor_monic(0, f)
        assert sum((len(fac) - 1) * m for fac, m in factors) == len(f) - 1
        for fac, _ in factors:
            assert tw.is_irreducible(0, fac)
            assert tw.eequal(0, fac[-1], tw.one(0))


def test_factor_round_trip_upper_levels():
    rng = random.Random(7)
    tw = f16()
    for k, deg_cap, trials in ((1, 4, 10), (2, 3, 5)):
        for _ in range(trials):
            f = _random_monic(tw, k, rng.randint(1, deg_cap), rng)
            factors = tw.factor_monic(k, f)
            assert sum((len(fac) - 1) * m for fac, m in factors) == len(f) - 1
            for fac, _ in factors:
                assert tw.is_irreducible(k, fac)


def test_factorization_ignores_rng_state():
    f = (2, 4, 1, 0, 3, 1)
    a = FieldTower(5, [], random.Random(1)).factor_monic(0, f)
    b = FieldTower(5, [], random.Random(99999)).factor_monic(0, f)
    assert a == b


def test_inverse_round_trip_all_levels():
    rng = random.Random(13)
    tw = f16()
    for k in (0, 1, 2):
        for _ in range(25):
            a = tw.rand_el(k)
            if tw.is_zero(k, a):
                continue
            assert tw.emul(k, a, tw.einv(k, a)) == tw.one(k)


def test_pdivmod_round_trip():
    rng = random.Random(29)
    tw = f4()
    for _ in range(25):
        f = tuple(tw.rand_el(1) for _ in range(rng.randint(1, 6)))
        g = _random_monic(tw, 1, rng.randint(1, 3), rng)
        q, r = tw.pdivmod(1, tw.ptrim(1, f), g)
        assert len(r) < len(g)
        back = tw.padd(1, tw.pmul(1, q, g), r)
        assert back == tw.ptrim(1, f)
