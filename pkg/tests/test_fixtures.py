from __future__ import annotations

import random

import pytest

from montes.engine import montes_run
from montes.errors import InputError
from montes.fixtures import (
    GOLDEN_P,
    SMALL_PRIMES,
    TOWER_P,
    golden_poly,
    mixed_instance,
    random_branch,
    random_prime,
    single_type_instance,
    tower_poly,
    tower_polys,
    twist_poly,
)
from montes.parsing import is_probable_prime, parse_poly
from montes.zpoly import IntPoly


def test_reference_polynomial():
    assert GOLDEN_P == 2
    assert golden_poly() == parse_poly("x^12 + 4*x^6 + 16*x^3 + 64")


def test_twist_construction():
    assert twist_poly(7, 1) == parse_poly("(x^2+x+1)^2 - 7^3")
    assert twist_poly(13, 3) == parse_poly("(x^2+x+1)^2 - 13^7")
    assert twist_poly(7, 5) == parse_poly("(x^2+x+1)^2 - 7^11")
    assert twist_poly(7, 2).degree == 4


def test_twist_guards():
    with pytest.raises(InputError, match="p = 1 mod 3"):
        twist_poly(5, 2)
    with pytest.raises(InputError, match="k >= 1"):
        twist_poly(7, 0)


def test_tower_degrees_and_heads():
    polys = tower_polys()
    assert TOWER_P == 2
    assert tuple(g.degree for g in polys) == (2, 4, 8, 16, 48, 96, 288, 576)
    assert all(g.is_monic() for g in polys)
    assert tower_poly(1) == polys[0]
    assert tower_poly(8) == polys[7]
    # each step is built from the previous one, so leading blocks agree
    assert polys[1] != polys[0]


def test_small_primes_table():
    assert SMALL_PRIMES[0] == 2
    assert SMALL_PRIMES[-1] == 1021
    assert len(SMALL_PRIMES) == 172
    assert all(is_probable_prime(q) for q in SMALL_PRIMES)


def test_random_prime_respects_bounds():
    rng = random.Random(11)
    for _ in range(50):
        q = random_prime(rng, 100, 200)
        assert 100 <= q < 200 and is_probable_prime(q)


def test_random_branch_shapes():
    for depth in (1, 2, 3):
        rng = random.Random(3)
        br = random_branch(rng, 5, depth)
        # depth completed levels plus a fresh representative one order up
        assert br.order == depth + 1
        assert len(br.levels) == depth
        assert br.rep.is_monic()
        assert br.rep.degree >= br.levels[-1].phi.degree
        assert br.vrep >= 0
        for lv in br.levels:
            assert lv.lam < 0


def test_single_type_instance_runs_to_one_prime():
    rng = random.Random(17)
    for _ in range(6):
        p = random_prime(rng, 2, 50)
        f, e, fdeg = single_type_instance(rng, p, rng.randint(1, 2))
        res = montes_run(f, p)
        assert [(pr.e, pr.f) for pr in res.primes] == [(e, fdeg)]
        assert e * fdeg == f.degree


def test_mixed_instance_degree_bound():
    rng = random.Random(23)
    seen = 0
    for _ in range(20):
        p = random_prime(rng, 2, 100)
        try:
            f = mixed_instance(rng, p, rng.randint(1, 3), max_degree=40)
        except InputError:
            continue
        assert f.is_monic() and 1 <= f.degree <= 40
        seen += 1
    assert seen >= 10


def test_mixed_instance_is_usually_runnable():
    rng = random.Random(29)
    ran = 0
    for _ in range(12):
        p = random_prime(rng, 2, 60)
        try:
            f = mixed_instance(rng, p, rng.randint(1, 2), max_degree=24)
            res = montes_run(f, p)
        except InputError:
            continue
        assert sum(pr.e * pr.f for pr in res.primes) == f.degree
        ran += 1
    assert ran >= 6
