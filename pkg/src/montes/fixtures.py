"""Benchmark polynomials and random instance generators.

The deterministic families here stress different parts of the engine: a
degree-12 polynomial whose tree needs a refinement, a two-branch family with
arbitrarily long refinement chains, and a tower of representatives reaching
order 6 with very large coefficients.

Random instances are built by actually constructing a valid branch with the
type machinery, then perturbing its representative by a high power of p, so
every expected invariant of the output is known in advance.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import gcd

from .errors import InputError
from .ffield import FieldTower, FPoly
from .vtypes import TypeLevel, TypeRec
from .zpoly import IntPoly, X

GOLDEN_P = 2


def golden_poly() -> IntPoly:
    """x^12 + 4x^6 + 16x^3 + 64: two primes over 2, one refinement pass."""
    return IntPoly([64, 0, 0, 16, 0, 0, 4, 0, 0, 0, 0, 0, 1])


def twist_poly(p: int, k: int) -> IntPoly:
    """(x^2 + x + 1)^2 - p^(2k+1) for p = 1 mod 3: refinement chains of length ~k."""
    if p % 3 != 1:
        raise InputError("twist family needs p = 1 mod 3")
    if k < 1:
        raise InputError("twist family needs k >= 1")
    return IntPoly([1, 1, 1]) ** 2 - IntPoly.const(p ** (2 * k + 1))


TOWER_P = 2


@lru_cache(maxsize=1)
def tower_polys() -> tuple[IntPoly, ...]:
    """Representatives phi_1..phi_8 of a tower of branches over p = 2.

    Through phi_6 each polynomial is the power of a unique prime of 2 with
    residue degree 2 and ramification growing with the level (2-index 12,
    72, 352, 3696, 15408 for phi_2..phi_6).  phi_7 and phi_8 are heavier
    stress variants of the same construction (degrees 288 and 576, several
    primes, coefficients of thousands of bits).
    """

    def c2(k: int) -> IntPoly:
        return IntPoly.const(2**k)

    x = X
    p1 = x * x + x.scale(4) + IntPoly.const(16)
    p2 = p1 * p1 + (x * p1).scale(16) + c2(9)
    p3 = p2 * p2 + c2(12) * (x + IntPoly.const(2)) * p2 + c2(18) * x * p1
    p4 = p3 * p3 + c2(25) * x * p3 + c2(38) * x * p2
    p5 = p4**3 + c2(29) * p3 * p4 * p4 + c2(139) * p3 + c2(153) * p2
    p6 = p5 * p5 + c2(141) * p3 * p5 + c2(279) * p4
    p7 = p6**3 + c2(998) * p1 + c2(1003)
    p8 = p7 * p7 + c2(1505) * (p5 + c2(167)) * p6
    return (p1, p2, p3, p4, p5, p6, p7, p8)


def tower_poly(i: int) -> IntPoly:
    """phi_i of the tower, 1 <= i <= 8."""
    return tower_polys()[i - 1]


# -- random instances ----------------------------------------------------------


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for q in range(2, int(limit**0.5) + 1):
        if flags[q]:
            flags[q * q :: q] = b"\x00" * len(flags[q * q :: q])
    return [i for i, fl in enumerate(flags) if fl]


SMALL_PRIMES = _sieve(1024)


def random_prime(rng: random.Random, lo: int = 2, hi: int = 1024) -> int:
    pool = [q for q in SMALL_PRIMES if lo <= q < hi]
    return rng.choice(pool)


def _random_irreducible(
    tw: FieldTower, k: int, deg: int, rng: random.Random, nonzero_const: bool
) -> FPoly:
    while True:
        coeffs = [tw.rand_el(k) for _ in range(deg)] + [tw.one(k)]
        poly = tuple(coeffs)
        if nonzero_const and tw.is_zero(k, poly[0]):
            continue
        if tw.is_irreducible(k, poly):
            return poly


def random_branch(
    rng: random.Random,
    p: int,
    depth: int,
    *,
    max_m1: int = 2,
    max_e: int = 3,
    max_f: int = 2,
    max_h: int = 5,
) -> TypeRec:
    """A valid branch with `depth` completed levels and a fresh representative.

    Every representative construction runs its own internal checks, so the
    returned branch is certified consistent.
    """
    m1 = rng.randint(1, max_m1)
    field_rng = random.Random(rng.randrange(1 << 30))
    tw0 = FieldTower(p, [], field_rng)
    psi0 = _random_irreducible(tw0, 0, m1, field_rng, nonzero_const=False)
    tower = FieldTower(p, [psi0], field_rng)
    br = TypeRec([], IntPoly(psi0), tower, 0, 1, [], [], path="rnd")
    for _ in range(depth):
        r = br.order
        while True:
            e = rng.randint(1, max_e)
            fdeg = rng.randint(1, max_f)
            h = rng.randint(1, max_h)
            if e * fdeg >= 2 and gcd(h, e) == 1:
                break
        psi = _random_irreducible(br.tower, r, fdeg, rng, nonzero_const=True)
        rep2 = br.representative(h, e, psi)
        lvl = TypeLevel(br.rep, h, e, psi, br.vrep)
        br = TypeRec(
            br.levels + [lvl], rep2, br.tower.extend(psi), 0, 1, [], [], path="rnd"
        )
    return br


def single_type_instance(
    rng: random.Random, p: int, depth: int, **kw
) -> tuple[IntPoly, int, int]:
    """(f, expected e, expected f): f = phi_top + p^N decomposes into exactly
    one prime whose invariants are those of the underlying branch."""
    br = random_branch(rng, p, depth, **kw)
    N = int(br.vrep) + 2
    f = br.rep + IntPoly.const(p**N)
    return f, br.e_prod(), br.f_prod()


def mixed_instance(
    rng: random.Random,
    p: int,
    kinds: int,
    *,
    max_depth: int = 2,
    max_mult: int = 2,
    max_degree: int = 64,
    **kw,
) -> IntPoly:
    """f = product of phi_k^(m_k) + p^N over a few random branches.

    N is taken far above every branch's own data, so the tree of f follows the
    branch types. Irreducibility is not guaranteed; callers must treat a
    reducible-input error as a skip, not a failure.
    """
    for _ in range(64):
        branches = [
            random_branch(rng, p, rng.randint(0, max_depth), **kw)
            for _ in range(kinds)
        ]
        mults = [rng.randint(1, max_mult) for _ in range(kinds)]
        degree = sum(b.rep.degree * m for b, m in zip(branches, mults))
        if degree <= max_degree:
            break
    prod = IntPoly.const(1)
    N = 2
    for b, m in zip(branches, mults):
        prod = prod * b.rep**m
        height = -(-int(b.vrep) // b.e_prod())  # ceil
        N += m * (height + 1)
    return prod + IntPoly.const(p**N)
