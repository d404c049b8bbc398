"""Dense univariate polynomials over the integers.

Coefficients are plain Python ints in ascending order of degree. The zero
polynomial is the empty tuple and has degree -1. Everything here is exact;
the only float is the INF sentinel used for p-adic valuations.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

INF = math.inf


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Immutable dense polynomial over Z."""

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(tuple(int(c) for c in coeffs)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("IntPoly is immutable")

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly((c,))

    @staticmethod
    def x_power(k: int) -> "IntPoly":
        return IntPoly((0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    def scale(self, c: int) -> "IntPoly":
        if c == 0:
            return IntPoly()
        return IntPoly(tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k, k >= 0."""
        if k < 0:
            raise ValueError("negative shift")
        if self.is_zero or k == 0:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def mod_coeffs(self, m: int) -> "IntPoly":
        return IntPoly(tuple(c % m for c in self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms: list[str] = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    terms.append(xs)
                elif c == -1:
                    terms.append(f"-{xs}")
                else:
                    terms.append(f"{c}*{xs}")
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


ZERO = IntPoly()
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def poly_divmod(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Quotient and remainder of a by monic b."""
    if not b.is_monic():
        raise ValueError("division only by monic polynomials")
    db = b.degree
    if a.degree < db:
        return ZERO, a
    r = list(a.coeffs)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            q[i - db] = c
            for j, bc in enumerate(b.coeffs):
                r[i - db + j] -= c * bc
    return IntPoly(q), IntPoly(r[:db])


def poly_mulmod(a: IntPoly, b: IntPoly, mod: IntPoly) -> IntPoly:
    return poly_divmod(a * b, mod)[1]


def phi_expansion(a: IntPoly, phi: IntPoly) -> tuple[list[IntPoly], list[IntPoly]]:
    """phi-adic development of a for monic phi with deg phi >= 1.

    Returns (coeffs, quotients): a = sum coeffs[i] * phi^i with
    deg coeffs[i] < deg phi, and quotients[i] the quotient of the i-th
    division step, so quotients[i] = sum_{j > i} coeffs[j] * phi^(j-i-1).
    """
    if phi.degree < 1:
        raise ValueError("phi must have degree >= 1")
    coeffs: list[IntPoly] = []
    quotients: list[IntPoly] = []
    cur = a
    if cur.is_zero:
        return [ZERO], [ZERO]
    while True:
        q, r = poly_divmod(cur, phi)
        coeffs.append(r)
        quotients.append(q)
        if q.is_zero:
            return coeffs, quotients
        cur = q


def val_int(a: int, p: int) -> int | float:
    """p-adic valuation of an integer; INF for zero."""
    if a == 0:
        return INF
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def val_poly(a: IntPoly, p: int) -> int | float:
    """Minimum p-adic valuation over the coefficients; INF for zero."""
    if a.is_zero:
        return INF
    best: int | float = INF
    for c in a.coeffs:
        if c:
            v = val_int(c, p)
            if v == 0:
                return 0
            if v < best:
                best = v
    return best


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced by b."""
    da, db = a.degree, b.degree
    if da < db:
        return a
    lead = b.lead
    rc = list(a.coeffs)
    for i in range(da, db - 1, -1):
        top = rc[i]
        for j in range(i):
            rc[j] *= lead
        rc[i] = 0
        if top:
            base = i - db
            for j in range(db):
                rc[base + j] -= top * b.coeffs[j]
    return IntPoly(rc[:db])


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("expected exact division")
    return q


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Resultant over Z, subresultant polynomial remainder sequence."""
    if a.is_zero or b.is_zero:
        return 0
    s = 1
    big, small = a, b
    if big.degree < small.degree:
        if (big.degree % 2) and (small.degree % 2):
            s = -s
        big, small = small, big
    if small.degree == 0:
        return s * small.lead**big.degree
    g, h = 1, 1
    while True:
        delta = big.degree - small.degree
        if (big.degree % 2) and (small.degree % 2):
            s = -s
        rem = _prem(big, small)
        if rem.is_zero:
            return 0
        divisor = g * h**delta
        big = small
        small = IntPoly(tuple(_exact_div(c, divisor) for c in rem.coeffs))
        g = big.lead
        if delta == 1:
            h = g
        elif delta > 1:
            h = _exact_div(g**delta, h ** (delta - 1))
        if small.degree == 0:
            d = big.degree
            if d > 1:
                return s * _exact_div(small.lead**d, h ** (d - 1))
            return s * small.lead**d


def derivative(a: IntPoly) -> IntPoly:
    if a.degree < 1:
        return ZERO
    return IntPoly(tuple(i * c for i, c in enumerate(a.coeffs))[1:])


def discriminant(f: IntPoly) -> int:
    """Discriminant of monic f: (-1)^(n(n-1)/2) * Res(f, f')."""
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, derivative(f))


def disc_valuation(f: IntPoly, p: int) -> int | float:
    """v_p(disc f) for monic f; INF when f is not squarefree."""
    return val_int(discriminant(f), p)
