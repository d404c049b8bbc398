"""Input parsing: integer polynomials in x, coefficient lists, primality.

Two input shapes are accepted for f:
  - an expression over Z in the variable x, e.g. "x^12+4*x^6+16*x^3+64" or
    "(x^2+x+1)^2-7^11"; both ^ and ** raise to a power, multiplication needs
    an explicit *;
  - a comma or space separated coefficient list, constant term first, e.g.
    "64,0,0,16,0,0,4,0,0,0,0,0,1", optionally in [brackets].
"""

from __future__ import annotations

import random
import re

from .errors import InputError
from .zpoly import IntPoly, X

_TOKEN = re.compile(r"\s*(\d+|\*\*|[x+\-*^()])")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"cannot read polynomial near {text[pos:pos + 12]!r}")
        out.append(m.group(1))
        pos = m.end()
    out.append("$")
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i]

    def take(self) -> str:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self) -> IntPoly:
        sign = 1
        while self.peek() in "+-":
            if self.take() == "-":
                sign = -sign
        acc = self.term().scale(sign)
        while self.peek() in "+-":
            sign = 1
            while self.peek() in "+-":
                if self.take() == "-":
                    sign = -sign
            acc = acc + self.term().scale(sign)
        return acc

    def term(self) -> IntPoly:
        acc = self.power()
        while self.peek() == "*":
            self.take()
            acc = acc * self.power()
        return acc

    def power(self) -> IntPoly:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            t = self.take()
            if not t.isdigit():
                raise InputError("exponent must be a nonnegative integer literal")
            return base ** int(t)
        return base

    def atom(self) -> IntPoly:
        t = self.take()
        if t == "x":
            return X
        if t.isdigit():
            return IntPoly.const(int(t))
        if t == "(":
            inner = self.expr()
            if self.take() != ")":
                raise InputError("unbalanced parenthesis in polynomial")
            return inner
        raise InputError(f"unexpected token {t!r} in polynomial")


def parse_poly(text: str) -> IntPoly:
    """Parse f from an expression in x or a coefficient list."""
    text = text.strip()
    if not text:
        raise InputError("empty polynomial")
    if "x" in text:
        parser = _Parser(_tokenize(text))
        poly = parser.expr()
        if parser.take() != "$":
            raise InputError("trailing input after polynomial")
        return poly
    body = text.strip("[]")
    parts = [s for s in re.split(r"[,\s]+", body) if s]
    try:
        coeffs = [int(s) for s in parts]
    except ValueError as exc:
        raise InputError(f"bad coefficient in list: {exc}") from None
    if not coeffs:
        raise InputError("empty coefficient list")
    return IntPoly(coeffs)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin: deterministic below the 12-base bound, 64 rounds above."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x in (1, n - 1):
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < _MR_LIMIT:
        bases = [a for a in _MR_BASES if a < n]
    else:
        rng = random.Random(n ^ 0xD1CE)
        bases = [rng.randrange(2, n - 1) for _ in range(64)]
    return not any(witness(a) for a in bases)


def validate_prime(p: int) -> int:
    if not is_probable_prime(p):
        raise InputError(f"p = {p} is not prime")
    return p


def validate_monic(f: IntPoly) -> IntPoly:
    if f.degree < 1:
        raise InputError("f must have degree >= 1")
    if not f.is_monic():
        raise InputError("f must be monic")
    return f
