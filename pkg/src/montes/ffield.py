"""Towers of finite fields F_p = F_0 < F_1 < ... with explicit arithmetic.

Each extension F_{k+1} = F_k[y]/(psi_k) is given by a monic irreducible
polynomial psi_k over F_k. Elements are nested tuples: a level-0 element is
an int in [0, p), a level-k element (k >= 1) is a trimmed tuple of level-(k-1)
elements, and the empty tuple is zero. Polynomials over F_k are trimmed
tuples of level-k elements, ascending degree.

All arithmetic is exact. Factorization over any level uses squarefree
decomposition, distinct-degree splitting and Cantor-Zassenhaus, with output
in a canonical order so results never depend on the internal RNG draws.
"""

from __future__ import annotations

import random
from functools import reduce
from typing import Sequence

from .errors import InputError, InternalCheckError

Element = object  # int at level 0, nested tuple above
FPoly = tuple      # tuple of Element


class FieldTower:
    """F_0 = F_p together with the chain of extensions defined by `moduli`.

    moduli[k] is a monic polynomial over level-k elements of degree >= 1;
    it defines F_{k+1}. For k >= 1 its constant term must be nonzero (the
    generator of F_{k+1} must be invertible); level 0 has no such constraint.
    """

    def __init__(self, p: int, moduli: Sequence[FPoly] = (), rng: random.Random | None = None):
        self.p = p
        self.moduli: list[FPoly] = [tuple(m) for m in moduli]
        self.rng = rng if rng is not None else random.Random(0x5EED)
        for k, m in enumerate(self.moduli):
            self._check_modulus(k, m)

    def _check_modulus(self, k: int, m: FPoly) -> None:
        if len(m) < 2:
            raise InputError("tower modulus must have degree >= 1")
        if not self.eequal(k, m[-1], self.one(k)):
            raise InputError("tower modulus must be monic")
        if k >= 1 and self.is_zero(k, m[0]):
            raise InternalCheckError("tower modulus above level 0 needs nonzero constant term")

    # -- structure -----------------------------------------------------------

    @property
    def height(self) -> int:
        """Number of defined levels above F_0."""
        return len(self.moduli)

    def ext_degree(self, k: int) -> int:
        """[F_k : F_p]."""
        return reduce(lambda a, b: a * b, (len(m) - 1 for m in self.moduli[:k]), 1)

    def size(self, k: int) -> int:
        return self.p ** self.ext_degree(k)

    def extend(self, psi: FPoly) -> "FieldTower":
        k = self.height
        if not self.is_irreducible(k, psi):
            raise InternalCheckError("tower extension by a reducible polynomial")
        return FieldTower(self.p, self.moduli + [tuple(psi)], self.rng)

    # -- elements ------------------------------------------------------------

    def zero(self, k: int) -> Element:
        return 0 if k == 0 else ()

    def one(self, k: int) -> Element:
        return 1 if k == 0 else (self.one(k - 1),)

    def from_int(self, k: int, n: int) -> Element:
        n %= self.p
        if n == 0:
            return self.zero(k)
        return n if k == 0 else (self.from_int(k - 1, n),)

    def gen(self, k: int) -> Element:
        """Class of y in F_k = F_{k-1}[y]/(psi_{k-1}), k >= 1."""
        if k < 1:
            raise ValueError("level-0 field has no tower generator")
        y = (self.zero(k - 1), self.one(k - 1))
        return self._el(k, self.pmod(k - 1, y, self.moduli[k - 1]))

    def embed1(self, k: int, a: Element) -> Element:
        """F_{k-1} -> F_k."""
        return () if self.is_zero(k - 1, a) else (a,)

    def is_zero(self, k: int, a: Element) -> bool:
        return a == 0 if k == 0 else a == ()

    def eequal(self, k: int, a: Element, b: Element) -> bool:
        return a == b

    def _el(self, k: int, coeffs: FPoly) -> Element:
        """Reinterpret a reduced polynomial over F_{k-1} as an F_k element."""
        return tuple(coeffs)

    def eadd(self, k: int, a: Element, b: Element) -> Element:
        if k == 0:
            return (a + b) % self.p
        la, lb = len(a), len(b)
        if la < lb:
            a, b, la, lb = b, a, lb, la
        out = list(a)
        for i in range(lb):
            out[i] = self.eadd(k - 1, out[i], b[i])
        return self._trim_el(k, out)

    def eneg(self, k: int, a: Element) -> Element:
        if k == 0:
            return (-a) % self.p
        return tuple(self.eneg(k - 1, c) for c in a)

    def esub(self, k: int, a: Element, b: Element) -> Element:
        return self.eadd(k, a, self.eneg(k, b))

    def emul(self, k: int, a: Element, b: Element) -> Element:
        if k == 0:
            return (a * b) % self.p
        if a == () or b == ():
            return ()
        prod = self._pmul_raw(k - 1, a, b)
        return self._el(k, self.pmod(k - 1, prod, self.moduli[k - 1]))

    def epow(self, k: int, a: Element, n: int) -> Element:
        if n < 0:
            return self.epow(k, self.einv(k, a), -n)
        result = self.one(k)
        base = a
        while n:
            if n & 1:
                result = self.emul(k, result, base)
            base = self.emul(k, base, base)
            n >>= 1
        return result

    def einv(self, k: int, a: Element) -> Element:
        if self.is_zero(k, a):
            raise ZeroDivisionError("inverse of zero field element")
        if k == 0:
            return pow(a, -1, self.p)
        # extended Euclid in F_{k-1}[y] against the modulus
        r0, r1 = self.moduli[k - 1], tuple(a)
        s0, s1 = (), (self.one(k - 1),)
        while self._pdeg(r1) > 0:
            q, r = self.pdivmod(k - 1, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.psub(k - 1, s0, self.pmul(k - 1, q, s1))
            if r1 == ():
                raise InternalCheckError("non-invertible element: modulus not irreducible")
        c = self.einv(k - 1, r1[0])
        out = self.pscale(k - 1, c, s1)
        return self._el(k, self.pmod(k - 1, out, self.moduli[k - 1]))

    def _trim_el(self, k: int, coeffs: list) -> Element:
        n = len(coeffs)
        while n > 0 and self.is_zero(k - 1, coeffs[n - 1]):
            n -= 1
        return tuple(coeffs[:n])

    def rand_el(self, k: int) -> Element:
        if k == 0:
            return self.rng.randrange(self.p)
        d = len(self.moduli[k - 1]) - 1
        return self._trim_el(k, [self.rand_el(k - 1) for _ in range(d)])

    def flat(self, k: int, a: Element) -> tuple[int, ...]:
        """Canonical flattening to a fixed-length int tuple, for ordering."""
        if k == 0:
            return (a,)
        d = len(self.moduli[k - 1]) - 1
        padded = list(a) + [self.zero(k - 1)] * (d - len(a))
        out: list[int] = []
        for c in padded:
            out.extend(self.flat(k - 1, c))
        return tuple(out)

    def estr(self, k: int, a: Element) -> str:
        flat = self.flat(k, a)
        if not any(flat[1:]):
            return str(flat[0])
        return "(" + ",".join(str(c) for c in flat) + ")"

    # -- polynomials over F_k --------------------------------------------------

    def pstr(self, k: int, f: FPoly) -> str:
        """Readable form of a polynomial over level k, highest degree first."""
        if not f:
            return "0"
        parts: list[str] = []
        for j in range(len(f) - 1, -1, -1):
            if self.is_zero(k, f[j]):
                continue
            c = self.estr(k, f[j])
            if j == 0:
                parts.append(c)
            else:
                ystr = "y" if j == 1 else f"y^{j}"
                parts.append(ystr if c == "1" else f"{c}*{ystr}")
        return " + ".join(parts)

    def ptrim(self, k: int, coeffs: Sequence[Element]) -> FPoly:
        n = len(coeffs)
        while n > 0 and self.is_zero(k, coeffs[n - 1]):
            n -= 1
        return tuple(coeffs[:n])

    def _pdeg(self, f: FPoly) -> int:
        return len(f) - 1

    def pconst(self, k: int, a: Element) -> FPoly:
        return () if self.is_zero(k, a) else (a,)

    def padd(self, k: int, f: FPoly, g: FPoly) -> FPoly:
        if len(f) < len(g):
            f, g = g, f
        out = list(f)
        for i, c in enumerate(g):
            out[i] = self.eadd(k, out[i], c)
        return self.ptrim(k, out)

    def pneg(self, k: int, f: FPoly) -> FPoly:
        return tuple(self.eneg(k, c) for c in f)

    def psub(self, k: int, f: FPoly, g: FPoly) -> FPoly:
        return self.padd(k, f, self.pneg(k, g))

    def pscale(self, k: int, c: Element, f: FPoly) -> FPoly:
        if self.is_zero(k, c):
            return ()
        return self.ptrim(k, [self.emul(k, c, a) for a in f])

    def _pmul_raw(self, k: int, f: FPoly, g: FPoly) -> FPoly:
        if not f or not g:
            return ()
        out = [self.zero(k)] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if not self.is_zero(k, a):
                for j, b in enumerate(g):
                    out[i + j] = self.eadd(k, out[i + j], self.emul(k, a, b))
        return self.ptrim(k, out)

    def pmul(self, k: int, f: FPoly, g: FPoly) -> FPoly:
        return self._pmul_raw(k, f, g)

    def pdivmod(self, k: int, f: FPoly, g: FPoly) -> tuple[FPoly, FPoly]:
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        dg = len(g) - 1
        inv_lead = self.einv(k, g[-1])
        r = list(f)
        if len(r) - 1 < dg:
            return (), tuple(f)
        q = [self.zero(k)] * (len(r) - dg)
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i]
            if not self.is_zero(k, c):
                qc = self.emul(k, c, inv_lead)
                q[i - dg] = qc
                for j, bc in enumerate(g):
                    r[i - dg + j] = self.esub(k, r[i - dg + j], self.emul(k, qc, bc))
        return self.ptrim(k, q), self.ptrim(k, r[:dg])

    def pmod(self, k: int, f: FPoly, g: FPoly) -> FPoly:
        return self.pdivmod(k, f, g)[1]

    def pmonic(self, k: int, f: FPoly) -> FPoly:
        if not f:
            return f
        if self.eequal(k, f[-1], self.one(k)):
            return f
        return self.pscale(k, self.einv(k, f[-1]), f)

    def pgcd(self, k: int, f: FPoly, g: FPoly) -> FPoly:
        while g:
            f, g = g, self.pmod(k, f, g)
        return self.pmonic(k, f)

    def pmulmod(self, k: int, f: FPoly, g: FPoly, mod: FPoly) -> FPoly:
        return self.pmod(k, self.pmul(k, f, g), mod)

    def ppowmod(self, k: int, f: FPoly, n: int, mod: FPoly) -> FPoly:
        result: FPoly = (self.one(k),)
        base = self.pmod(k, f, mod)
        while n:
            if n & 1:
                result = self.pmulmod(k, result, base, mod)
            base = self.pmulmod(k, base, base, mod)
            n >>= 1
        return result

    def pderiv(self, k: int, f: FPoly) -> FPoly:
        out = []
        for i in range(1, len(f)):
            out.append(self.emul(k, self.from_int(k, i), f[i]))
        return self.ptrim(k, out)

    def peval(self, k: int, f: FPoly, a: Element) -> Element:
        acc = self.zero(k)
        for c in reversed(f):
            acc = self.eadd(k, self.emul(k, acc, a), c)
        return acc

    def peval_gen(self, k: int, f: FPoly) -> Element:
        """Value of f at the generator of F_{k+1}, i.e. f reduced mod psi_k."""
        return self._el(k + 1, self.pmod(k, f, self.moduli[k]))

    def poly_key(self, k: int, f: FPoly):
        """Total order key: degree, then flattened coefficients low to high."""
        return (len(f) - 1, tuple(self.flat(k, c) for c in f))

    # -- factorization ---------------------------------------------------------

    def _pth_root_el(self, k: int, a: Element) -> Element:
        d = self.ext_degree(k)
        return self.epow(k, a, self.p ** (d - 1)) if d > 1 else a

    def _squarefree_parts(self, k: int, f: FPoly) -> list[tuple[FPoly, int]]:
        """Monic f -> [(squarefree factor, multiplicity)], char-p aware."""
        out: list[tuple[FPoly, int]] = []
        c = self.pgcd(k, f, self.pderiv(k, f))
        w = self.pdivmod(k, f, c)[0]
        i = 1
        while len(w) > 1:
            y = self.pgcd(k, w, c)
            fac = self.pdivmod(k, w, y)[0]
            if len(fac) > 1:
                out.append((self.pmonic(k, fac), i))
            w = y
            c = self.pdivmod(k, c, y)[0]
            i += 1
        if len(c) > 1:
            # c is a p-th power: take the root coefficient-wise and recurse
            root = self.ptrim(
                k, [self._pth_root_el(k, c[j]) for j in range(0, len(c), self.p)]
            )
            for fac, m in self._squarefree_parts(k, root):
                out.append((fac, m * self.p))
        return out

    def _distinct_degree(self, k: int, f: FPoly) -> list[tuple[FPoly, int]]:
        """Squarefree monic f -> [(product of irreducibles of degree d, d)]."""
        out: list[tuple[FPoly, int]] = []
        q = self.size(k)
        y: FPoly = (self.zero(k), self.one(k))
        h = self.pmod(k, y, f)
        rest = f
        d = 0
        while len(rest) - 1 > 2 * d:
            d += 1
            h = self.ppowmod(k, h, q, rest)
            g = self.pgcd(k, self.psub(k, h, self.pmod(k, y, rest)), rest)
            if len(g) > 1:
                out.append((g, d))
                rest = self.pdivmod(k, rest, g)[0]
                h = self.pmod(k, h, rest)
        if len(rest) > 1:
            out.append((rest, len(rest) - 1))
        return out

    def _split_equal_degree(self, k: int, f: FPoly, d: int) -> list[FPoly]:
        """f = product of distinct irreducibles, each of degree d."""
        n = len(f) - 1
        if n == d:
            return [f]
        q = self.size(k)
        one: FPoly = (self.one(k),)
        while True:
            a = self.ptrim(k, [self.rand_el(k) for _ in range(n)])
            if len(a) - 1 < 1:
                continue
            if self.p == 2:
                # trace map over F_2: sum of 2^i-th powers
                t = self.pmod(k, a, f)
                acc = t
                for _ in range(self.ext_degree(k) * d - 1):
                    t = self.pmulmod(k, t, t, f)
                    acc = self.padd(k, acc, t)
                g = self.pgcd(k, acc, f)
            else:
                b = self.ppowmod(k, a, (q**d - 1) // 2, f)
                g = self.pgcd(k, self.psub(k, b, one), f)
            if 0 < len(g) - 1 < n:
                left = self._split_equal_degree(k, g, d)
                right = self._split_equal_degree(k, self.pdivmod(k, f, g)[0], d)
                return left + right

    def factor_monic(self, k: int, f: FPoly) -> list[tuple[FPoly, int]]:
        """Monic f of degree >= 1 -> [(irreducible monic factor, multiplicity)],
        sorted by the canonical key, independent of RNG draws."""
        if len(f) < 2:
            raise ValueError("factor_monic needs degree >= 1")
        if not self.eequal(k, f[-1], self.one(k)):
            raise ValueError("factor_monic needs a monic polynomial")
        counts: dict[FPoly, int] = {}
        for sf, mult in self._squarefree_parts(k, f):
            for block, d in self._distinct_degree(k, sf):
                for irr in self._split_equal_degree(k, block, d):
                    fac = self.pmonic(k, irr)
                    counts[fac] = counts.get(fac, 0) + mult
        found = sorted(counts.items(), key=lambda fm: self.poly_key(k, fm[0]))
        # self-check: factors multiply back to f
        prod: FPoly = (self.one(k),)
        for fac, m in found:
            for _ in range(m):
                prod = self.pmul(k, prod, fac)
        if prod != tuple(f):
            raise InternalCheckError("factorization self-check failed")
        return found

    def is_irreducible(self, k: int, f: FPoly) -> bool:
        d = len(f) - 1
        if d < 1:
            return False
        if d == 1:
            return True
        if not self.eequal(k, f[-1], self.one(k)):
            f = self.pmonic(k, f)
        q = self.size(k)
        y: FPoly = (self.zero(k), self.one(k))
        # y^(q^d) == y mod f, and no coincidence at proper-divisor stages
        h = self.pmod(k, y, f)
        powers = {}
        for i in range(1, d + 1):
            h = self.ppowmod(k, h, q, f)
            powers[i] = h
        if powers[d] != self.pmod(k, y, f):
            return False
        for ell in _prime_divisors(d):
            g = self.pgcd(k, self.psub(k, powers[d // ell], self.pmod(k, y, f)), f)
            if len(g) - 1 != 0:
                return False
        return True

    def ord_factor(self, k: int, f: FPoly, fac: FPoly) -> int:
        """Multiplicity of fac in f by repeated exact division."""
        count = 0
        cur = f
        while len(cur) >= len(fac):
            q, r = self.pdivmod(k, cur, fac)
            if r != ():
                break
            count += 1
            cur = q
        return count


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
