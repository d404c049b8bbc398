"""Triangular p-integral basis, stem extraction, and maximality criteria.

The engine emits n pairs (g, nu) meaning g(theta)/p^nu. Those generators,
together with Z[theta], span a module M in K = Q[x]/(f). This module builds
the canonical triangular basis of M: monic numerators g_d of degree d with
denominator exponents mu_d, entries reduced to tight ranges, so equal modules
produce identical bases.

All lattice arithmetic runs mod p^nu_bar (nu_bar = max nu): M contains
Z[theta], which already absorbs p^nu_bar Z^n, so nothing is lost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .engine import MontesResult
from .errors import InternalCheckError
from .zpoly import INF, IntPoly, ONE, resultant, val_int


@dataclass
class BasisReport:
    p: int
    n: int
    nu_bar: int
    basis: list[tuple[IntPoly, int]]  # (monic numerator of degree d, mu_d)
    stem: list[tuple[IntPoly, int]]  # rows at the strict mu jumps
    mu: list[int]
    sum_nu: int
    ind: int
    ind_num: int | None
    stem_ok: bool
    numerator_ok: bool
    maximal: bool
    flags: list[str]


class _Lattice:
    """Online triangular form of a sublattice of Z^n containing p^nu_bar Z^n.

    rows[d], when present, is a vector with top nonzero entry at index d
    normalized to the pure power p^piv[d]. An absent slot stands for the
    vector p^nu_bar e_d.
    """

    def __init__(self, p: int, n: int, nu_bar: int):
        self.p = p
        self.n = n
        self.nu_bar = nu_bar
        self.modulus = p**nu_bar
        self.rows: list[list[int] | None] = [None] * n
        self.piv: list[int | None] = [None] * n

    def insert(self, vec: list[int]) -> None:
        p, mod = self.p, self.modulus
        if mod == 1:
            return
        vec = [c % mod for c in vec]
        while True:
            d = -1
            for i in range(self.n - 1, -1, -1):
                if vec[i]:
                    d = i
                    break
            if d < 0:
                return
            a = val_int(vec[d], p)
            unit = vec[d] // p**a
            inv = pow(unit, -1, mod)
            vec = [(c * inv) % mod for c in vec]
            if self.rows[d] is None:
                self.rows[d] = vec
                self.piv[d] = a
                return
            if a < self.piv[d]:
                self.rows[d], vec = vec, self.rows[d]
                self.piv[d], a = a, self.piv[d]
            q = p ** (a - self.piv[d])
            row = self.rows[d]
            vec = [(c - q * rc) % mod for c, rc in zip(vec, row)]
            if vec[d] != 0:
                raise InternalCheckError("pivot elimination left a residue")

    def theta_closure(self, f: IntPoly) -> None:
        """Insert x*row mod f for every row until the pivots stop moving."""
        n = self.n
        fc = f.coeffs
        while True:
            before = list(self.piv)
            for d in range(n):
                row = self.rows[d]
                if row is None:
                    continue
                shifted = [0] + list(row)
                top = shifted[n]
                if top:
                    shifted = [c - top * fc[i] for i, c in enumerate(shifted)]
                self.insert(shifted[:n])
            if self.piv == before:
                return

    def reduced_rows(self) -> tuple[list[list[int]], list[int]]:
        """Materialize all n rows, entries below each pivot in [0, p^piv[j])."""
        p, mod, n = self.p, self.modulus, self.n
        out: list[list[int]] = []
        pivots: list[int] = []
        for d in range(n):
            if self.rows[d] is None:
                vec = [0] * n
                vec[d] = mod if mod > 1 else 1
                out.append(vec)
                pivots.append(self.nu_bar)
                continue
            vec = list(self.rows[d])
            for j in range(d - 1, -1, -1):
                if self.rows[j] is None:
                    continue
                q = vec[j] // p ** self.piv[j]
                if q:
                    rj = self.rows[j]
                    vec = [(c - q * rc) % mod for c, rc in zip(vec, rj)]
            out.append(vec)
            pivots.append(self.piv[d])
        return out, pivots


def triangular_basis(
    p: int, n: int, pairs: list[tuple[IntPoly, int]], f: IntPoly
) -> tuple[list[tuple[IntPoly, int]], list[int], int]:
    """Canonical triangular basis of the module spanned by pairs and Z[theta].

    Returns (rows, mu, nu_bar) with rows[d] = (monic numerator of degree d,
    mu_d) and mu nondecreasing with mu[0] = 0.
    """
    if len(pairs) != n:
        raise InternalCheckError(f"expected {n} generators, got {len(pairs)}")
    nu_bar = max((nu for _, nu in pairs), default=0)
    lat = _Lattice(p, n, nu_bar)
    for g, nu in pairs:
        if g.degree >= n:
            raise InternalCheckError("generator numerator degree out of range")
        scale = p ** (nu_bar - nu)
        vec = [0] * n
        for i, c in enumerate(g.coeffs):
            vec[i] = c * scale
        lat.insert(vec)
    lat.theta_closure(f)

    vecs, pivots = lat.reduced_rows()
    basis: list[tuple[IntPoly, int]] = []
    mu: list[int] = []
    for d in range(n):
        a = pivots[d]
        pw = p**a
        if any(c % pw for c in vecs[d]):
            raise InternalCheckError(
                "triangular row is not divisible by its pivot power"
            )
        g = IntPoly([c // pw for c in vecs[d]])
        if g.degree != d or g.coeffs[d] != 1:
            raise InternalCheckError("triangular numerator is not monic of its degree")
        basis.append((g, nu_bar - a))
        mu.append(nu_bar - a)
    if mu and mu[0] != 0:
        raise InternalCheckError("degree-zero denominator exponent is nonzero")
    if any(mu[i] > mu[i + 1] for i in range(n - 1)):
        raise InternalCheckError("denominator exponents are not nondecreasing")
    return basis, mu, nu_bar


def extract_stem(basis: list[tuple[IntPoly, int]]) -> list[tuple[IntPoly, int]]:
    """Rows at the strict jumps of mu, starting with (1, 0)."""
    stem: list[tuple[IntPoly, int]] = [(ONE, 0)]
    prev = 0
    for g, m in basis[1:]:
        if m > prev:
            stem.append((g, m))
            prev = m
    return stem


def stem_criterion(stem: list[tuple[IntPoly, int]], n: int, ind: int) -> bool:
    """sum over stem entries of (next degree - degree) * mu == ind."""
    total = 0
    for i, (g, m) in enumerate(stem):
        d_next = stem[i + 1][0].degree if i + 1 < len(stem) else n
        total += (d_next - g.degree) * m
    return total == ind


def det_valuation(p: int, mat: list[list[int]], K: int) -> int | None:
    """v_p(det mat) by elimination mod p^K; None when p^K is too small."""
    M = p**K
    n = len(mat)
    a = [[c % M for c in row] for row in mat]
    vdet = 0
    for col in range(n):
        best, bestv = -1, K
        for i in range(col, n):
            e = a[i][col]
            if e:
                v = val_int(e, p)
                if v < bestv:
                    best, bestv = i, v
        if best < 0 or vdet + bestv >= K:
            return None
        vdet += bestv
        a[col], a[best] = a[best], a[col]
        pivot = a[col][col]
        inv = pow(pivot // p**bestv, -1, M)
        pw = p**bestv
        for i in range(col + 1, n):
            e = a[i][col]
            if e:
                factor = ((e // pw) * inv) % M
                arow, acol = a[i], a[col]
                a[i] = [(x - factor * y) % M for x, y in zip(arow, acol)]
    return vdet


def numerator_criterion(
    p: int, n: int, pairs: list[tuple[IntPoly, int]], ind: int
) -> tuple[bool, int | None, int, list[str]]:
    """Check sum(nu) == v_p(det of numerator matrix) + ind.

    Returns (ok, ind_num, sum_nu, flags). Retries with a doubled precision
    when the determinant valuation cannot be certified.
    """
    flags: list[str] = []
    sum_nu = sum(nu for _, nu in pairs)
    mat = []
    for g, _ in pairs:
        row = [0] * n
        for i, c in enumerate(g.coeffs):
            row[i] = c
        mat.append(row)
    K = max(sum_nu - ind, 0) + 48
    ind_num: int | None = None
    for _ in range(7):
        ind_num = det_valuation(p, mat, K)
        if ind_num is not None:
            break
        K *= 2
    if ind_num is None:
        flags.append("numerator_determinant_unresolved")
        return False, None, sum_nu, flags
    return sum_nu == ind_num + ind, ind_num, sum_nu, flags


def build_basis(res: MontesResult) -> BasisReport:
    """Triangular basis, stem, and both maximality criteria for a run."""
    n = res.n
    basis, mu, nu_bar = triangular_basis(res.p, n, res.basis_raw, res.f)
    stem = extract_stem(basis)
    stem_ok = stem_criterion(stem, n, res.ind)
    num_ok, ind_num, sum_nu, flags = numerator_criterion(
        res.p, n, res.basis_raw, res.ind
    )
    return BasisReport(
        p=res.p,
        n=n,
        nu_bar=nu_bar,
        basis=basis,
        stem=stem,
        mu=mu,
        sum_nu=sum_nu,
        ind=res.ind,
        ind_num=ind_num,
        stem_ok=stem_ok,
        numerator_ok=num_ok,
        maximal=stem_ok and num_ok,
        flags=flags,
    )


def integral_element(f: IntPoly, p: int, g: IntPoly, nu: int) -> bool:
    """Whether g(theta)/p^nu is an algebraic integer, theta a root of f.

    Uses the characteristic polynomial C(y) = Res_x(f(x), p^nu y - g(x)),
    recovered exactly from n+1 integer resultant samples: the element is
    integral iff p^(n nu) divides every coefficient of C.
    """
    n = f.degree
    if nu <= 0:
        return True
    pw = p**nu
    samples: list[int] = []
    for t in range(n + 1):
        h = IntPoly.const(pw * t) - g
        if h.is_zero:
            samples.append(0)
        elif h.degree == 0:
            samples.append(h.coeffs[0] ** n)
        else:
            samples.append(resultant(f, h))

    coeffs = [Fraction(0)] * (n + 1)
    for t, ct in enumerate(samples):
        num = [Fraction(1)]
        den = 1
        for s in range(n + 1):
            if s == t:
                continue
            nxt = [Fraction(0)] * (len(num) + 1)
            for i, c in enumerate(num):
                nxt[i + 1] += c
                nxt[i] -= c * s
            num = nxt
            den *= t - s
        w = Fraction(ct, den)
        for i, c in enumerate(num):
            coeffs[i] += w * c
    for c in coeffs:
        if c.denominator != 1:
            raise InternalCheckError("characteristic polynomial is not integral")
    if coeffs[n] != pw**n:
        raise InternalCheckError("characteristic polynomial has the wrong degree")
    bound = pw**n
    return all(int(c) % bound == 0 for c in coeffs)
