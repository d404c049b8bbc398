"""Type data for the higher-order Newton polygon method.

A branch of the computation is a TypeRec: a chain of completed levels
(phi_i, lambda_i = -h_i/e_i, psi_i) together with the current representative
polynomial phi_r (r = number of levels + 1), the partial-polygon threshold H,
the expected multiplicity omega, and the running numerator/value lists used
for basis emission.

Level-indexed valuations v_1, v_2, ... are normalized to take integer values:
v_1(P) is the minimum p-adic valuation of the coefficients, and

    v_{i+1}(P) = min_j ( e_i * v_i(a_j) + j * V_{i+1} ),
    V_{i+1} = v_{i+1}(phi_i) = e_i * v_i(phi_i) + h_i,

over the phi_i-adic development P = sum a_j phi_i^j. For a p-constant a this
gives v_i(a) = e_{i-1} * ... * e_1 * v_p(a).

The residue map sends a polynomial with v_{i+1}(a) = m to an element of
F_{i+1}; its normalization (the power of the residual generator z_i twisting
the side-residual value) is fixed so that the map is multiplicative:

    residue(i, a, m) = z_i^tau * R_i(a)(z_i),
    tau = (s - ell_i * m) / e_i,  ell_i = h_i^{-1} mod e_i,

where s is the left abscissa of the points of the phi_i-development achieving
the minimum and R_i(a) the side-residual polynomial read off those points.
lift_residual inverts this map with the anchor abscissa s0 = (ell_i * m) mod
e_i, and representative() uses the lift to build phi_{r+1} whose residual
polynomial is exactly a prescribed factor psi.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InternalCheckError
from .ffield import Element, FieldTower, FPoly
from .polygon import INF, NewtonPolygon, Side
from .zpoly import IntPoly, ZERO, phi_expansion, val_poly


class TypeLevel:
    """One completed level (phi, -h/e, psi) of a type."""

    __slots__ = ("phi", "h", "e", "psi", "fdeg", "vphi", "V", "ell")

    def __init__(self, phi: IntPoly, h: int, e: int, psi: FPoly, vphi: int):
        if math.gcd(h, e) != 1:
            raise InternalCheckError("side slope not in lowest terms")
        self.phi = phi
        self.h = h
        self.e = e
        self.psi = tuple(psi)
        self.fdeg = len(psi) - 1
        self.vphi = vphi
        self.V = e * vphi + h
        self.ell = pow(h, -1, e) if e > 1 else 0

    @property
    def lam(self) -> Fraction:
        return Fraction(-self.h, self.e)


class TypeRec:
    """A working branch: completed levels plus the current representative."""

    def __init__(
        self,
        levels: list[TypeLevel],
        rep: IntPoly,
        tower: FieldTower,
        H: int,
        omega: int,
        pq: list[IntPoly],
        pqvals: list[Fraction],
        path: str = "",
    ):
        self.levels = levels
        self.rep = rep
        self.tower = tower
        self.H = H
        self.omega = omega
        self.pq = pq
        self.pqvals = pqvals
        self.path = path
        self._vcache: dict[tuple, int | float] = {}
        self._vrep: int | None = None

    # -- structure -----------------------------------------------------------

    @property
    def p(self) -> int:
        return self.tower.p

    @property
    def order(self) -> int:
        return len(self.levels) + 1

    @property
    def f0(self) -> int:
        """Degree of the level-0 modulus (the residue degree of phi_1)."""
        return len(self.tower.moduli[0]) - 1

    def e_prod(self) -> int:
        """e_1 * ... * e_{r-1} over the completed levels."""
        out = 1
        for lv in self.levels:
            out *= lv.e
        return out

    def f_prod(self) -> int:
        """f_0 * f_1 * ... * f_{r-1} over the completed levels."""
        out = self.f0
        for lv in self.levels:
            out *= lv.fdeg
        return out

    def set_rep(self, rep: IntPoly) -> None:
        self.rep = rep
        self._vrep = None

    def notation(self) -> str:
        parts = []
        first_phi = self.levels[0].phi if self.levels else self.rep
        parts.append(str(first_phi))
        for i, lv in enumerate(self.levels):
            nxt = self.levels[i + 1].phi if i + 1 < len(self.levels) else self.rep
            parts.append(f"{lv.lam}, {nxt}")
        return "(" + "; ".join(parts) + ")"

    # -- valuations ------------------------------------------------------------

    def v(self, P: IntPoly, r: int) -> int | float:
        """Level-r valuation of P, 1 <= r <= self.order."""
        if P.is_zero:
            return INF
        if r == 1:
            return val_poly(P, self.p)
        key = (P.coeffs, r)
        cached = self._vcache.get(key)
        if cached is not None:
            return cached
        lv = self.levels[r - 2]
        coeffs, _ = phi_expansion(P, lv.phi)
        best: int | float = INF
        for j, c in enumerate(coeffs):
            vc = self.v(c, r - 1)
            if vc != INF:
                cand = lv.e * vc + j * lv.V
                if cand < best:
                    best = cand
        self._vcache[key] = best
        return best

    @property
    def vrep(self) -> int:
        if self._vrep is None:
            val = self.v(self.rep, self.order)
            if val == INF:
                raise InternalCheckError("representative has infinite valuation")
            self._vrep = int(val)
        return self._vrep

    def v_next(self, P: IntPoly, h: int, e: int) -> int | float:
        """v_{r+1}(P) attached to a side of slope -h/e at the current order."""
        if P.is_zero:
            return INF
        V = e * self.vrep + h
        coeffs, _ = phi_expansion(P, self.rep)
        best: int | float = INF
        for j, c in enumerate(coeffs):
            vc = self.v(c, self.order)
            if vc != INF:
                cand = e * vc + j * V
                if cand < best:
                    best = cand
        return best

    # -- residues and lifts ------------------------------------------------------

    def residue(self, lvl: int, a: IntPoly, m: int) -> Element:
        """Image of a in F_{lvl+1} relative to the target valuation
        v_{lvl+1}(a) = m: zero when the valuation exceeds m, an error when it
        is smaller (the caller claimed a point below the polygon)."""
        tw = self.tower
        if a.is_zero:
            return tw.zero(lvl + 1)
        if lvl == 0:
            v1 = val_poly(a, self.p)
            if v1 < m:
                raise InternalCheckError("residue target above the actual value")
            if v1 > m:
                return tw.zero(1)
            q = self.p ** m
            return tw.ptrim(0, tuple((c // q) % self.p for c in a.coeffs))
        lv = self.levels[lvl - 1]
        coeffs, _ = phi_expansion(a, lv.phi)
        vals = [self.v(c, lvl) for c in coeffs]
        actual: int | float = INF
        for j, vc in enumerate(vals):
            if vc != INF:
                cand = lv.e * vc + j * lv.V
                if cand < actual:
                    actual = cand
        if actual < m:
            raise InternalCheckError("residue target above the actual value")
        if actual > m:
            return tw.zero(lvl + 1)
        comp = [
            j
            for j, vc in enumerate(vals)
            if vc != INF and lv.e * vc + j * lv.V == m
        ]
        s = comp[0]
        rcoeffs = [tw.zero(lvl)] * ((comp[-1] - s) // lv.e + 1)
        for j in comp:
            if (j - s) % lv.e:
                raise InternalCheckError("component abscissas not e-aligned")
            rcoeffs[(j - s) // lv.e] = self.residue(lvl - 1, coeffs[j], int(vals[j]))
        value = tw.peval_gen(lvl, tw.ptrim(lvl, rcoeffs))
        num = s - lv.ell * m
        if num % lv.e:
            raise InternalCheckError("twist exponent not integral")
        tau = num // lv.e
        z = tw.gen(lvl + 1)
        return tw.emul(lvl + 1, tw.epow(lvl + 1, z, tau), value)

    def lift_residual(self, lvl: int, xi: Element, m: int) -> IntPoly:
        """Inverse of residue: a polynomial a with deg a < deg phi_{lvl+1},
        v_{lvl+1}(a) = m and residue(lvl, a, m) = xi, for nonzero xi."""
        tw = self.tower
        if tw.is_zero(lvl + 1, xi):
            raise ValueError("lift of the zero element")
        if lvl == 0:
            return IntPoly(tuple(int(c) for c in xi)).scale(self.p**m)
        lv = self.levels[lvl - 1]
        s0 = (lv.ell * m) % lv.e
        tau = (s0 - lv.ell * m) // lv.e
        z = tw.gen(lvl + 1)
        C = tw.emul(lvl + 1, xi, tw.epow(lvl + 1, z, -tau))
        out = ZERO
        for jp, cj in enumerate(C):
            if tw.is_zero(lvl, cj):
                continue
            j = s0 + jp * lv.e
            num = m - j * lv.V
            if num % lv.e or num < 0:
                raise InternalCheckError("lift exponent bookkeeping failed")
            out = out + self.lift_residual(lvl - 1, cj, num // lv.e) * (lv.phi**j)
        vchk = self.v(out, lvl + 1)
        if vchk != m or self.residue(lvl, out, m) != xi:
            raise InternalCheckError("residual lift failed its inverse check")
        return out

    # -- side residuals -----------------------------------------------------------

    def residual_on_side(
        self, side: Side, dev_coeffs: list[IntPoly]
    ) -> FPoly:
        """Residual polynomial of the current-order polygon side, over F_r."""
        r = self.order
        out = []
        for k in range(side.degree + 1):
            j = side.x0 + k * side.e
            mj = side.ordinate_at(j) - j * self.vrep
            if mj.denominator != 1:
                raise InternalCheckError("side lattice ordinate not integral")
            a = dev_coeffs[j] if j < len(dev_coeffs) else ZERO
            out.append(self.residue(r - 1, a, int(mj)))
        return self.tower.ptrim(r, out)

    # -- representatives ------------------------------------------------------------

    def representative(self, h: int, e: int, psi: FPoly) -> IntPoly:
        """A monic phi_{r+1} of degree e * deg(psi) * deg(phi_r) whose polygon
        relative to this type is one-sided of slope -h/e and whose side
        residual is exactly psi."""
        r = self.order
        tw = self.tower
        V = e * self.vrep + h
        fpsi = len(psi) - 1
        out = self.rep ** (e * fpsi)
        for k in range(fpsi):
            beta = psi[k]
            if tw.is_zero(r, beta):
                continue
            out = out + self.lift_residual(r - 1, beta, (fpsi - k) * V) * (
                self.rep ** (e * k)
            )
        self._check_representative(out, h, e, psi, V, fpsi)
        return out

    def _check_representative(
        self, cand: IntPoly, h: int, e: int, psi: FPoly, V: int, fpsi: int
    ) -> None:
        coeffs, _ = phi_expansion(cand, self.rep)
        # one-sided polygon with the prescribed endpoints
        pts = []
        for j, c in enumerate(coeffs):
            vc = self.v(c, self.order)
            pts.append((j, INF if vc == INF else vc + j * self.vrep))
        poly = NewtonPolygon(pts)
        want_side = Side(0, fpsi * V, e * fpsi, e * fpsi * self.vrep)
        if [(vx, vy) for vx, vy in poly.vertices] != [
            (want_side.x0, want_side.y0),
            (want_side.x1, want_side.y1),
        ]:
            raise InternalCheckError("representative polygon is not one-sided")
        # exact residual
        if self.residual_on_side(want_side, coeffs) != tuple(psi):
            raise InternalCheckError("representative residual mismatch")
        # valuation of the representative under the extended level
        if self.v_next(cand, h, e) != e * fpsi * V:
            raise InternalCheckError("representative valuation mismatch")
        # reduction mod p is the expected power of the level-0 modulus
        phi1 = self.levels[0].phi if self.levels else self.rep
        power = cand.degree // phi1.degree
        red = (phi1**power - cand).mod_coeffs(self.p)
        if not red.is_zero:
            raise InternalCheckError("representative reduction mod p mismatch")
