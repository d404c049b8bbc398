"""Shared helpers for the test suite.

Kept outside conftest so both unit tests and the acceptance suite can import
them as plain functions.
"""

from __future__ import annotations

import contextlib
import io
import os
import random
from fractions import Fraction

from montes.cli import main as cli_main
from montes.ffield import FieldTower, FPoly
from montes.polygon import INF, lambda_component
from montes.vtypes import TypeLevel, TypeRec
from montes.zpoly import IntPoly, X, ZERO, phi_expansion

GOLDEN_EXPR = "x^12+4*x^6+16*x^3+64"


def run_cli(*argv: str, env: dict[str, str] | None = None) -> tuple[int, str, str]:
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    saved = {k: os.environ.get(k) for k in (env or {})}
    if env:
        os.environ.update(env)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli_main(list(argv))
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    return code, out.getvalue(), err.getvalue()


def doc_without_timings(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timings_ms"}


def worked_branch() -> TypeRec:
    """The order-2 branch of the degree-12 example: level (x, -1/3, y+1),
    representative x^3 + 6, expected multiplicity 2."""
    tw1 = FieldTower(2, [(0, 1)])
    psi1: FPoly = (tw1.one(1), tw1.one(1))
    lvl = TypeLevel(X, 1, 3, psi1, 0)
    pq = [IntPoly([1]), X, X * X]
    pqvals = [Fraction(0), Fraction(1, 3), Fraction(2, 3)]
    return TypeRec([lvl], IntPoly([6, 0, 0, 1]), tw1.extend(psi1), 0, 2, pq, pqvals)


def random_poly(rng: random.Random, p: int, max_deg: int, *, vmax: int = 3) -> IntPoly:
    """Nonzero polynomial with coefficients carrying random powers of p."""
    while True:
        coeffs = [
            rng.randint(-9, 9) * p ** rng.randint(0, vmax)
            for _ in range(rng.randint(1, max_deg + 1))
        ]
        f = IntPoly(coeffs)
        if not f.is_zero:
            return f


def residual_at_slope(br: TypeRec, P: IntPoly, h: int, e: int) -> FPoly:
    """Residual of P along the support line of slope -h/e of its polygon.

    Reduces to a degree-0 polynomial when the lambda-component is a single
    point. Mirrors the side-residual construction but anchored on the
    component instead of a precomputed Side, so it is defined for every
    nonzero P.
    """
    r = br.order
    coeffs, _ = phi_expansion(P, br.rep)
    pts = []
    for j, c in enumerate(coeffs):
        v = br.v(c, r)
        if v != INF:
            pts.append((j, int(v) + j * br.vrep))
    lam = Fraction(-h, e)
    lo, hi = lambda_component(pts, lam)
    c0 = min(Fraction(y) - lam * x for x, y in pts)
    out = []
    for k in range((hi - lo) // e + 1):
        j = lo + k * e
        m = c0 + lam * j - j * br.vrep
        if m.denominator != 1:
            raise AssertionError("support line ordinate must be integral on the e-grid")
        a = coeffs[j] if j < len(coeffs) else ZERO
        out.append(br.residue(r - 1, a, int(m)))
    return br.tower.ptrim(r, out)


def multiadic_terms(br: TypeRec, P: IntPoly) -> list[IntPoly]:
    """Terms a_J * phi_1^{j_1} ... phi_s^{j_s} of the multiadic development
    of P over the branch's completed representatives, deg a_J < deg phi_1."""
    phis = [lv.phi for lv in br.levels]
    terms: list[tuple[IntPoly, IntPoly]] = [(P, IntPoly([1]))]
    for phi in reversed(phis):
        nxt: list[tuple[IntPoly, IntPoly]] = []
        for poly, mono in terms:
            cs, _ = phi_expansion(poly, phi)
            for j, c in enumerate(cs):
                if not c.is_zero:
                    nxt.append((c, mono * phi**j))
        terms = nxt
    return [c * mono for c, mono in terms]
