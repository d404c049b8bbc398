"""Main decomposition loop.

Drives a stack of branches (TypeRec) through repeated polygon passes until
every branch has resolved into complete types, emitting basis numerators and
per-pass index contributions along the way.

One pass over a branch of order r:
  1. develop f in powers of the representative, attach level-r values,
  2. build the order-r polygon and cut it at the threshold H,
  3. per side, steepest first: factor the side residual over F_r;
     - squarefree residual: emit one numerator block per lattice abscissa of
       the side and register a complete type per factor;
     - otherwise extend the numerator lists with the side's quotient blocks
       and walk the factors: multiplicity one completes (emission through the
       new representative's quotient), a degree-one factor on an integral
       slope refines the same order, anything else deepens one order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, InternalCheckError, IterationLimitError
from .ffield import FieldTower
from .polygon import INF, NewtonPolygon, Side, chain_length, polygon_index, render_ascii
from .vtypes import TypeLevel, TypeRec
from .zpoly import IntPoly, disc_valuation, phi_expansion, poly_mulmod

SOFT_PASS_THRESHOLD = 200


@dataclass
class Prime:
    """A prime of the completed decomposition: ramification e, residue degree f."""

    e: int
    f: int
    notation: str


@dataclass
class MontesResult:
    p: int
    f: IntPoly
    primes: list[Prime]
    ind: int
    basis_raw: list[tuple[IntPoly, int]]
    hvals: list[Fraction]
    vdisc_f: int | float
    vdisc_K: int | float
    refinements: int
    passes: int
    flags: list[str]
    contributions: list[tuple[int, int]]  # (order, index contribution) per pass

    @property
    def n(self) -> int:
        return self.f.degree


@dataclass
class _PassOutcome:
    # emissions hold (numerator, floor(H), exact H); the floor of the exact
    # sum is not the sum of floors, so H travels unfloored until emission
    emissions: list[tuple[IntPoly, int, Fraction]] = field(default_factory=list)
    primes: list[Prime] = field(default_factory=list)
    children: list[TypeRec] = field(default_factory=list)
    contribution: int = 0
    flags: list[str] = field(default_factory=list)


def initial_branches(f: IntPoly, p: int, rng_seed: int = 0) -> list[TypeRec]:
    """One order-1 branch per irreducible factor of f mod p, canonical order."""
    import random

    tower0 = FieldTower(p, [], random.Random(rng_seed))
    fbar = tower0.ptrim(0, tuple(c % p for c in f.coeffs))
    if len(fbar) - 1 != f.degree:
        raise InternalCheckError("monic reduction lost degree")
    out = []
    for psi0, mult in tower0.factor_monic(0, fbar):
        tower = FieldTower(p, [psi0], tower0.rng)
        rep = IntPoly(psi0)
        m1 = rep.degree
        pq = [IntPoly.x_power(j) for j in range(m1)]
        pqvals = [Fraction(0)] * m1
        out.append(TypeRec([], rep, tower, 0, mult, pq, pqvals, path=str(rep)))
    return out


def _process_pass(br: TypeRec, f: IntPoly, trace) -> _PassOutcome:
    out = _PassOutcome()
    r = br.order
    tw = br.tower
    coeffs, quots = phi_expansion(f, br.rep)

    if coeffs[0].is_zero:
        if br.rep == f:
            if br.omega != 1:
                raise InternalCheckError("exact representative with multiplicity > 1")
            out.primes.append(Prime(br.e_prod(), br.f_prod(), br.notation()))
            for g, val in zip(br.pq, br.pqvals):
                out.emissions.append((g, math.floor(val), Fraction(val)))
            out.flags.append("exact_representative")
            if trace:
                trace(f"[order {r}] representative equals f: complete type {br.notation()}")
            return out
        raise InputError(
            f"input polynomial is divisible by {br.rep}: not irreducible"
        )

    vrep = br.vrep
    vals = [br.v(c, r) for c in coeffs]
    pts = [
        (j, INF if vals[j] == INF else int(vals[j]) + j * vrep)
        for j in range(len(coeffs))
    ]
    poly = NewtonPolygon(pts)
    sides = poly.partial(br.H)
    if not sides or sides[0].x0 != 0:
        raise InternalCheckError("partial polygon does not start at abscissa zero")
    ell = chain_length(sides)
    if ell != br.omega:
        raise InternalCheckError(
            f"polygon length {ell} disagrees with expected multiplicity {br.omega}"
        )
    contrib = br.f_prod() * (polygon_index(sides) - br.H * (ell * (ell - 1) // 2))
    if contrib < 0:
        raise InternalCheckError("negative index contribution")
    out.contribution = contrib

    if trace:
        trace(
            f"[order {r}] type {br.notation()}: rep deg {br.rep.degree}, "
            f"H={br.H}, omega={br.omega}, index contribution {contrib}"
        )
        trace("  vertices " + " ".join(f"({x},{y})" for x, y in poly.vertices))
        trace(render_ascii(pts))

    E_prev = br.e_prod()
    for side in sides:
        residual = br.residual_on_side(side, coeffs)
        factors = tw.factor_monic(r, tw.pmonic(r, residual))
        if trace:
            fstr = " * ".join(
                f"({tw.pstr(r, psi)})" + (f"^{m}" if m > 1 else "")
                for psi, m in factors
            )
            trace(
                f"  side ({side.x0},{side.y0})->({side.x1},{side.y1}) "
                f"slope {side.slope}: residual {tw.pstr(r, residual)} = {fstr}"
            )
        if all(m == 1 for _, m in factors):
            _emit_regular_side(br, side, quots, f, vrep, E_prev, out)
            for psi, _ in factors:
                out.primes.append(
                    Prime(
                        E_prev * side.e,
                        br.f_prod() * (len(psi) - 1),
                        br.notation() + f"; {side.slope}, deg {len(psi) - 1}",
                    )
                )
        else:
            _walk_enlarged_side(br, side, coeffs, vals, quots, f, vrep, E_prev, factors, out, trace)
    return out


def _emit_regular_side(
    br: TypeRec,
    side: Side,
    quots: list[IntPoly],
    f: IntPoly,
    vrep: int,
    E_prev: int,
    out: _PassOutcome,
) -> None:
    for j in range(side.x0 + 1, side.x1 + 1):
        Hj = Fraction(side.ordinate_at(j) - j * vrep, E_prev)
        q = quots[j - 1]
        for g, val in zip(br.pq, br.pqvals):
            h = Hj + val
            nu = math.floor(h)
            if nu < 0:
                raise InternalCheckError("negative denominator exponent")
            out.emissions.append((poly_mulmod(q, g, f), nu, h))


def _walk_enlarged_side(
    br: TypeRec,
    side: Side,
    coeffs: list[IntPoly],
    vals: list,
    quots: list[IntPoly],
    f: IntPoly,
    vrep: int,
    E_prev: int,
    factors,
    out: _PassOutcome,
    trace,
) -> None:
    r = br.order
    fmax = max(len(psi) - 1 for psi, _ in factors)
    epq = list(br.pq)
    evals = list(br.pqvals)
    for k in range(1, side.e * fmax + 1):
        j = side.x1 - k
        if j <= side.x0:
            raise InternalCheckError("quotient block index left the side")
        Hj = Fraction(side.ordinate_at(j) - j * vrep, E_prev)
        q = quots[j - 1]
        for g, val in zip(br.pq, br.pqvals):
            epq.append(poly_mulmod(q, g, f))
            evals.append(Hj + val)

    V = side.e * vrep + side.h
    for psi, mult in factors:
        fpsi = len(psi) - 1
        rep2 = br.representative(side.h, side.e, psi)
        cnt = side.e * fpsi * len(br.pq)
        if mult == 1:
            vf = INF
            for j, vc in enumerate(vals):
                if vc != INF:
                    cand = side.e * vc + j * V
                    if cand < vf:
                        vf = cand
            vphi2 = side.e * fpsi * V
            Hc = Fraction(int(vf) - vphi2, E_prev * side.e)
            if Hc < 0:
                raise InternalCheckError("negative completion height")
            q2 = phi_expansion(f, rep2)[1][0]
            for g, val in zip(epq[:cnt], evals[:cnt]):
                h = Hc + val
                nu = math.floor(h)
                if nu < 0:
                    raise InternalCheckError("negative denominator exponent")
                out.emissions.append((poly_mulmod(q2, g, f), nu, h))
            out.primes.append(
                Prime(
                    E_prev * side.e,
                    br.f_prod() * fpsi,
                    br.notation() + f"; {side.slope}, deg {fpsi}",
                )
            )
            if trace:
                trace(f"    factor deg {fpsi}: complete, H={Hc}")
        elif fpsi == 1 and side.e == 1:
            child = TypeRec(
                br.levels, rep2, br.tower, side.h, mult, br.pq, br.pqvals,
                path=br.path + " R",
            )
            if child.v(rep2, r) != vrep:
                raise InternalCheckError("refinement changed the representative value")
            out.children.append(child)
            if trace:
                trace(f"    factor deg 1 on integral slope: refine, H <- {side.h}")
        else:
            lvl = TypeLevel(br.rep, side.h, side.e, psi, vrep)
            child = TypeRec(
                br.levels + [lvl],
                rep2,
                br.tower.extend(psi),
                0,
                mult,
                epq[:cnt],
                evals[:cnt],
                path=br.path + " D",
            )
            out.children.append(child)
            if trace:
                trace(f"    factor deg {fpsi} mult {mult}: deepen to order {r + 1}")


def montes_run(
    f: IntPoly,
    p: int,
    *,
    trace=None,
    max_iter: int | None = None,
    rng_seed: int = 0,
) -> MontesResult:
    """Full decomposition of p in Q[x]/(f) for monic f, assumed irreducible."""
    n = f.degree
    if n < 1 or not f.is_monic():
        raise InputError("f must be monic of degree >= 1")
    if p < 2:
        raise InputError("p must be a prime >= 2")

    stack = list(reversed(initial_branches(f, p, rng_seed)))
    emissions: list[tuple[IntPoly, int, Fraction]] = []
    primes: list[Prime] = []
    contributions: list[tuple[int, int]] = []
    flags: list[str] = []
    refinements = 0
    passes = 0
    hard_cap = max_iter
    vdisc: int | float | None = None

    while stack:
        if hard_cap is None and passes >= SOFT_PASS_THRESHOLD + 20 * n:
            vdisc = disc_valuation(f, p)
            if vdisc == INF:
                raise InputError("disc(f) vanishes: f is not squarefree")
            hard_cap = 10 * n * (1 + int(vdisc))
        if hard_cap is not None and passes >= hard_cap:
            raise IterationLimitError(
                f"pass limit {hard_cap} reached with {len(stack)} branch(es) open"
            )
        br = stack.pop()
        outcome = _process_pass(br, f, trace)
        passes += 1
        # refinement work is measured in index units gained while running
        # under a positive cutting slope: one unit per digit of precision
        if br.H > 0:
            refinements += outcome.contribution
        emissions.extend(outcome.emissions)
        primes.extend(outcome.primes)
        if outcome.contribution:
            contributions.append((br.order, outcome.contribution))
        for fl in outcome.flags:
            if fl not in flags:
                flags.append(fl)
        stack.extend(reversed(outcome.children))

    if len(emissions) != n:
        raise InternalCheckError(f"emitted {len(emissions)} numerators, expected {n}")
    if sum(pr.e * pr.f for pr in primes) != n:
        raise InternalCheckError("sum of e*f over primes does not reach the degree")

    primes.sort(key=lambda pr: (pr.e, pr.f, pr.notation))
    ind = sum(c for _, c in contributions)
    if vdisc is None:
        vdisc = disc_valuation(f, p)
    if vdisc == INF:
        if "disc_infinite" not in flags:
            flags.append("disc_infinite")
        vdisc_K: int | float = INF
    else:
        vdisc_K = int(vdisc) - 2 * ind
        if vdisc_K < 0:
            raise InputError(
                "negative discriminant valuation for the field: "
                "the input is most likely not irreducible"
            )
    return MontesResult(
        p=p,
        f=f,
        primes=primes,
        ind=ind,
        basis_raw=[(g, nu) for g, nu, _ in emissions],
        hvals=[h for _, _, h in emissions],
        vdisc_f=vdisc,
        vdisc_K=vdisc_K,
        refinements=refinements,
        passes=passes,
        flags=flags,
        contributions=contributions,
    )


def _branch_worker(args: tuple) -> dict:
    fcoeffs, p, index, rng_seed = args
    f = IntPoly(fcoeffs)
    branches = initial_branches(f, p, rng_seed)
    br = branches[index]
    stack = [br]
    emissions: list[tuple[tuple[int, ...], int, tuple[int, int]]] = []
    primes: list[tuple[int, int, str]] = []
    contributions: list[tuple[int, int]] = []
    flags: list[str] = []
    refinements = 0
    passes = 0
    while stack:
        node = stack.pop()
        outcome = _process_pass(node, f, None)
        passes += 1
        if node.H > 0:
            refinements += outcome.contribution
        emissions.extend(
            (g.coeffs, nu, (h.numerator, h.denominator))
            for g, nu, h in outcome.emissions
        )
        primes.extend((pr.e, pr.f, pr.notation) for pr in outcome.primes)
        if outcome.contribution:
            contributions.append((node.order, outcome.contribution))
        for fl in outcome.flags:
            if fl not in flags:
                flags.append(fl)
        stack.extend(reversed(outcome.children))
    return {
        "emissions": emissions,
        "primes": primes,
        "contributions": contributions,
        "flags": flags,
        "refinements": refinements,
        "passes": passes,
    }


def montes_run_parallel(
    f: IntPoly,
    p: int,
    *,
    jobs: int,
    max_iter: int | None = None,
    rng_seed: int = 0,
) -> MontesResult:
    """Same result as montes_run, initial branches distributed over processes.

    Branch outputs are merged in the canonical branch order, so the result is
    identical to the sequential run. Falls back to the sequential engine when
    there is only one branch or the pool cannot be used.
    """
    n = f.degree
    if n < 1 or not f.is_monic():
        raise InputError("f must be monic of degree >= 1")
    branches = initial_branches(f, p, rng_seed)
    if jobs <= 1 or len(branches) <= 1:
        return montes_run(f, p, max_iter=max_iter, rng_seed=rng_seed)
    try:
        with ProcessPoolExecutor(max_workers=min(jobs, len(branches))) as pool:
            results = list(
                pool.map(
                    _branch_worker,
                    [(f.coeffs, p, i, rng_seed) for i in range(len(branches))],
                )
            )
    except (OSError, PermissionError):
        return montes_run(f, p, max_iter=max_iter, rng_seed=rng_seed)

    emissions: list[tuple[IntPoly, int, Fraction]] = []
    primes: list[Prime] = []
    contributions: list[tuple[int, int]] = []
    flags: list[str] = []
    refinements = 0
    passes = 0
    for res in results:
        emissions.extend(
            (IntPoly(c), nu, Fraction(hn, hd)) for c, nu, (hn, hd) in res["emissions"]
        )
        primes.extend(Prime(e, fdeg, s) for e, fdeg, s in res["primes"])
        contributions.extend(res["contributions"])
        for fl in res["flags"]:
            if fl not in flags:
                flags.append(fl)
        refinements += res["refinements"]
        passes += res["passes"]
    if max_iter is not None and passes > max_iter:
        raise IterationLimitError(f"pass limit {max_iter} exceeded across branches")

    if len(emissions) != n:
        raise InternalCheckError(f"emitted {len(emissions)} numerators, expected {n}")
    if sum(pr.e * pr.f for pr in primes) != n:
        raise InternalCheckError("sum of e*f over primes does not reach the degree")
    primes.sort(key=lambda pr: (pr.e, pr.f, pr.notation))
    ind = sum(c for _, c in contributions)
    vdisc = disc_valuation(f, p)
    if vdisc == INF:
        flags.append("disc_infinite")
        vdisc_K: int | float = INF
    else:
        vdisc_K = int(vdisc) - 2 * ind
        if vdisc_K < 0:
            raise InputError(
                "negative discriminant valuation for the field: "
                "the input is most likely not irreducible"
            )
    return MontesResult(
        p=p,
        f=f,
        primes=primes,
        ind=ind,
        basis_raw=[(g, nu) for g, nu, _ in emissions],
        hvals=[h for _, _, h in emissions],
        vdisc_f=vdisc,
        vdisc_K=vdisc_K,
        refinements=refinements,
        passes=passes,
        flags=flags,
        contributions=contributions,
    )
