"""Shared job runner: one entry point behind both the CLI and the service.

A job is (p, f) plus options. The result document has a fixed field order:

    p, f, ind, vdisc_f, vdisc_K, primes, basis, stem, maximal, seed, timings_ms

Large integers (the coefficients of f and of every numerator) are rendered as
decimal strings so the document survives JSON parsers without big-int support.
Infinite discriminant valuations are rendered as the string "INF".
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .engine import MontesResult, montes_run, montes_run_parallel
from .errors import InputError
from .pbasis import BasisReport, build_basis, integral_element
from .parsing import validate_monic, validate_prime
from .polygon import INF
from .zpoly import IntPoly


@dataclass
class JobSpec:
    p: int
    f: IntPoly
    seed: int | None = None
    jobs: int = 1
    max_iter: int | None = None
    trace: Callable[[str], None] | None = None


@dataclass
class JobResult:
    doc: dict
    result: MontesResult
    report: BasisReport

    @property
    def exit_code(self) -> int:
        return 0 if self.doc["maximal"] else 2


def _coeff_strings(g: IntPoly) -> list[str]:
    return [str(c) for c in g.coeffs]


def _disc_field(v: int | float) -> int | str:
    return "INF" if v == INF else int(v)


def result_document(
    spec: JobSpec, result: MontesResult, report: BasisReport, timings: dict[str, float]
) -> dict:
    return {
        "p": str(spec.p),
        "f": _coeff_strings(spec.f),
        "ind": result.ind,
        "vdisc_f": _disc_field(result.vdisc_f),
        "vdisc_K": _disc_field(result.vdisc_K),
        "primes": [{"e": pr.e, "f": pr.f} for pr in result.primes],
        "basis": [
            {"num": _coeff_strings(g), "nu": mu} for g, mu in report.basis
        ],
        "stem": [{"g": _coeff_strings(g), "mu": mu} for g, mu in report.stem],
        "maximal": report.maximal,
        "seed": spec.seed,
        "timings_ms": timings,
    }


def run_job(spec: JobSpec) -> JobResult:
    validate_prime(spec.p)
    validate_monic(spec.f)
    t0 = time.perf_counter()
    if spec.jobs > 1:
        result = montes_run_parallel(
            spec.f, spec.p, jobs=spec.jobs, max_iter=spec.max_iter,
            rng_seed=spec.seed or 0,
        )
    else:
        result = montes_run(
            spec.f, spec.p, trace=spec.trace, max_iter=spec.max_iter,
            rng_seed=spec.seed or 0,
        )
    t1 = time.perf_counter()
    report = build_basis(result)
    t2 = time.perf_counter()
    timings = {
        "decompose": round((t1 - t0) * 1000.0, 3),
        "basis": round((t2 - t1) * 1000.0, 3),
        "total": round((t2 - t0) * 1000.0, 3),
    }
    doc = result_document(spec, result, report, timings)
    return JobResult(doc=doc, result=result, report=report)


def verify_integrality(job: JobResult, *, degree_cap: int = 80) -> list[str]:
    """Certify every basis row by the characteristic-polynomial test.

    Returns human-readable verdict lines; raises InputError when the degree
    makes the exact test unreasonable.
    """
    f = job.result.f
    if f.degree > degree_cap:
        raise InputError(
            f"integrality verification is exact but slow; refusing degree > {degree_cap}"
        )
    lines = []
    for g, mu in job.report.basis:
        ok = integral_element(f, job.result.p, g, mu)
        lines.append(f"deg {g.degree}: mu={mu} {'integral' if ok else 'NOT INTEGRAL'}")
        if not ok:
            raise InputError(
                f"basis element of degree {g.degree} failed the integrality check"
            )
    return lines
