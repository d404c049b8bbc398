"""HTTP service exposing the runner.

POST /decompose, /index, /pbasis, /pstem, /check, /bench all accept the same
request body and return the same fixed-order result document the CLI prints
with --json; /check additionally certifies the basis before answering.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .errors import MontesError
from .parsing import parse_poly
from .runner import JobSpec, run_job, verify_integrality
from .zpoly import IntPoly


class JobRequest(BaseModel):
    p: int
    f: str | list[str] = Field(
        description="expression in x, or coefficient strings with the constant first"
    )
    seed: int | None = None
    jobs: int = 1
    max_iter: int | None = None


class PrimeOut(BaseModel):
    e: int
    f: int


class BasisRowOut(BaseModel):
    num: list[str]
    nu: int


class StemRowOut(BaseModel):
    g: list[str]
    mu: int


class ResultDocument(BaseModel):
    p: str
    f: list[str]
    ind: int
    vdisc_f: int | str
    vdisc_K: int | str
    primes: list[PrimeOut]
    basis: list[BasisRowOut]
    stem: list[StemRowOut]
    maximal: bool
    seed: int | None
    timings_ms: dict[str, float]


app = FastAPI(title="montes", version="0.1.0")


def _spec_from(req: JobRequest) -> JobSpec:
    if isinstance(req.f, str):
        f = parse_poly(req.f)
    else:
        try:
            f = IntPoly([int(c) for c in req.f])
        except ValueError as exc:
            raise MontesError(f"bad coefficient: {exc}") from None
    return JobSpec(p=req.p, f=f, seed=req.seed, jobs=req.jobs, max_iter=req.max_iter)


def _run(req: JobRequest, check: bool = False) -> ResultDocument:
    try:
        job = run_job(_spec_from(req))
        if check:
            verify_integrality(job)
    except MontesError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    return ResultDocument(**job.doc)


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/decompose", response_model=ResultDocument)
def decompose(req: JobRequest) -> ResultDocument:
    return _run(req)


@app.post("/index", response_model=ResultDocument)
def index(req: JobRequest) -> ResultDocument:
    return _run(req)


@app.post("/pbasis", response_model=ResultDocument)
def pbasis(req: JobRequest) -> ResultDocument:
    return _run(req)


@app.post("/pstem", response_model=ResultDocument)
def pstem(req: JobRequest) -> ResultDocument:
    return _run(req)


@app.post("/check", response_model=ResultDocument)
def check(req: JobRequest) -> ResultDocument:
    return _run(req, check=True)


@app.post("/bench", response_model=ResultDocument)
def bench(req: JobRequest) -> ResultDocument:
    return _run(req)
