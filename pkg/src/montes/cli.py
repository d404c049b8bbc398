"""Command line interface.

All math subcommands run the full pipeline through the shared runner and
differ only in what they print; --json always prints the complete result
document. With --url the work is delegated to a running service instead.

Exit codes: 0 when the candidate basis is certified maximal, 2 when it is
not, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import MontesError
from .parsing import parse_poly
from .runner import JobResult, JobSpec, run_job, verify_integrality
from .zpoly import IntPoly

MATH_COMMANDS = ("decompose", "index", "pbasis", "pstem", "check", "bench")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="montes",
        description="Prime ideal decomposition via higher order Newton polygons.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    helps = {
        "decompose": "primes above p: ramification and residue degrees",
        "index": "the p-index of f",
        "pbasis": "triangular p-integral basis numerators and exponents",
        "pstem": "basis rows at the strict denominator jumps",
        "check": "decompose, then certify each basis element integrally",
        "bench": "time the built-in fixtures (add -p/-f to append your own)",
    }
    for name in MATH_COMMANDS:
        sp = sub.add_parser(name, parents=[], help=helps[name])
        required = name != "bench"
        sp.add_argument("-p", required=required, default=None, help="prime number")
        sp.add_argument(
            "-f",
            required=required,
            default=None,
            help="monic integer polynomial: expression in x, or coefficient list "
            "with the constant term first",
        )
        sp.add_argument("--json", action="store_true", help="print the full JSON document")
        sp.add_argument("--trace", action="store_true", help="stream pass-by-pass details to stderr")
        sp.add_argument("--seed", type=int, default=None, help="seed recorded in the output (MONTES_SEED env is the fallback)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for independent branches")
        sp.add_argument("--max-iter", type=int, default=None, help="hard cap on polygon passes")
        sp.add_argument("--url", default=None, help="delegate to a running service at this base URL")
        if name == "bench":
            sp.add_argument(
                "--stress",
                action="store_true",
                help="include the degree 96, 288 and 576 tower fixtures (slow)",
            )

    sv = sub.add_parser("serve", help="start the HTTP service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8793)
    return top


def _resolve_seed(args: argparse.Namespace) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MONTES_SEED")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise MontesError(f"MONTES_SEED must be an integer, got {env!r}") from None


def _remote(args: argparse.Namespace, seed: int | None) -> dict:
    import httpx

    payload = {
        "p": int(args.p),
        "f": args.f,
        "seed": seed,
        "jobs": args.jobs,
        "max_iter": args.max_iter,
    }
    resp = httpx.post(f"{args.url.rstrip('/')}/{args.command}", json=payload, timeout=600.0)
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text) if resp.content else resp.text
        raise MontesError(f"service error ({resp.status_code}): {detail}")
    return resp.json()


def _poly_str(coeff_strings: list[str]) -> str:
    return str(IntPoly([int(c) for c in coeff_strings]))


def _stem_sum(doc: dict) -> int:
    degs = [len(row["g"]) - 1 for row in doc["stem"]]
    degs.append(len(doc["f"]) - 1)
    return sum(
        (degs[i + 1] - degs[i]) * row["mu"] for i, row in enumerate(doc["stem"])
    )


def _report_lines(command: str, job: JobResult) -> list[str]:
    rep = job.report
    lines: list[str] = []
    if command in ("pbasis", "check"):
        verdict = "satisfied" if rep.numerator_ok else "FAILED"
        lines.append(
            f"numerator criterion: sum(nu) = {rep.sum_nu}, "
            f"ind_num + ind = {rep.ind_num} + {rep.ind} -> {verdict}"
        )
    if command in ("pstem", "check"):
        verdict = "satisfied" if rep.stem_ok else "FAILED"
        lines.append(
            f"stem criterion: sum over jumps = {_stem_sum(job.doc)}, "
            f"ind = {rep.ind} -> {verdict}"
        )
    if command == "check":
        n = len(job.doc["f"]) - 1
        ef = sum(pr["e"] * pr["f"] for pr in job.doc["primes"])
        lines.append(f"sum e*f = {ef}, deg f = {n}")
    return lines


def _print_human(command: str, doc: dict, extra: list[str]) -> None:
    if command == "decompose":
        for pr in doc["primes"]:
            print(f"e={pr['e']} f={pr['f']}")
    elif command == "index":
        print(f"ind={doc['ind']} vdisc_f={doc['vdisc_f']} vdisc_K={doc['vdisc_K']}")
    elif command == "pbasis":
        for row in doc["basis"]:
            print(f"nu={row['nu']:<3d} num = {_poly_str(row['num'])}")
        for line in extra:
            print(line)
    elif command == "pstem":
        for row in doc["stem"]:
            print(f"mu={row['mu']:<3d} g = {_poly_str(row['g'])}")
        for line in extra:
            print(line)
        print("maximal order" if doc["maximal"] else "non-maximal order")
    elif command == "check":
        for line in extra:
            print(line)
        print("maximal order" if doc["maximal"] else "non-maximal order")
    elif command == "bench":
        for line in extra:
            print(line)


def _bench_fixtures(stress: bool) -> list[tuple[str, int, IntPoly]]:
    from .fixtures import GOLDEN_P, TOWER_P, golden_poly, tower_poly, twist_poly

    items = [("golden-deg12", GOLDEN_P, golden_poly())]
    for p, k in ((7, 5), (13, 5), (7, 50), (13, 50), (7, 500)):
        items.append((f"twist-p{p}-k{k}", p, twist_poly(p, k)))
    for j in (2, 3, 4, 5):
        items.append((f"tower-phi{j}", TOWER_P, tower_poly(j)))
    if stress:
        for j in (6, 7, 8):
            items.append((f"tower-phi{j}", TOWER_P, tower_poly(j)))
    return items


def _run_bench(args: argparse.Namespace, seed: int | None) -> tuple[dict, list[str], bool]:
    fixtures = _bench_fixtures(args.stress)
    if args.f is not None:
        try:
            p = int(args.p)
        except ValueError:
            raise MontesError(f"p must be an integer, got {args.p!r}") from None
        fixtures.append(("user", p, parse_poly(args.f)))
    lines: list[str] = []
    docs: list[dict] = []
    all_maximal = True
    for name, p, f in fixtures:
        spec = JobSpec(p=p, f=f, seed=seed, jobs=args.jobs, max_iter=args.max_iter)
        doc = run_job(spec).doc
        docs.append({"name": name, "result": doc})
        t = doc["timings_ms"]
        primes = " ".join(f"({pr['e']},{pr['f']})" for pr in doc["primes"])
        lines.append(
            f"{name:<16s} deg {len(doc['f']) - 1:>4d}  ind {doc['ind']:>7d}  "
            f"decompose {t['decompose']:>10.3f} ms  basis {t['basis']:>9.3f} ms  "
            f"primes {primes}"
        )
        if not doc["maximal"]:
            all_maximal = False
            lines.append(f"{name}: non-maximal order")
    return {"fixtures": docs}, lines, all_maximal


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        seed = _resolve_seed(args)
        if args.command == "bench":
            if args.url:
                raise MontesError("bench runs its fixtures locally; --url is not supported")
            doc, extra, all_maximal = _run_bench(args, seed)
            if args.json:
                print(json.dumps(doc))
            else:
                _print_human("bench", doc, extra)
            return 0 if all_maximal else 2
        if args.url:
            doc = _remote(args, seed)
            extra: list[str] = []
        else:
            try:
                p = int(args.p)
            except ValueError:
                raise MontesError(f"p must be an integer, got {args.p!r}") from None
            f = parse_poly(args.f)
            trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
            spec = JobSpec(
                p=p, f=f, seed=seed, jobs=args.jobs,
                max_iter=args.max_iter, trace=trace,
            )
            job = run_job(spec)
            doc = job.doc
            extra = _report_lines(args.command, job)
            if args.command == "check":
                extra = verify_integrality(job) + extra
    except MontesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.json:
        print(json.dumps(doc))
    else:
        _print_human(args.command, doc, extra)
    return 0 if doc["maximal"] else 2


if __name__ == "__main__":
    sys.exit(main())
