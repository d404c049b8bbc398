"""Prime ideal decomposition over Q via higher order Newton polygons.

For a monic irreducible f in Z[x] and a prime p, compute the shape of the
primes above p in Q[x]/(f), the p-index of f, and a certified triangular
p-integral basis.
"""

from .engine import MontesResult, Prime, montes_run, montes_run_parallel
from .errors import (
    InputError,
    InternalCheckError,
    IterationLimitError,
    MontesError,
)
from .pbasis import BasisReport, build_basis, integral_element
from .parsing import is_probable_prime, parse_poly
from .runner import JobSpec, JobResult, run_job, verify_integrality
from .zpoly import IntPoly

__version__ = "0.1.0"

__all__ = [
    "BasisReport",
    "InputError",
    "IntPoly",
    "InternalCheckError",
    "IterationLimitError",
    "JobResult",
    "JobSpec",
    "MontesError",
    "MontesResult",
    "Prime",
    "build_basis",
    "integral_element",
    "is_probable_prime",
    "montes_run",
    "montes_run_parallel",
    "parse_poly",
    "run_job",
    "verify_integrality",
    "__version__",
]
