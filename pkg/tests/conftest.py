from __future__ import annotations

import pytest

from montes import build_basis, montes_run
from montes.engine import MontesResult
from montes.fixtures import GOLDEN_P, golden_poly
from montes.pbasis import BasisReport


@pytest.fixture(scope="session")
def golden_run() -> MontesResult:
    return montes_run(golden_poly(), GOLDEN_P)


@pytest.fixture(scope="session")
def golden_report(golden_run: MontesResult) -> BasisReport:
    return build_basis(golden_run)
