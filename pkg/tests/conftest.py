# tests/conftest.py

import sys
from pathlib import Path
import pytest

# Put the project root on sys.path so the top-level packages import
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from curvature.paired import ManifoldData
from hochschild.associative import AssociativeAlgebra


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the example input files."""
    return project_root / "fixtures"


@pytest.fixture
def m2() -> AssociativeAlgebra:
    return AssociativeAlgebra.from_matrices(2)


@pytest.fixture
def dual_numbers() -> AssociativeAlgebra:
    """Q[x]/x^2."""
    return AssociativeAlgebra.truncated_polynomial(2)


@pytest.fixture
def circle() -> ManifoldData:
    return ManifoldData.sphere(1)


@pytest.fixture
def three_sphere() -> ManifoldData:
    return ManifoldData.sphere(3)


@pytest.fixture
def workbench_env(monkeypatch):
    """Small guard rails so limit errors are cheap to trigger."""
    monkeypatch.setenv("WORKBENCH_MAX_ARITY", "5")
    monkeypatch.setenv("WORKBENCH_MAX_BASIS", "500")
    monkeypatch.setenv("WORKBENCH_MAX_DEGREE", "4")
    monkeypatch.setenv("WORKBENCH_THREADS", "2")
