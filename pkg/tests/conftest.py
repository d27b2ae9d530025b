"""Pytest fixtures shared across tests."""
import importlib.util
import math
from pathlib import Path

import pytest

from pauli_zeromodes.field import SectorFieldConfig
from pauli_zeromodes.lattice import build_evaluator, generate_cells

_SCRIPT = Path(__file__).resolve().parents[1] / "scripts" / "zeromodes.py"


@pytest.fixture
def quarter_plane() -> SectorFieldConfig:
    """alpha = pi/2, b1 = -1: B = -2 on the first quadrant, 2 elsewhere."""
    return SectorFieldConfig(alpha=math.pi / 2.0, b1=-1.0)


@pytest.fixture(scope="session")
def small_cells():
    return generate_cells(0.1, 1.0, 50.0)


@pytest.fixture(scope="session")
def small_evaluator(small_cells):
    return build_evaluator(small_cells)


@pytest.fixture(scope="session")
def cli():
    """The zeromodes.py script loaded as a module."""
    spec = importlib.util.spec_from_file_location("zeromodes_cli", _SCRIPT)
    assert spec and spec.loader
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod
