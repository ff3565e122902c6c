import os
import shutil
from pathlib import Path

import pytest

from popcolor.solve import default_solver

REPO = Path(__file__).resolve().parents[1]


def instance_dir() -> Path:
    return Path(os.environ.get("POPCOLOR_INSTANCES", REPO / "instances"))


def solver_available() -> bool:
    return shutil.which(default_solver().split()[0]) is not None


needs_solver = pytest.mark.skipif(not solver_available(), reason="external SAT solver not found")
