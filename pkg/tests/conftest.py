import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles module

from concentric import load_csv

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def iris():
    return load_csv(DATA_DIR / "iris.csv", "species")


@pytest.fixture(scope="session")
def wbc9():
    return load_csv(DATA_DIR / "wbc9.csv", "class", drop_missing=True)


@pytest.fixture(scope="session")
def wbc30():
    return load_csv(DATA_DIR / "wbc30.csv", "diagnosis")


def data_path(name: str) -> Path:
    return DATA_DIR / name
