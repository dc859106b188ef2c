from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def uf20_paths():
    paths = sorted((DATA_DIR / "uf20").glob("*.cnf"))
    assert len(paths) >= 20, "uf20 fixture files missing"
    return paths


@pytest.fixture(scope="session")
def uf20_texts(uf20_paths):
    return [p.read_text() for p in uf20_paths]
