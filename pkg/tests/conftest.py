from pathlib import Path

import pytest

from swcalc.manifest import load_catalog

FIXTURES = Path(__file__).parent / "fixtures"

CATALOG_NAMES = ("K3", "E3", "E4", "E5", "E6")


@pytest.fixture(scope="session")
def catalog():
    return {name: load_catalog(name).to_manifold() for name in CATALOG_NAMES}


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
