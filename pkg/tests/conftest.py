import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ldbig import assemble, parse_compose

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def wordpress_text() -> str:
    return (DATA / "wordpress.yml").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def wordpress_model(wordpress_text):
    return parse_compose(wordpress_text)


@pytest.fixture(scope="session")
def wordpress_composite(wordpress_model):
    return assemble(wordpress_model)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA
