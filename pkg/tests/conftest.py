from pathlib import Path

import pytest
from hypothesis import settings

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=200)
settings.load_profile("repo")


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def smoke() -> Path:
    return FIXTURES / "smoke"


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path
