import json
from pathlib import Path

import pytest

SAMPLES = Path(__file__).resolve().parents[1] / "src" / "brpic" / "data" / "samples"


@pytest.fixture
def sample():
    def load(name):
        return json.loads((SAMPLES / name).read_text())
    return load


@pytest.fixture
def sample_path():
    return lambda name: str(SAMPLES / name)
