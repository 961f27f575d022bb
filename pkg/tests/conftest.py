"""
Shared fixtures: bundled crossed models and verification contexts.
"""
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config.models_config import BUNDLED_MODELS
from utils.helpers import parse_model_config
from yoneda.model import CrossedModelDatum


def load_model(name: str) -> CrossedModelDatum:
    return CrossedModelDatum.from_config(parse_model_config(BUNDLED_MODELS[name]), name)


@pytest.fixture(scope="session")
def model_p3_d1_c2() -> CrossedModelDatum:
    return load_model("p3-d1-c2")


@pytest.fixture(scope="session")
def model_p3_d2_c2() -> CrossedModelDatum:
    return load_model("p3-d2-c2")


@pytest.fixture(scope="session")
def model_p2_d2_c3() -> CrossedModelDatum:
    return load_model("p2-d2-c3")


@pytest.fixture(scope="session")
def model_trivial_c() -> CrossedModelDatum:
    return load_model("p3-d1-trivial")


def assert_passes(result):
    """Print the witness when a check fails."""
    assert result["success"], result.get("witness")
