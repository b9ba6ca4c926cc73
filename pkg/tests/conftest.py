import os

import pytest

from variant import spaceio
from variant.trees import tree_from_assignments

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")

# per-concept (physical principle, working principle) labels behind the two
# pump-space tree fixtures
EVEN_PUMP_ASSIGNMENTS = [
    ("centrifugal force", "volute pump"),
    ("centrifugal force", "axial pump"),
    ("positive displacement", "gear pump"),
    ("positive displacement", "piston pump"),
    ("positive displacement", "diaphragm pump"),
]

SKEWED_PUMP_ASSIGNMENTS = [
    ("centrifugal force", "volute pump"),
    ("positive displacement", "gear pump"),
    ("positive displacement", "piston pump"),
    ("positive displacement", "diaphragm pump"),
    ("positive displacement", "peristaltic pump"),
]

SVS_TWO_LEVELS = [(1, 10.0), (2, 6.0)]


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


@pytest.fixture(scope="session")
def boil_water_space():
    return spaceio.import_space(data_path("boil_water.csv"))


@pytest.fixture(scope="session")
def even_pump_tree():
    return tree_from_assignments(EVEN_PUMP_ASSIGNMENTS, SVS_TWO_LEVELS)


@pytest.fixture(scope="session")
def skewed_pump_tree():
    return tree_from_assignments(SKEWED_PUMP_ASSIGNMENTS, SVS_TWO_LEVELS)
