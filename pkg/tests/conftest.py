import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from splitkit import embed, hypersimplex
from splitkit.polytope import VPolytope

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

HEXAGON = [[1, 0, 0], [1, 1, 0], [1, 2, 1], [1, 2, 2], [1, 1, 2], [1, 0, 1]]
W1 = [0, 0, 1, 1, 0, 0]
W2 = [0, 0, 0, 1, 1, 0]
W3 = [0, 0, 2, 3, 2, 0]
CUBE = [[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
CROSS3 = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]


@pytest.fixture(scope="session")
def hexagon():
    return VPolytope(HEXAGON)


@pytest.fixture(scope="session")
def cube():
    return embed(CUBE)


@pytest.fixture(scope="session")
def cross3():
    return embed(CROSS3)


@pytest.fixture(scope="session")
def octahedron():
    return hypersimplex(2, 4)


@pytest.fixture(scope="session")
def square():
    return embed(SQUARE)
