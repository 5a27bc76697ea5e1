import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from simplexcenters import EdgeLengthTable, SimplexModel, embed_from_edge_lengths

import golden


@pytest.fixture(scope="session")
def five_model() -> SimplexModel:
    return SimplexModel(golden.FIVE_VERTICES)


@pytest.fixture(scope="session")
def gap_model() -> SimplexModel:
    return embed_from_edge_lengths(EdgeLengthTable.from_flat(3, golden.GAP_EDGES))


@pytest.fixture(scope="session")
def gap_triangle() -> SimplexModel:
    return embed_from_edge_lengths(
        EdgeLengthTable.from_flat(2, golden.GAP_TRIANGLE_EDGES))


@pytest.fixture(scope="session")
def regular_tetrahedron() -> SimplexModel:
    return embed_from_edge_lengths(EdgeLengthTable.from_flat(3, [1.0] * 6))


@pytest.fixture(scope="session")
def equilateral_triangle() -> SimplexModel:
    return embed_from_edge_lengths(EdgeLengthTable.from_flat(2, [1.0, 1.0, 1.0]))


def make_random_model(rng: np.random.Generator, n: int) -> SimplexModel:
    """Well-conditioned random simplex (volume bounded away from zero)."""
    while True:
        verts = rng.standard_normal((n + 1, n))
        model = SimplexModel(verts, validate=False)
        if model.total_volume > 0.01 * model.diameter ** n / math.factorial(n):
            return SimplexModel(verts)


def random_nonzero_point(rng: np.random.Generator, n: int) -> np.ndarray:
    """Coordinates bounded away from zero, with nonzero sum."""
    while True:
        coords = rng.uniform(0.2, 1.5, n + 1) * rng.choice([-1.0, 1.0], n + 1)
        if abs(coords.sum()) > 0.1:
            return coords


def random_interior_point(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.dirichlet(np.ones(n + 1)) + 0.02
