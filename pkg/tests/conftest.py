"""
Pytest configuration and fixtures for alcove-cat tests.

Root systems and alcove geometries are cached per session: building them
is deterministic and every test treats them as read-only.
"""

import random
from collections.abc import Callable
from pathlib import Path

import pytest

from alcove_cat.affine_alcove import AlcoveGeometry, geometry
from alcove_cat.config import AlcoveCatConfig
from alcove_cat.models.lie_type import LieType
from alcove_cat.root_system import RootSystem, build

_SYSTEMS: dict[str, RootSystem] = {}


def _system(name: str) -> RootSystem:
    if name not in _SYSTEMS:
        _SYSTEMS[name] = build(LieType.parse(name), AlcoveCatConfig())
    return _SYSTEMS[name]


@pytest.fixture
def config() -> AlcoveCatConfig:
    """Configuration with small verification defaults."""
    return AlcoveCatConfig(
        log_level="DEBUG",
        samples=40,
        word_length_bound=4,
        grid_denominator=6,
    )


@pytest.fixture
def root_system() -> Callable[[str], RootSystem]:
    """
    Factory returning the cached root system of a type name.

    Example:
        def test_x(root_system):
            rs = root_system("C2")
    """
    return _system


@pytest.fixture
def alcove() -> Callable[[str], AlcoveGeometry]:
    """Factory returning the shared alcove geometry of a type name."""

    def make(name: str) -> AlcoveGeometry:
        return geometry(_system(name))

    return make


@pytest.fixture
def c2(root_system: Callable[[str], RootSystem]) -> RootSystem:
    return root_system("C2")


@pytest.fixture
def c2_geometry(alcove: Callable[[str], AlcoveGeometry]) -> AlcoveGeometry:
    return alcove("C2")


@pytest.fixture
def rng() -> random.Random:
    """Seeded pseudo-random source."""
    return random.Random(7)


@pytest.fixture
def plan_file(tmp_path: Path) -> Path:
    """
    A small verification plan on disk.

    Structure:
        lie_type: C2
        checks: [dim_identity, prop34d]
    """
    path = tmp_path / "plan.yaml"
    path.write_text(
        """lie_type: C2
checks: [dim_identity, prop34d]
seed: 11
samples: 20
grid_denominator: 4
"""
    )
    return path
