"""Pytest configuration and fixtures."""

from itertools import combinations

import numpy as np
import pytest

from src.convexhard.core.geometry import Point2, Point3, general_position_2d
from src.convexhard.core.planar import planar_convex_position
from src.convexhard.core.reduction import DiskInstance, build_reduction
from src.convexhard.data.formats import serialize_instance, serialize_points


def make_instance(*centers):
    """Build a DiskInstance from (x, y) tuples."""
    return DiskInstance(tuple(Point2(x, y) for x, y in centers))


def random_points(rng, count, low=-3, high=3):
    """Distinct random integer points in the box [low, high]^3."""
    seen = []
    while len(seen) < count:
        x, y, z = (int(v) for v in rng.integers(low, high + 1, size=3))
        p = Point3(x, y, z)
        if p not in seen:
            seen.append(p)
    return seen


def random_planar(rng, count, low=-4, high=4, general=False):
    """Distinct random integer points in [low, high]^2, optionally with no
    three collinear."""
    while True:
        pts = []
        while len(pts) < count:
            x, y = (int(v) for v in rng.integers(low, high + 1, size=2))
            if Point2(x, y) not in pts:
                pts.append(Point2(x, y))
        if not general or general_position_2d(pts):
            return pts


def brute_force_planar(pts):
    """Largest planar subset in convex position, by scanning every subset."""
    for size in range(len(pts), 0, -1):
        if any(planar_convex_position(c) for c in combinations(pts, size)):
            return size
    return 0


@pytest.fixture
def chain_instance():
    """Three disks in a row, 1-2 and 2-3 tangent."""
    return make_instance((0, 0), (2, 0), (4, 0))


@pytest.fixture
def square_instance():
    """A full 2 x 2 block: four tangencies, no diagonal ones."""
    return make_instance((0, 0), (2, 0), (0, 2), (2, 2))


@pytest.fixture
def pair_instance():
    return make_instance((0, 0), (2, 0))


@pytest.fixture
def apart_instance():
    """Disks that do not touch at all."""
    return make_instance((0, 0), (4, 0), (0, 4))


@pytest.fixture
def chain_reduction(chain_instance):
    return build_reduction(chain_instance)


@pytest.fixture
def square_reduction(square_instance):
    return build_reduction(square_instance)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def chain_file(tmp_path, chain_instance):
    path = tmp_path / "chain.json"
    path.write_text(serialize_instance(chain_instance))
    return path


@pytest.fixture
def chain_points_file(tmp_path, chain_reduction):
    path = tmp_path / "chain_points.json"
    path.write_text(serialize_points(chain_reduction))
    return path
