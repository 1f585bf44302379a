"""Seeded instance generation on the square lattice of spacing 2.

Lattice neighbours are at distance exactly 2 and touch; diagonal neighbours
are at distance sqrt(8) and never overlap, so every subset of cells is a valid
instance and its tangencies are the lattice adjacencies of the chosen cells.
"""

import logging
import math
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from ..core.geometry import Point2, RationalLike
from ..core.reduction import DiskInstance
from .formats import parse_rational

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


def grid_side(n: int, density: Fraction) -> int:
    """Smallest s with s * s >= n / density, computed exactly."""
    need = -(-n * density.denominator // density.numerator)
    side = math.isqrt(need)
    if side * side < need:
        side += 1
    return max(side, 1)


def _density(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    try:
        return parse_rational(value)
    except ValueError:
        raise ValueError(
            f"density must be an exact rational such as 1/2, got {value!r}"
        ) from None


def sample_cells(seed: int, n: int, density: RationalLike = "1/2") -> List[Cell]:
    """Pick n distinct cells of a square grid holding about n / density cells.

    Raises:
        ValueError: if n < 1 or density is outside (0, 1]
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    rho = _density(density)
    if not 0 < rho <= 1:
        raise ValueError(f"density must lie in (0, 1], got {rho}")
    side = grid_side(n, rho)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(side * side, size=n, replace=False)
    cells = sorted((int(c) % side, int(c) // side) for c in chosen)
    logger.debug(f"Sampled {n} of {side * side} cells with seed {seed}")
    return cells


def cells_to_instance(cells: List[Cell]) -> DiskInstance:
    return DiskInstance(tuple(Point2(2 * a, 2 * b) for a, b in cells))


def lattice_adjacency(cells: List[Cell]) -> List[Tuple[int, int]]:
    """Index pairs (i < j) of cells that share a grid edge."""
    return [
        (i, j)
        for i in range(len(cells))
        for j in range(i + 1, len(cells))
        if abs(cells[i][0] - cells[j][0]) + abs(cells[i][1] - cells[j][1]) == 1
    ]


def generate_instance(seed: int, n: int, density: RationalLike = "1/2") -> DiskInstance:
    """Deterministic in (seed, n, density)."""
    return cells_to_instance(sample_cells(seed, n, density))
