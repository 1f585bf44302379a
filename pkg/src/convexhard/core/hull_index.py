"""Precomputed hull-membership index over a fixed point universe.

By Carathéodory's theorem a point lies in the hull of a set Q in R^3 iff it
lies in the hull of an affinely independent subset of Q with at most four
points. ``HullIndex`` enumerates those small supports once, keeps the minimal
ones per point as bitmasks, and afterwards answers "is point i in conv(mask)"
with integer mask arithmetic. The exhaustive searches in this package issue
millions of such queries, which is why they go through the index rather than
calling ``point_in_hull`` directly.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple

from .geometry import Point3, Simplex, integer_coordinates

logger = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class HullIndex:
    """Minimal Carathéodory supports for every point of a universe.

    Instance Attributes:
        - points: the universe, in the order the caller supplied
        - supports: supports[i] lists bitmasks of minimal affinely independent
          subsets (2 to 4 points, never containing i) whose hull contains
          points[i]

    Representation Invariants:
        - the points are pairwise distinct
        - no mask in supports[i] is a superset of another mask in supports[i]
    """

    points: Tuple[Point3, ...]
    supports: List[List[int]]

    def __init__(self, points: Sequence[Point3]) -> None:
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise ValueError("HullIndex needs pairwise distinct points")
        self.supports = [[] for _ in self.points]
        self._build()

    def __len__(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def _build(self) -> None:
        coords = integer_coordinates(list(self.points))
        n = len(coords)
        support_count = 0
        for size in (2, 3, 4):
            for idx in combinations(range(n), size):
                simplex = Simplex.try_build([coords[i] for i in idx])
                if simplex is None:
                    continue
                t_mask = mask_of(idx)
                for s in range(n):
                    if t_mask >> s & 1:
                        continue
                    if not simplex.contains(coords[s]):
                        continue
                    known = self.supports[s]
                    # smaller supports were stored first; skip supersets
                    if any(m & ~t_mask == 0 for m in known):
                        continue
                    known.append(t_mask)
                    support_count += 1
        logger.debug(
            f"HullIndex over {n} points holds {support_count} minimal supports"
        )

    def contains(self, i: int, mask: int) -> bool:
        """Return True iff points[i] lies in the hull of the points in mask."""
        if mask >> i & 1:
            return True
        return any(m & ~mask == 0 for m in self.supports[i])

    def is_convex(self, mask: int) -> bool:
        """Return True iff the points in mask are in convex position."""
        return not any(self.contains(i, mask & ~(1 << i)) for i in iter_bits(mask))

    def extends_convex(self, mask: int, new: int) -> bool:
        """Given mask in convex position, decide whether mask + new still is.

        Only supports that use the new point can turn an old vertex into a
        non-vertex, so the others are not re-examined.
        """
        bit = 1 << new
        if mask & bit:
            return False
        if self.contains(new, mask):
            return False
        grown = mask | bit
        for s in iter_bits(mask):
            rest = grown & ~(1 << s)
            for m in self.supports[s]:
                if m & bit and m & ~rest == 0:
                    return False
        return True

    def closure(self, mask: int) -> int:
        """Return the mask of all universe points inside conv(mask)."""
        if mask == 0:
            return 0
        out = mask
        for i in range(len(self.points)):
            if not out >> i & 1 and self.contains(i, mask):
                out |= 1 << i
        return out

    def is_hull_closed(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def is_empty_convex(self, mask: int) -> bool:
        return self.is_convex(mask) and self.is_hull_closed(mask)

    def points_of(self, mask: int) -> Tuple[Point3, ...]:
        return tuple(self.points[i] for i in iter_bits(mask))
