"""Planar side of the toolkit: convex hulls, the exact largest-convex-subset
dynamic program, the Erdős–Szekeres shortcut and the projection-based
approximation of the three-dimensional problem.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .geometry import Point2, Point3, Sign, general_position_2d, orientation2
from .solvers import SolveResult

logger = logging.getLogger(__name__)


def _left(a: Point2, b: Point2, c: Point2) -> bool:
    return orientation2(a, b, c) == Sign.POSITIVE


def planar_hull(points: Iterable[Point2]) -> List[Point2]:
    """Vertices of the convex hull in counter-clockwise order.

    Monotone chain with strict turns, so points in the relative interior of
    a hull edge are not reported.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[Point2] = []
    for p in pts:
        while len(lower) >= 2 and not _left(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)
    upper: List[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and not _left(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def planar_convex_position(points: Iterable[Point2]) -> bool:
    pts = set(points)
    return len(planar_hull(pts)) == len(pts)


def es_threshold(k: int) -> int:
    """Number of points in general position that force k in convex position.

    >>> es_threshold(4)
    7
    """
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    return comb(2 * k - 4, k - 2) + 1


def es_fpt_decide(points: Iterable[Point2], k: int) -> bool:
    """Decide whether k of the points are in convex position.

    Large inputs are answered yes from the Erdős–Szekeres bound; smaller
    ones are settled by trying every k-subset.

    Raises:
        ValueError: if k < 3, on duplicates, or if three points are collinear
    """
    pts = list(points)
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    if len(set(pts)) != len(pts):
        raise ValueError("point set must not contain duplicates")
    if not general_position_2d(pts):
        raise ValueError("points must be in general position (no three collinear)")
    if len(pts) >= es_threshold(k):
        logger.debug(f"{len(pts)} points reach the threshold {es_threshold(k)} for k={k}")
        return True
    return any(len(planar_hull(c)) == k for c in combinations(pts, k))


# ---------------------------------------------------------------------------
# Largest convex subset in the plane
# ---------------------------------------------------------------------------


def _chains_from(p: Point2, pts: Sequence[Point2]) -> Tuple[int, Tuple[Point2, ...], int]:
    """Longest convex polygon whose lowest (then leftmost) vertex is p.

    The other vertices are taken in angular order around p; dp[(i, j)] is the
    longest strictly convex chain p, ..., above[i], above[j].
    """
    above = [q for q in pts if (q.y, q.x) > (p.y, p.x)]

    def by_angle(a: Point2, b: Point2) -> int:
        turn = orientation2(p, a, b)
        if turn != Sign.ZERO:
            return -int(turn)
        da = (a.x - p.x) ** 2 + (a.y - p.y) ** 2
        db = (b.x - p.x) ** 2 + (b.y - p.y) ** 2
        return -1 if da < db else (1 if da > db else 0)

    above.sort(key=cmp_to_key(by_angle))
    m = len(above)
    if m == 0:
        return 1, (p,), 1

    dp: Dict[Tuple[int, int], int] = {}
    parent: Dict[Tuple[int, int], int] = {}
    incoming: List[List[int]] = [[] for _ in range(m)]
    explored = 0
    for j in range(m):
        for i in range(j):
            if not _left(p, above[i], above[j]):
                continue
            # the triangle p, above[i], above[j] starts every chain
            best, arg = 3, -1
            for h in incoming[i]:
                explored += 1
                if dp[(h, i)] + 1 > best and _left(above[h], above[i], above[j]):
                    best, arg = dp[(h, i)] + 1, h
            dp[(i, j)] = best
            parent[(i, j)] = arg
            incoming[j].append(i)

    best_len, best_edge = 2, None
    for (i, j), length in dp.items():
        if length > best_len and _left(above[i], above[j], p):
            best_len, best_edge = length, (i, j)
    if best_edge is None:
        return 2, (p, above[0]), explored + 1

    chain = []
    i, j = best_edge
    while True:
        chain.append(above[j])
        h = parent[(i, j)]
        if h == -1:
            chain.append(above[i])
            break
        i, j = h, i
    chain.append(p)
    return best_len, tuple(reversed(chain)), explored + 1


def planar_largest_convex_subset(points: Iterable[Point2]) -> SolveResult:
    """Exact maximum subset in convex position in the plane.

    Raises:
        ValueError: on duplicates
    """
    pts = list(points)
    if len(set(pts)) != len(pts):
        raise ValueError("point set must not contain duplicates")
    if not pts:
        return SolveResult(0, (), 0)
    best: Tuple[int, Tuple[Point2, ...]] = (0, ())
    explored = 0
    for p in sorted(pts):
        size, witness, nodes = _chains_from(p, pts)
        explored += nodes
        if size > best[0]:
            best = (size, witness)
    return SolveResult(best[0], tuple(sorted(best[1])), explored)


# ---------------------------------------------------------------------------
# Projection and approximation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectionResult:
    """Projection of a point sequence along a direction.

    Instance Attributes:
        - points: projected points, index-aligned with the input
        - index: first input position of every distinct projected point
        - collisions: input position pairs (i, j), i < j, with equal images
    """

    points: Tuple[Point2, ...]
    index: Dict[Point2, int] = field(default_factory=dict)
    collisions: Tuple[Tuple[int, int], ...] = ()

    @property
    def collision_free(self) -> bool:
        return not self.collisions


def project_points(points: Sequence[Point3], direction: Point3) -> ProjectionResult:
    """Project along direction onto a rational basis of the complementary plane.

    The image is expressed in the basis formed by the projections of the two
    coordinate axes other than the dominant axis k of the direction, which
    amounts to q = p - (p_k / d_k) d with coordinate k dropped. The map is
    linear with kernel span(d), so it identifies exactly the points that
    differ by a multiple of d.

    Raises:
        ValueError: if direction is zero
    """
    d = (direction.x, direction.y, direction.z)
    if d == (0, 0, 0):
        raise ValueError("projection direction must be non-zero")
    k = max(range(3), key=lambda i: (abs(d[i]), -i))
    keep = [i for i in range(3) if i != k]
    projected = []
    for p in points:
        c = (p.x, p.y, p.z)
        t = Fraction(c[k]) / d[k]
        projected.append(Point2(c[keep[0]] - t * d[keep[0]], c[keep[1]] - t * d[keep[1]]))
    index: Dict[Point2, int] = {}
    collisions = []
    for pos, q in enumerate(projected):
        if q in index:
            collisions.append((index[q], pos))
        else:
            index[q] = pos
    return ProjectionResult(tuple(projected), index, tuple(collisions))


def approx_convex_subset_3d(points: Sequence[Point3], direction: Point3) -> SolveResult:
    """Lift the planar optimum of one projection back to R^3.

    A supporting line of the projected set lifts to a supporting plane
    through the direction, so the preimage is in convex position.

    Raises:
        ValueError: on a zero direction or colliding projection
    """
    pts = list(points)
    projection = project_points(pts, direction)
    if not projection.collision_free:
        i, j = projection.collisions[0]
        raise ValueError(
            f"projection along {direction} maps points {i} and {j} to the same image"
        )
    planar = planar_largest_convex_subset(projection.points)
    witness = tuple(sorted(pts[projection.index[q]] for q in planar.witness))
    return SolveResult(planar.size, witness, planar.explored)


def candidate_directions(count: Optional[int] = None) -> Iterator[Point3]:
    """The axes, then directions (1, t, t^2) for t = 1, 2, ...

    No two directions are parallel, so a finite point set collides under at
    most one direction per pair of points.
    """
    produced = 0
    for axis in (Point3(0, 0, 1), Point3(0, 1, 0), Point3(1, 0, 0)):
        if count is not None and produced >= count:
            return
        yield axis
        produced += 1
    t = 1
    while count is None or produced < count:
        yield Point3(1, t, t * t)
        produced += 1
        t += 1


def approx_with_retries(
    points: Sequence[Point3], directions: Optional[Iterable[Point3]] = None
) -> Tuple[SolveResult, Point3]:
    """Run the approximation along the first collision-free direction.

    The default sequence is long enough to always contain one.

    Raises:
        ValueError: if every supplied direction collides
    """
    pts = list(points)
    if directions is None:
        directions = candidate_directions(4 + len(pts) * (len(pts) - 1) // 2)
    for direction in directions:
        projection = project_points(pts, direction)
        if not projection.collision_free:
            logger.debug(f"direction {direction} collides on {projection.collisions[0]}, retrying")
            continue
        return approx_convex_subset_3d(pts, direction), direction
    raise ValueError("no collision-free projection direction among the candidates")
