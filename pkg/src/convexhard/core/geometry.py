"""Exact geometric predicate kernel.

Every coordinate is a ``fractions.Fraction``. Predicates scale the points they
look at to a common integer grid (a positive scaling preserves every convexity
relation) and decide with integer determinants, so signs are never rounded.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

RationalLike = Union[int, str, Fraction]

IntVec = Tuple[int, int, int]


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, canonical string or Fraction to a Fraction.

    Floats are refused: a float has already lost the exactness we need.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"coordinates must be exact rationals, got {value!r}")
    return Fraction(value)


class Sign(IntEnum):
    """Result of an exact sign test."""

    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value: Union[int, Fraction]) -> "Sign":
        if value > 0:
            return cls.POSITIVE
        if value < 0:
            return cls.NEGATIVE
        return cls.ZERO


@dataclass(frozen=True, order=True)
class Point2:
    """A point in the plane with rational coordinates."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", to_rational(self.x))
        object.__setattr__(self, "y", to_rational(self.y))

    def __repr__(self) -> str:
        return f"Point2({self.x}, {self.y})"


@dataclass(frozen=True, order=True)
class Point3:
    """A point in space with rational coordinates.

    Ordering is lexicographic on (x, y, z), which is the search order used by
    the solvers.
    """

    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", to_rational(self.x))
        object.__setattr__(self, "y", to_rational(self.y))
        object.__setattr__(self, "z", to_rational(self.z))

    def __repr__(self) -> str:
        return f"Point3({self.x}, {self.y}, {self.z})"


@dataclass(frozen=True)
class Plane3:
    """The affine functional h(p) = a*x + b*y + c*z + d.

    Representation Invariants:
        - (a, b, c) != (0, 0, 0)
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise ValueError("plane normal (a, b, c) must be non-zero")

    def evaluate(self, p: Point3) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c * p.z + self.d

    def normalized(self) -> "Plane3":
        """Return the positive multiple with coprime integer coefficients.

        Two planes describe the same oriented functional up to positive
        scaling iff their normalized forms are equal.
        """
        coeffs = (self.a, self.b, self.c, self.d)
        den = math.lcm(*(q.denominator for q in coeffs))
        ints = [int(q * den) for q in coeffs]
        g = math.gcd(*ints)
        return Plane3(*(Fraction(v, g) for v in ints))


def midpoint2(p: Point2, q: Point2) -> Point2:
    return Point2((p.x + q.x) / 2, (p.y + q.y) / 2)


def midpoint3(p: Point3, q: Point3) -> Point3:
    return Point3((p.x + q.x) / 2, (p.y + q.y) / 2, (p.z + q.z) / 2)


def squared_distance2(p: Point2, q: Point2) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def lift(p: Point2) -> Point3:
    """Lift a planar point onto the paraboloid z = x^2 + y^2.

    >>> lift(Point2(1, 2))
    Point3(1, 2, 5)
    """
    return Point3(p.x, p.y, p.x * p.x + p.y * p.y)


def plane_side(h: Plane3, p: Point3) -> Sign:
    """Exact sign of h evaluated at p."""
    return Sign.of(h.evaluate(p))


def circle_lift_plane(center: Point2, r_squared: RationalLike) -> Plane3:
    """Return the plane whose section of the paraboloid projects to a circle.

    The plane is z = 2 o.(x, y) - |o|^2 + r^2, oriented so that the lift of a
    planar point q is Positive / Zero / Negative exactly when q is outside /
    on / inside the circle.

    Raises:
        ValueError: if r_squared <= 0
    """
    r2 = to_rational(r_squared)
    if r2 <= 0:
        raise ValueError(f"r_squared must be positive, got {r2}")
    # h(p) = z - 2 o.x + |o|^2 - r^2; at a lift this is |q - o|^2 - r^2.
    return Plane3(
        -2 * center.x,
        -2 * center.y,
        1,
        center.x * center.x + center.y * center.y - r2,
    )


# ---------------------------------------------------------------------------
# Integer kernel
# ---------------------------------------------------------------------------


def integer_coordinates(points: Sequence[Point3]) -> List[IntVec]:
    """Scale points by the lcm of all denominators onto an integer grid."""
    if not points:
        return []
    den = math.lcm(
        *(c.denominator for p in points for c in (p.x, p.y, p.z))
    )
    return [(int(p.x * den), int(p.y * den), int(p.z * den)) for p in points]


def sub(a: IntVec, b: IntVec) -> IntVec:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def cross(a: IntVec, b: IntVec) -> IntVec:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot(a: IntVec, b: IntVec) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


ZERO_VEC: IntVec = (0, 0, 0)


class Simplex:
    """An affinely independent set of 2, 3 or 4 integer points.

    ``contains`` decides membership in the convex hull from the affine
    coefficients of the query point. The coefficients are obtained by Cramer's
    rule, so only their signs (ratios of integer determinants) are computed.
    """

    __slots__ = ("vertices", "_tests")

    def __init__(self, vertices: Sequence[IntVec]) -> None:
        self.vertices = tuple(vertices)
        self._tests = self._build()

    @classmethod
    def try_build(cls, vertices: Sequence[IntVec]) -> Optional["Simplex"]:
        try:
            return cls(vertices)
        except ValueError:
            return None

    def _build(self):
        vs = self.vertices
        if len(vs) == 2:
            a, b = vs
            d = sub(b, a)
            if d == ZERO_VEC:
                raise ValueError("degenerate segment")
            return ("seg", a, d, dot(d, d))
        if len(vs) == 3:
            a, b, c = vs
            n = cross(sub(b, a), sub(c, a))
            if n == ZERO_VEC:
                raise ValueError("degenerate triangle")
            edges = []
            for p, q in ((a, b), (b, c), (c, a)):
                edges.append((p, cross(n, sub(q, p))))
            return ("tri", a, n, edges)
        if len(vs) == 4:
            faces = []
            for i in range(4):
                others = [vs[j] for j in range(4) if j != i]
                p0, p1, p2 = others
                n = cross(sub(p1, p0), sub(p2, p0))
                side = dot(n, sub(vs[i], p0))
                if side == 0:
                    raise ValueError("degenerate tetrahedron")
                if side < 0:
                    n = (-n[0], -n[1], -n[2])
                faces.append((p0, n))
            return ("tet", faces)
        raise ValueError(f"simplex needs 2 to 4 vertices, got {len(vs)}")

    def contains(self, p: IntVec) -> bool:
        kind = self._tests[0]
        if kind == "seg":
            _, a, d, dd = self._tests
            w = sub(p, a)
            if cross(d, w) != ZERO_VEC:
                return False
            t = dot(w, d)
            return 0 <= t <= dd
        if kind == "tri":
            _, a, n, edges = self._tests
            if dot(n, sub(p, a)) != 0:
                return False
            # inward edge normals n x (q - p) lie in the triangle's plane
            return all(dot(inward, sub(p, start)) >= 0 for start, inward in edges)
        _, faces = self._tests
        return all(dot(n, sub(p, p0)) >= 0 for p0, n in faces)


def _in_hull_int(p: IntVec, q: Sequence[IntVec]) -> bool:
    """Carathéodory enumeration over supports of at most four points."""
    if p in q:
        return True
    lo = [min(v[k] for v in q) for k in range(3)]
    hi = [max(v[k] for v in q) for k in range(3)]
    if any(p[k] < lo[k] or p[k] > hi[k] for k in range(3)):
        return False
    for size in (2, 3, 4):
        for support in combinations(q, size):
            simplex = Simplex.try_build(support)
            # dependent supports are covered by their proper subsets
            if simplex is not None and simplex.contains(p):
                return True
    return False


def point_in_hull(p: Point3, hull_points: Iterable[Point3]) -> bool:
    """Decide p in conv(Q) exactly.

    Raises:
        ValueError: if Q is empty
    """
    q = list(dict.fromkeys(hull_points))
    if not q:
        raise ValueError("point_in_hull needs a non-empty point set")
    scaled = integer_coordinates([p] + q)
    return _in_hull_int(scaled[0], scaled[1:])


def _require_distinct(points: Sequence[Point3], what: str = "points") -> None:
    if len(set(points)) != len(points):
        raise ValueError(f"{what} must be pairwise distinct")


def is_convex_position(points: Iterable[Point3]) -> bool:
    """Return True iff every point is a vertex of the hull of the set.

    Sets of at most two points are in convex position.

    Raises:
        ValueError: on duplicate points
    """
    s = list(points)
    _require_distinct(s)
    if len(s) <= 2:
        return True
    scaled = integer_coordinates(s)
    for i, p in enumerate(scaled):
        rest = scaled[:i] + scaled[i + 1:]
        if _in_hull_int(p, rest):
            return False
    return True


def is_empty_convex_position(
    subset: Iterable[Point3], ambient: Iterable[Point3]
) -> bool:
    """Return True iff subset is in convex position and its hull holds no
    other ambient point.

    Raises:
        ValueError: on duplicates or when subset is not contained in ambient
    """
    s = list(subset)
    p_all = list(ambient)
    _require_distinct(s, "subset points")
    ambient_set = set(p_all)
    missing = [q for q in s if q not in ambient_set]
    if missing:
        raise ValueError(f"subset is not contained in the ambient set: {missing[0]}")
    if not is_convex_position(s):
        return False
    if not s:
        return True
    chosen = set(s)
    return not any(point_in_hull(q, s) for q in ambient_set if q not in chosen)


def orientation2(a: Point2, b: Point2, c: Point2) -> Sign:
    """Sign of the 2x2 orientation determinant of (b - a, c - a)."""
    return Sign.of((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def general_position_2d(points: Iterable[Point2]) -> bool:
    """Return True iff no three of the points are collinear."""
    s = list(points)
    return all(
        orientation2(a, b, c) != Sign.ZERO for a, b, c in combinations(s, 3)
    )
