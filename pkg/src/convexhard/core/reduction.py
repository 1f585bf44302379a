"""Reduction from independent set on non-overlapping unit disks to largest
(empty) convex subsets in R^3, together with its mechanical lemma checks.

Disk indices are 0-based inside the package; the file formats translate to
1-based indices at the boundary.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .geometry import (
    Plane3,
    Point2,
    Point3,
    Sign,
    circle_lift_plane,
    lift,
    midpoint2,
    midpoint3,
    plane_side,
    point_in_hull,
    squared_distance2,
)
from .hull_index import HullIndex, iter_bits, mask_of

logger = logging.getLogger(__name__)

# unit radius: disks touch at squared center distance (2r)^2
TOUCHING_SQUARED_DISTANCE = 4


@dataclass(frozen=True)
class DiskInstance:
    """Centers of unit disks; validity is checked by ``validate_instance``."""

    centers: Tuple[Point2, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", tuple(self.centers))

    def __len__(self) -> int:
        return len(self.centers)


@dataclass(frozen=True)
class InstanceReport:
    """Outcome of instance validation; truthy iff the instance is valid."""

    valid: bool
    violation: Optional[Tuple[int, int]] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True, order=True)
class TangentPair:
    """Indices i < j of two touching disks."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 0 <= self.i < self.j:
            raise ValueError(f"tangent pair needs 0 <= i < j, got ({self.i}, {self.j})")


@dataclass(frozen=True)
class BlockingPoint:
    point: Point3
    pair: TangentPair


@dataclass(frozen=True)
class ReductionOutput:
    """The labeled point set P = L + B.

    Instance Attributes:
        - centers: disk centers the lifted points came from
        - lifted: L, index-aligned with centers
        - blocking: B, one entry per tangent pair, with the pair it blocks

    The stored points are kept as given (a parsed file may have been edited),
    so checks evaluate exactly what was stored. ``is_consistent`` tells whether
    they still equal a fresh reduction of ``centers``.
    """

    centers: Tuple[Point2, ...]
    lifted: Tuple[Point3, ...]
    blocking: Tuple[BlockingPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", tuple(self.centers))
        object.__setattr__(self, "lifted", tuple(self.lifted))
        object.__setattr__(self, "blocking", tuple(self.blocking))
        if len(self.centers) != len(self.lifted):
            raise ValueError(
                f"L must be index-aligned with the centers: "
                f"{len(self.lifted)} lifted points for {len(self.centers)} centers"
            )

    @property
    def instance(self) -> DiskInstance:
        return DiskInstance(self.centers)

    @property
    def blocking_points(self) -> Tuple[Point3, ...]:
        return tuple(b.point for b in self.blocking)

    @property
    def points(self) -> Tuple[Point3, ...]:
        """P as L followed by B; index k >= len(L) is blocking entry k - len(L)."""
        return self.lifted + self.blocking_points

    @property
    def pairs(self) -> Tuple[TangentPair, ...]:
        return tuple(b.pair for b in self.blocking)

    def blocking_for(self, pair: TangentPair) -> BlockingPoint:
        for b in self.blocking:
            if b.pair == pair:
                return b
        raise ValueError(f"({pair.i}, {pair.j}) is not a tangent pair of this reduction")

    def is_consistent(self) -> bool:
        """True iff the stored points equal build_reduction of the centers."""
        if not validate_instance(self.instance):
            return False
        return build_reduction(self.instance) == self


def validate_instance(instance: DiskInstance) -> InstanceReport:
    """Check distinct centers and pairwise non-overlapping unit disks."""
    centers = instance.centers
    for i, j in combinations(range(len(centers)), 2):
        d2 = squared_distance2(centers[i], centers[j])
        if d2 == 0:
            return InstanceReport(False, (i, j), f"centers {i} and {j} coincide")
        if d2 < TOUCHING_SQUARED_DISTANCE:
            return InstanceReport(
                False,
                (i, j),
                f"disks {i} and {j} overlap: squared center distance {d2} < 4",
            )
    return InstanceReport(True)


def _require_valid(instance: DiskInstance) -> None:
    report = validate_instance(instance)
    if not report:
        raise ValueError(f"invalid disk instance: {report.reason}")


def tangent_pairs(instance: DiskInstance) -> List[TangentPair]:
    """All touching pairs (i < j) in lexicographic order.

    Raises:
        ValueError: if the instance is not valid
    """
    _require_valid(instance)
    centers = instance.centers
    return [
        TangentPair(i, j)
        for i, j in combinations(range(len(centers)), 2)
        if squared_distance2(centers[i], centers[j]) == TOUCHING_SQUARED_DISTANCE
    ]


def build_reduction(instance: DiskInstance) -> ReductionOutput:
    """Lift the centers and add one blocking midpoint per tangent pair.

    Raises:
        ValueError: if the instance is not valid
    """
    pairs = tangent_pairs(instance)
    lifted = tuple(lift(c) for c in instance.centers)
    blocking = tuple(
        BlockingPoint(midpoint3(lifted[p.i], lifted[p.j]), p) for p in pairs
    )
    output = ReductionOutput(instance.centers, lifted, blocking)
    if len(set(output.points)) != len(output.points):
        # distinct center pairs have distinct lifted midpoints
        raise RuntimeError("reduction produced coinciding points")
    logger.debug(
        f"Reduction of {len(lifted)} disks: |L|={len(lifted)}, |B|={len(blocking)}"
    )
    return output


def witness_plane(output: ReductionOutput, pair: TangentPair) -> Plane3:
    """Plane through lift(c_i), lift(c_j) and b_ij, from the circle centred at
    the midpoint of the two centers through both of them (radius 1).

    Raises:
        ValueError: if pair is not a tangent pair of the reduction
    """
    output.blocking_for(pair)
    center = midpoint2(output.centers[pair.i], output.centers[pair.j])
    return circle_lift_plane(center, 1)


def witness_plane_sides(
    output: ReductionOutput, pair: TangentPair
) -> Tuple[List[Sign], List[Sign]]:
    """Signs of the witness plane on L and on B, in storage order."""
    h = witness_plane(output, pair)
    return (
        [plane_side(h, p) for p in output.lifted],
        [plane_side(h, b.point) for b in output.blocking],
    )


def verify_witness_plane(output: ReductionOutput, pair: TangentPair) -> bool:
    """Zero on the pair's two lifted centers and its blocker, Positive on
    every other point of P.
    """
    try:
        l_sides, b_sides = witness_plane_sides(output, pair)
    except ValueError:
        return False
    for k, side in enumerate(l_sides):
        expected = Sign.ZERO if k in (pair.i, pair.j) else Sign.POSITIVE
        if side != expected:
            logger.debug(f"witness plane of {pair}: L[{k}] has side {side.name}")
            return False
    for entry, side in zip(output.blocking, b_sides):
        expected = Sign.ZERO if entry.pair == pair else Sign.POSITIVE
        if side != expected:
            logger.debug(f"witness plane of {pair}: blocker {entry.pair} has side {side.name}")
            return False
    return True


def verify_all_witness_planes(output: ReductionOutput) -> bool:
    return all(verify_witness_plane(output, b.pair) for b in output.blocking)


def _lifted_indices(output: ReductionOutput, subset: Iterable[Point3]) -> Set[int]:
    position: Dict[Point3, int] = {p: k for k, p in enumerate(output.lifted)}
    chosen = set()
    for q in subset:
        if q not in position:
            raise ValueError(f"{q} is not a lifted center of this reduction")
        chosen.add(position[q])
    return chosen


def check_encoding_lemma(output: ReductionOutput, subset: Iterable[Point3]) -> bool:
    """For every blocker b: b in conv(Q) iff both endpoints of b's pair are in Q.

    Raises:
        ValueError: if Q is not a subset of L
    """
    q_points = list(dict.fromkeys(subset))
    chosen = _lifted_indices(output, q_points)
    for entry in output.blocking:
        inside = bool(q_points) and point_in_hull(entry.point, q_points)
        both = entry.pair.i in chosen and entry.pair.j in chosen
        if inside != both:
            logger.warning(
                f"Encoding check failed for pair {entry.pair}: "
                f"in hull={inside}, both endpoints chosen={both}"
            )
            return False
    return True


def reduction_index(output: ReductionOutput) -> HullIndex:
    """HullIndex over P with L at indices 0..n-1 and B after them."""
    return HullIndex(output.points)


def check_encoding_mask(output: ReductionOutput, q_mask: int, index: HullIndex) -> bool:
    """Encoding check for the lifted subset given as a bitmask over L."""
    n = len(output.lifted)
    for k, entry in enumerate(output.blocking):
        both = q_mask >> entry.pair.i & 1 and q_mask >> entry.pair.j & 1
        if index.contains(n + k, q_mask) != bool(both):
            logger.warning(
                f"Encoding check failed for blocker {k} "
                f"and lifted subset {sorted(iter_bits(q_mask))}"
            )
            return False
    return True


def check_encoding_lemma_exhaustive(
    output: ReductionOutput, index: Optional[HullIndex] = None
) -> bool:
    """Run the encoding check for all 2^n subsets of L."""
    index = index or reduction_index(output)
    return all(
        check_encoding_mask(output, q_mask, index)
        for q_mask in range(1 << len(output.lifted))
    )


def check_convexity_proposition(
    output: ReductionOutput, index: Optional[HullIndex] = None
) -> Dict[str, bool]:
    """Testable restatement of "L and B are each in empty convex position and
    ch(L) = ch(L + B)":

    - lifted_convex: L is in convex position
    - blocking_convex: B is in convex position
    - same_hull: every point of L is a vertex of conv(P) and every blocker
      lies in conv(L)
    """
    index = index or reduction_index(output)
    n = len(output.lifted)
    full = index.full_mask
    l_mask = (1 << n) - 1
    b_mask = full & ~l_mask
    return {
        "lifted_convex": index.is_convex(l_mask),
        "blocking_convex": index.is_convex(b_mask),
        "same_hull": (
            not any(index.contains(i, full & ~(1 << i)) for i in range(n))
            and all(index.contains(k, l_mask) for k in iter_bits(b_mask))
        ),
    }


def check_corollary(
    output: ReductionOutput,
    lifted_subset: Iterable[int],
    blocking_subset: Iterable[int],
    index: Optional[HullIndex] = None,
) -> bool:
    """L' + B' is in convex position iff no point of B' lies in conv(L').

    Subsets are given as 0-based positions into L and into B.
    """
    index = index or reduction_index(output)
    n = len(output.lifted)
    l_mask = mask_of(lifted_subset)
    b_mask = mask_of(n + k for k in blocking_subset)
    convex = index.is_convex(l_mask | b_mask)
    blocked = any(index.contains(k, l_mask) for k in iter_bits(b_mask))
    return convex == (not blocked)


def check_corollary_exhaustive(
    output: ReductionOutput, index: Optional[HullIndex] = None
) -> bool:
    index = index or reduction_index(output)
    n = len(output.lifted)
    nb = len(output.blocking)
    for l_mask in range(1 << n):
        for bits in range(1 << nb):
            if not check_corollary(
                output, iter_bits(l_mask), iter_bits(bits), index
            ):
                logger.warning(
                    f"Corollary failed for L'={sorted(iter_bits(l_mask))}, "
                    f"B'={sorted(iter_bits(bits))}"
                )
                return False
    return True


@dataclass(frozen=True)
class SwapResult:
    """Independent disks recovered from a convex set, plus the swap trace."""

    independent: Tuple[int, ...]
    swap_trace: Tuple[Tuple[Point3, ...], ...]
    swaps: Tuple[TangentPair, ...]


def convex_set_to_independent_set(
    output: ReductionOutput,
    subset: Iterable[Point3],
    m: int,
    index: Optional[HullIndex] = None,
) -> SwapResult:
    """Turn m + |B| points in convex position into m independent disks.

    While two chosen lifted centers touch, drop the lower-indexed one and
    insert their blocking point. Each swap keeps the size and convex position
    and adds one blocker, so the loop ends; the lifted centers left over are
    pairwise non-touching and at least m of them remain.

    Raises:
        ValueError: if the set is not in convex position, has the wrong size,
            or is not contained in P
        RuntimeError: if a swap ever loses convex position
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    index = index or reduction_index(output)
    position = {p: k for k, p in enumerate(output.points)}
    current = list(dict.fromkeys(subset))
    stray = [p for p in current if p not in position]
    if stray:
        raise ValueError(f"{stray[0]} is not a point of the reduction")
    expected = m + len(output.blocking)
    if len(current) != expected:
        raise ValueError(f"set must have m + |B| = {expected} points, got {len(current)}")
    mask = mask_of(position[p] for p in current)
    if not index.is_convex(mask):
        raise ValueError("set is not in convex position")

    n = len(output.lifted)
    trace = [index.points_of(mask)]
    swaps = []
    while True:
        touching = next(
            (
                (k, b)
                for k, b in enumerate(output.blocking)
                if mask >> b.pair.i & 1 and mask >> b.pair.j & 1
            ),
            None,
        )
        if touching is None:
            break
        k, entry = touching
        if mask >> (n + k) & 1:
            raise RuntimeError(
                f"blocker of ({entry.pair.i}, {entry.pair.j}) sits in a convex set "
                f"together with both its endpoints"
            )
        mask = (mask & ~(1 << entry.pair.i)) | (1 << (n + k))
        swaps.append(entry.pair)
        if not index.is_convex(mask):
            logger.error(
                f"Swap on pair {entry.pair} broke convex position: "
                f"{index.points_of(mask)}"
            )
            raise RuntimeError(
                f"swap on pair ({entry.pair.i}, {entry.pair.j}) broke convex position"
            )
        trace.append(index.points_of(mask))

    chosen = [i for i in iter_bits(mask) if i < n]
    independent = tuple(chosen[:m])
    if len(independent) < m:
        raise RuntimeError(f"only {len(independent)} independent disks remain, need {m}")
    return SwapResult(independent, tuple(trace), tuple(swaps))
