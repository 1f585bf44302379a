"""Weak epsilon-net verification and red-blue discrepancy over convex ranges.

Convex ranges are searched through their traces on the point set: a convex
set C meets the ground set X in some T, and conv(T) avoids the net whenever C
does. For discrepancy the traces are exactly the hull-closed subsets, and a
hull-closed set is the closure of its own vertex set, so enumerating sets in
convex position and closing them visits every range.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .geometry import Point3, RationalLike, to_rational
from .hull_index import HullIndex
from .reduction import DiskInstance, build_reduction, validate_instance
from .solvers import SolveResult, TangencyGraph, max_independent_set

logger = logging.getLogger(__name__)


def _distinct(points: Iterable[Point3], what: str) -> Tuple[Point3, ...]:
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise ValueError(f"{what} must not contain duplicate points")
    return pts


@dataclass(frozen=True)
class NetInstance:
    """Ground set X, candidate net S and epsilon in (0, 1].

    Representation Invariants:
        - len(self.ground) > 0
        - 0 < self.epsilon <= 1
    """

    ground: Tuple[Point3, ...]
    net: Tuple[Point3, ...]
    epsilon: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "ground", _distinct(self.ground, "ground set"))
        object.__setattr__(self, "net", tuple(dict.fromkeys(self.net)))
        object.__setattr__(self, "epsilon", to_rational(self.epsilon))
        if not self.ground:
            raise ValueError("ground set must be non-empty")
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")

    @property
    def threshold(self) -> int:
        """Smallest integer t with t >= epsilon * |X|."""
        n = len(self.ground)
        return -(-self.epsilon.numerator * n // self.epsilon.denominator)

    def is_heavy(self, size: int) -> bool:
        """Whether a subset of this size reaches epsilon * |X|."""
        # size >= eps * |X|, by cross-multiplication
        return size * self.epsilon.denominator >= self.epsilon.numerator * len(self.ground)


@dataclass(frozen=True)
class ColoredPoints:
    red: Tuple[Point3, ...]
    blue: Tuple[Point3, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "red", _distinct(self.red, "red set"))
        object.__setattr__(self, "blue", _distinct(self.blue, "blue set"))
        shared = set(self.red) & set(self.blue)
        if shared:
            raise ValueError(f"red and blue must be disjoint, both contain {min(shared)}")

    @property
    def points(self) -> Tuple[Point3, ...]:
        return self.red + self.blue


@dataclass(frozen=True)
class NetVerdict:
    """is_net, or a heavy ground subset whose hull misses every net point."""

    is_net: bool
    violation: Optional[Tuple[Point3, ...]] = None

    def __post_init__(self) -> None:
        if self.is_net != (self.violation is None):
            raise ValueError("a verdict carries a violation exactly when it is not a net")

    def __bool__(self) -> bool:
        return self.is_net


class NetSearch:
    """Search over ground subsets whose hull avoids the net.

    The index universe is the ground set followed by the net points outside
    it. Avoidance is inherited by subsets, so a candidate that lets the hull
    reach a net point is dropped for the whole subtree.
    """

    def __init__(self, ground: Sequence[Point3], net: Iterable[Point3]) -> None:
        self.ground = _distinct(ground, "ground set")
        self.net = tuple(dict.fromkeys(net))
        in_ground = {p: i for i, p in enumerate(self.ground)}
        extra = [q for q in self.net if q not in in_ground]
        self.index = HullIndex(self.ground + tuple(extra))
        self.net_indices = sorted(
            {in_ground[q] for q in self.net if q in in_ground}
            | set(range(len(self.ground), len(self.ground) + len(extra)))
        )
        self.explored = 0

    def avoids(self, mask: int) -> bool:
        return not any(self.index.contains(i, mask) for i in self.net_indices)

    def _grow(self, mask: int, size: int, candidates: Sequence[int], goal: int) -> Optional[int]:
        """Return a net-avoiding mask with goal points, or None."""
        self.explored += 1
        if size >= goal:
            return mask
        compatible = [y for y in candidates if self.avoids(mask | (1 << y))]
        for pos, y in enumerate(compatible):
            if size + len(compatible) - pos < goal:
                break
            found = self._grow(mask | (1 << y), size + 1, compatible[pos + 1:], goal)
            if found is not None:
                return found
        return None

    def find(self, size: int) -> Optional[Tuple[Point3, ...]]:
        """A net-avoiding ground subset with exactly size points, if any."""
        if size <= 0:
            return ()
        if size > len(self.ground):
            return None
        mask = self._grow(0, 0, list(range(len(self.ground))), size)
        return None if mask is None else self.index.points_of(mask)

    def largest(self) -> SolveResult:
        """The largest net-avoiding ground subset."""
        self.explored = 0
        best: Tuple[Point3, ...] = ()
        for size in range(1, len(self.ground) + 1):
            found = self.find(size)
            if found is None:
                break
            best = found
        return SolveResult(len(best), best, self.explored)


def verify_weak_eps_net(
    instance: NetInstance, search: Optional[NetSearch] = None
) -> NetVerdict:
    """Decide whether every convex set holding at least epsilon * |X| ground
    points contains a net point.

    ``search`` may be a NetSearch over the same ground and net to reuse its
    index across several epsilons.
    """
    search = search or NetSearch(instance.ground, instance.net)
    violation = search.find(instance.threshold)
    logger.debug(
        f"net check |X|={len(instance.ground)} |S|={len(instance.net)} "
        f"eps={instance.epsilon}: {'violated' if violation else 'holds'}"
    )
    if violation is None:
        return NetVerdict(True)
    if not instance.is_heavy(len(violation)):
        raise RuntimeError(
            f"violation of size {len(violation)} is below the threshold {instance.threshold}"
        )
    return NetVerdict(False, violation)


def max_net_avoiding_subset(instance: NetInstance) -> SolveResult:
    return NetSearch(instance.ground, instance.net).largest()


def net_iff_no_independent_set(
    instance: DiskInstance,
    m: int,
    search: Optional[NetSearch] = None,
    mis_size: Optional[int] = None,
) -> bool:
    """Check on one instance that B is an (m/n)-net for L exactly when no m
    disks are pairwise non-touching.

    Both sides are evaluated independently; ``search`` and ``mis_size`` let a
    caller checking every m share the work.

    Raises:
        ValueError: if the instance is invalid or m is outside 1..n
    """
    report = validate_instance(instance)
    if not report:
        raise ValueError(f"invalid disk instance: {report.reason}")
    n = len(instance)
    if not 1 <= m <= n:
        raise ValueError(f"m must lie in 1..{n}, got {m}")
    if search is None:
        reduction = build_reduction(instance)
        search = NetSearch(reduction.lifted, reduction.blocking_points)
    if mis_size is None:
        mis_size = max_independent_set(TangencyGraph.from_instance(instance)).size
    eps: RationalLike = Fraction(m, n)
    verdict = verify_weak_eps_net(NetInstance(search.ground, search.net, eps), search)
    holds = verdict.is_net == (mis_size < m)
    if not holds:
        logger.warning(
            f"net equivalence failed for m={m}: is_net={verdict.is_net}, mis={mis_size}"
        )
    return holds


# ---------------------------------------------------------------------------
# Discrepancy
# ---------------------------------------------------------------------------


class _DiscrepancySearch:
    def __init__(self, colored: ColoredPoints) -> None:
        self.index = HullIndex(colored.points)
        self.red_mask = (1 << len(colored.red)) - 1
        self.cap = max(len(colored.red), len(colored.blue))
        self.best = 0
        self.best_mask = 0
        self.explored = 0

    def score(self, closed: int) -> int:
        red = bin(closed & self.red_mask).count("1")
        blue = bin(closed & ~self.red_mask).count("1")
        return abs(red - blue)

    def _visit(self, mask: int, candidates: Sequence[int]) -> bool:
        self.explored += 1
        closed = self.index.closure(mask)
        value = self.score(closed)
        if value > self.best:
            self.best, self.best_mask = value, closed
            if value >= self.cap:
                return True
        compatible = [y for y in candidates if self.index.extends_convex(mask, y)]
        for pos, y in enumerate(compatible):
            if self._visit(mask | (1 << y), compatible[pos + 1:]):
                return True
        return False

    def run(self) -> SolveResult:
        self._visit(0, list(range(len(self.index))))
        witness = self.index.points_of(self.best_mask)
        return SolveResult(self.best, witness, self.explored)


def discrepancy(colored: ColoredPoints) -> SolveResult:
    """Maximum of ||A & red| - |A & blue|| over hull-closed subsets A.

    The witness is a maximizing A; size holds the discrepancy value.
    """
    result = _DiscrepancySearch(colored).run()
    logger.debug(
        f"discrepancy of {len(colored.red)} red / {len(colored.blue)} blue: "
        f"{result.size} after {result.explored} nodes"
    )
    return result


def brute_force_discrepancy(colored: ColoredPoints) -> SolveResult:
    """Discrepancy by scanning all 2^|P| subsets for hull-closed ones."""
    search = _DiscrepancySearch(colored)
    index = search.index
    best, best_mask = 0, 0
    for mask in range(1 << len(index)):
        if not index.is_hull_closed(mask):
            continue
        value = search.score(mask)
        if value > best:
            best, best_mask = value, mask
    return SolveResult(best, index.points_of(best_mask), 1 << len(index))


def hull_closed_witness(colored: ColoredPoints, witness: Iterable[Point3]) -> bool:
    """True iff the hull of witness picks up no other red or blue point."""
    index = HullIndex(colored.points)
    position = {p: i for i, p in enumerate(index.points)}
    mask = 0
    for p in witness:
        if p not in position:
            raise ValueError(f"{p} is not one of the colored points")
        mask |= 1 << position[p]
    return index.is_hull_closed(mask)
