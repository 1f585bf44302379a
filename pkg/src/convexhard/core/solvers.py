"""Exact solvers for both sides of the reduction.

- ``max_independent_set``: branch and bound on the tangency graph
- ``largest_convex_subset`` / ``largest_empty_convex_subset``: depth-first
  search over subsets in convex position, pruned by subset-monotonicity
- ``decide_es`` / ``decide_lecs``: the same search with a target size

The searches are exponential and sized for desk-scale instances.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .geometry import Point3
from .hull_index import HullIndex, iter_bits
from .reduction import DiskInstance, tangent_pairs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveResult:
    """Optimal value with a witness and the number of search nodes visited.

    For the cardinality problems size is the witness length; for discrepancy
    it is the count difference realized by the witness range.
    """

    size: int
    witness: tuple
    explored: int = 0


@dataclass(frozen=True)
class TangencyGraph:
    """Vertices 0..n-1, one edge per tangent pair."""

    n: int
    edges: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(self.edges))
        for i, j in self.edges:
            if not 0 <= i < j < self.n:
                raise ValueError(f"edge ({i}, {j}) is not a pair i < j of vertices < {self.n}")

    @classmethod
    def from_instance(cls, instance: DiskInstance) -> "TangencyGraph":
        return cls(len(instance), frozenset((p.i, p.j) for p in tangent_pairs(instance)))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(sorted(self.edges))
        return graph

    def is_independent(self, vertices: Iterable[int]) -> bool:
        chosen = set(vertices)
        return not any(i in chosen and j in chosen for i, j in self.edges)


# ---------------------------------------------------------------------------
# Maximum independent set
# ---------------------------------------------------------------------------


class _IndependentSetSearch:
    """Branch on a maximum-degree vertex: include it (dropping its
    neighbourhood) or exclude it. Pruned by size + |candidates| <= best."""

    def __init__(self, graph: TangencyGraph) -> None:
        self.n = graph.n
        self.adjacency = [0] * graph.n
        for i, j in graph.edges:
            self.adjacency[i] |= 1 << j
            self.adjacency[j] |= 1 << i
        self.best = 0
        self.best_mask = 0
        self.explored = 0

    def greedy(self) -> int:
        """Minimum-degree greedy independent set, as a bitmask."""
        candidates = (1 << self.n) - 1
        chosen = 0
        while candidates:
            v = min(
                iter_bits(candidates),
                key=lambda u: (bin(self.adjacency[u] & candidates).count("1"), u),
            )
            chosen |= 1 << v
            candidates &= ~(self.adjacency[v] | (1 << v))
        return chosen

    def run(self) -> SolveResult:
        self.best_mask = self.greedy()
        self.best = bin(self.best_mask).count("1")
        self._branch((1 << self.n) - 1, 0, 0)
        witness = tuple(iter_bits(self.best_mask))
        logger.debug(
            f"MIS on {self.n} vertices: size {self.best}, {self.explored} nodes"
        )
        return SolveResult(self.best, witness, self.explored)

    def _branch(self, candidates: int, size: int, chosen: int) -> None:
        self.explored += 1
        remaining = bin(candidates).count("1")
        if size + remaining <= self.best:
            return
        pivot, degree = -1, -1
        for v in iter_bits(candidates):
            d = bin(self.adjacency[v] & candidates).count("1")
            if d > degree:
                pivot, degree = v, d
        if degree == 0:
            # every candidate is isolated: take them all
            self.best = size + remaining
            self.best_mask = chosen | candidates
            return
        bit = 1 << pivot
        self._branch(candidates & ~(self.adjacency[pivot] | bit), size + 1, chosen | bit)
        self._branch(candidates & ~bit, size, chosen)


def max_independent_set(graph: TangencyGraph) -> SolveResult:
    """Exact maximum independent set; the witness lists 0-based vertices."""
    return _IndependentSetSearch(graph).run()


# ---------------------------------------------------------------------------
# Largest (empty) convex subsets in R^3
# ---------------------------------------------------------------------------


def _sorted_distinct(points: Iterable[Point3]) -> List[Point3]:
    pts = list(points)
    if len(set(pts)) != len(pts):
        raise ValueError("point set must not contain duplicates")
    return sorted(pts)


class ConvexSubsetSearch:
    """Depth-first search over subsets in convex position.

    Points are visited in lexicographic (x, y, z) order. At each node the
    candidates are narrowed to the points that keep the set in convex
    position; since convex position is inherited by subsets, a point rejected
    here can never be added further down, and |set| + |candidates| bounds the
    best completion.

    Instance Attributes:
        - points: the search universe, sorted
        - empty: when True only sets whose hull contains no other point of the
          universe may become the incumbent
        - index: membership index over points
    """

    def __init__(
        self,
        points: Iterable[Point3],
        empty: bool = False,
        index: Optional[HullIndex] = None,
    ) -> None:
        self.points = _sorted_distinct(points)
        self.empty = empty
        if index is not None and list(index.points) != self.points:
            raise ValueError("index must be built over the sorted search points")
        self.index = index or HullIndex(self.points)
        self.explored = 0
        self._best = -1
        self._best_mask = 0
        self._target: Optional[int] = None

    def _record(self, mask: int, size: int) -> None:
        if size <= self._best:
            return
        # emptiness is not inherited by subsets, so it is checked per node
        if self.empty and not self.index.is_hull_closed(mask):
            return
        self._best = size
        self._best_mask = mask

    def _done(self) -> bool:
        return self._target is not None and self._best >= self._target

    def _goal(self) -> int:
        if self._target is not None:
            return max(self._target - 1, self._best)
        return self._best

    def _visit(self, mask: int, size: int, candidates: Sequence[int]) -> None:
        self.explored += 1
        self._record(mask, size)
        if self._done():
            return
        compatible = [y for y in candidates if self.index.extends_convex(mask, y)]
        for pos, y in enumerate(compatible):
            if size + len(compatible) - pos <= self._goal():
                break
            self._visit(mask | (1 << y), size + 1, compatible[pos + 1:])
            if self._done():
                return

    def run(self, target: Optional[int] = None) -> SolveResult:
        """Search for the optimum, or stop once a set of size target is found."""
        self.explored = 0
        self._best, self._best_mask = -1, 0
        self._target = target
        self._visit(0, 0, list(range(len(self.points))))
        witness = self.index.points_of(self._best_mask)
        kind = "LECS" if self.empty else "ES"
        logger.debug(
            f"{kind} search on {len(self.points)} points: best {self._best}, "
            f"{self.explored} nodes"
        )
        return SolveResult(self._best, witness, self.explored)


def largest_convex_subset(points: Iterable[Point3]) -> SolveResult:
    """Maximum subset in convex position (the Erdős–Szekeres optimum)."""
    return ConvexSubsetSearch(points).run()


def largest_empty_convex_subset(points: Iterable[Point3]) -> SolveResult:
    """Maximum subset in empty convex position."""
    return ConvexSubsetSearch(points, empty=True).run()


def _check_k(k: int) -> None:
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")


def decide_es(points: Iterable[Point3], k: int) -> bool:
    """Are there k points in convex position?"""
    _check_k(k)
    search = ConvexSubsetSearch(points)
    if k > len(search.points):
        return False
    return search.run(target=k).size >= k


def decide_lecs(points: Iterable[Point3], k: int) -> bool:
    """Are there k points in empty convex position?"""
    _check_k(k)
    search = ConvexSubsetSearch(points, empty=True)
    if k > len(search.points):
        return False
    return search.run(target=k).size >= k


def enumerate_largest_convex_subset(
    points: Iterable[Point3], empty: bool = False
) -> SolveResult:
    """Unpruned enumeration of all 2^n subsets; the oracle for the DFS."""
    pts = _sorted_distinct(points)
    index = HullIndex(pts)
    best, best_mask = 0, 0
    for mask in range(1 << len(pts)):
        size = bin(mask).count("1")
        if size <= best:
            continue
        ok = index.is_empty_convex(mask) if empty else index.is_convex(mask)
        if ok:
            best, best_mask = size, mask
    return SolveResult(best, index.points_of(best_mask), 1 << len(pts))
