"""Seeded sweeps over many instances and random point sets.

These run for minutes and are deselected by default; run them with
``pytest -m performance``.
"""

from itertools import combinations

import numpy as np
import pytest

from src.convexhard.core.checker import CheckRunner, failed_checks
from src.convexhard.core.nets import (
    ColoredPoints,
    NetSearch,
    brute_force_discrepancy,
    discrepancy,
    net_iff_no_independent_set,
)
from src.convexhard.core.planar import (
    es_fpt_decide,
    planar_convex_position,
    planar_largest_convex_subset,
)
from src.convexhard.core.reduction import (
    build_reduction,
    check_encoding_lemma_exhaustive,
    verify_all_witness_planes,
)
from src.convexhard.core.solvers import (
    ConvexSubsetSearch,
    TangencyGraph,
    enumerate_largest_convex_subset,
    max_independent_set,
)
from src.convexhard.data.generator import generate_instance
from tests.conftest import brute_force_planar, random_planar, random_points

pytestmark = pytest.mark.performance

EXHAUSTIVE_CAP = 18


class TestAcceptanceSweep:
    """Full check battery on 200 generated instances."""

    @pytest.mark.timeout(1800)
    def test_generated_instances_pass(self):
        """Test 200 seeded instances within the exhaustive cap."""
        checked = 0
        seed = 0
        while checked < 200:
            assert seed < 1000, f"only {checked} instances fit in {EXHAUSTIVE_CAP} points"
            n = 4 + seed % 7
            output = build_reduction(generate_instance(seed, n))
            seed += 1
            if len(output.points) > EXHAUSTIVE_CAP:
                continue
            report = CheckRunner(output).run(timings=False)
            assert report["passed"], (seed - 1, failed_checks(report))
            assert report["es_size"] == report["lecs_size"] == report["mis_size"] + report["B_size"]
            assert report["discrepancy"] >= report["mis_size"]
            checked += 1
        assert checked == 200


class TestLemmaSweep:
    """Lemma checks on generated instances of up to 12 disks."""

    def test_witness_planes(self):
        """Test every witness plane of 1000 instances."""
        for seed in range(1000):
            output = build_reduction(generate_instance(seed, 1 + seed % 12))
            assert verify_all_witness_planes(output), seed

    @pytest.mark.timeout(3600)
    def test_encoding_lemma_exhaustive(self):
        """Test all 2^n lifted subsets of 100 instances with n from 4 to 12."""
        for seed in range(100):
            output = build_reduction(generate_instance(seed, 4 + seed % 9))
            assert check_encoding_lemma_exhaustive(output), seed

    @pytest.mark.timeout(7200)
    def test_net_equivalence_every_m(self):
        """Test the net equivalence for every m on 1000 instances."""
        for seed in range(1000):
            instance = generate_instance(seed, 1 + seed % 12)
            output = build_reduction(instance)
            search = NetSearch(output.lifted, output.blocking_points)
            mis = max_independent_set(TangencyGraph.from_instance(instance)).size
            for m in range(1, len(instance) + 1):
                assert net_iff_no_independent_set(instance, m, search, mis), (seed, m)


class TestOracleSweep:
    """Pruned searches against plain enumeration."""

    @pytest.mark.timeout(1800)
    def test_convex_subset_search(self):
        """Test 100 random sets of up to 12 points in [-5, 5]^3."""
        rng = np.random.default_rng(7)
        for _ in range(100):
            pts = random_points(rng, int(rng.integers(1, 13)), -5, 5)
            for empty in (False, True):
                assert (
                    ConvexSubsetSearch(pts, empty=empty).run().size
                    == enumerate_largest_convex_subset(pts, empty=empty).size
                )

    @pytest.mark.timeout(1800)
    def test_discrepancy(self):
        """Test 50 random colorings of up to 14 points."""
        rng = np.random.default_rng(11)
        for _ in range(50):
            pts = random_points(rng, int(rng.integers(1, 15)), -5, 5)
            split = int(rng.integers(0, len(pts) + 1))
            colored = ColoredPoints(tuple(pts[:split]), tuple(pts[split:]))
            assert discrepancy(colored).size == brute_force_discrepancy(colored).size


class TestPlanarSweep:
    """Planar searches against subset enumeration."""

    def test_planar_dp(self):
        """Test the DP on 100 random sets of up to 12 points."""
        rng = np.random.default_rng(13)
        for _ in range(100):
            pts = random_planar(rng, int(rng.integers(1, 13)))
            result = planar_largest_convex_subset(pts)
            assert result.size == brute_force_planar(pts)
            assert planar_convex_position(result.witness)

    def test_fpt_decision(self):
        """Test k = 3, 4, 5 on 100 general-position sets of up to 12 points."""
        rng = np.random.default_rng(17)
        for _ in range(100):
            pts = random_planar(rng, int(rng.integers(3, 13)), -30, 30, general=True)
            for k in (3, 4, 5):
                expected = any(planar_convex_position(c) for c in combinations(pts, k))
                assert es_fpt_decide(pts, k) == expected
