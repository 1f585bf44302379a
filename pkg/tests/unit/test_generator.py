"""Tests for seeded instance generation."""

from fractions import Fraction

import pytest

from src.convexhard.core.geometry import Point2
from src.convexhard.core.reduction import tangent_pairs, validate_instance
from src.convexhard.data.generator import (
    generate_instance,
    grid_side,
    lattice_adjacency,
    sample_cells,
)


class TestGenerator:
    """Test suite for the lattice generator."""

    def test_grid_side(self):
        """Test the exact grid size computation."""
        assert grid_side(8, Fraction(1, 2)) == 4
        assert grid_side(5, Fraction(1, 2)) == 4
        assert grid_side(4, Fraction(1)) == 2
        assert grid_side(1, Fraction(1)) == 1

    def test_deterministic(self):
        """Test that equal seeds give equal instances."""
        assert generate_instance(7, 10) == generate_instance(7, 10)

    def test_full_block(self):
        """Test that density 1 with four disks fills a 2 x 2 block."""
        instance = generate_instance(3, 4, "1")
        assert set(instance.centers) == {Point2(0, 0), Point2(2, 0), Point2(0, 2), Point2(2, 2)}
        assert len(tangent_pairs(instance)) == 4

    def test_single_disk(self):
        """Test the one-disk instance."""
        instance = generate_instance(0, 1)
        assert len(instance) == 1
        assert tangent_pairs(instance) == []

    def test_valid_and_tangencies_match_lattice(self):
        """Test validity and tangencies over many seeds."""
        for seed in range(50):
            cells = sample_cells(seed, 9)
            assert len(set(cells)) == 9
            instance = generate_instance(seed, 9)
            assert validate_instance(instance)
            pairs = [(p.i, p.j) for p in tangent_pairs(instance)]
            assert pairs == lattice_adjacency(cells)

    def test_invalid_arguments(self):
        """Test n and density validation."""
        with pytest.raises(ValueError, match="at least 1"):
            generate_instance(0, 0)
        with pytest.raises(ValueError, match="density"):
            generate_instance(0, 3, "3/2")
        with pytest.raises(ValueError, match="density"):
            generate_instance(0, 3, "0")

    def test_density_must_be_exact(self):
        """Test that decimal densities are refused and fractions kept."""
        with pytest.raises(ValueError, match="exact rational"):
            sample_cells(0, 3, "0.5")
        with pytest.raises(ValueError, match="exact rational"):
            sample_cells(0, 3, "half")
        assert sample_cells(4, 5, Fraction(1, 2)) == sample_cells(4, 5, "2/4")
