"""Tests for instance and reduction figures."""

import pytest

from src.convexhard.plot.figures import (
    format_for_path,
    instance_scene,
    reduction_scene,
    render,
    render_figure,
)
from tests.conftest import make_instance


class TestScenes:
    """Test suite for scene construction."""

    def test_instance_scene(self, chain_instance):
        """Test disks and tangency marks of the chain."""
        scene = instance_scene(chain_instance)
        assert len(scene.disks) == 3
        assert len(scene.tangencies) == 2
        assert scene.lifted == []

    def test_reduction_scene(self, chain_reduction):
        """Test markers and blocked segments of the chain points."""
        scene = reduction_scene(chain_reduction)
        assert len(scene.lifted) + len(scene.blocking) == 5
        assert len(scene.segments) == 2

    def test_empty_instance_rejected(self):
        """Test that nothing cannot be drawn."""
        with pytest.raises(ValueError, match="empty"):
            instance_scene(make_instance())


class TestRendering:
    """Test suite for SVG and HTML output."""

    def test_instance_svg(self, chain_instance):
        """Test the SVG elements of an instance figure."""
        svg = render(chain_instance, "svg")
        assert svg.startswith("<?xml")
        assert svg.count('<circle class="disk"') == 3
        assert svg.count('<circle class="tangency"') == 2
        assert svg.rstrip().endswith("</svg>")

    def test_points_svg(self, chain_reduction):
        """Test the SVG elements of a points figure."""
        svg = render(chain_reduction, "svg")
        assert svg.count('class="lifted"') == 3
        assert svg.count('class="blocking"') == 2
        assert svg.count('class="blocking-segment"') == 2

    def test_precision_setting(self, chain_instance):
        """Test that the plot config controls decimal places."""
        svg = render(chain_instance, "svg", {"precision": 1, "scale": 10, "margin": 1})
        assert 'r="10.0"' in svg

    def test_plotly_figure(self, square_reduction):
        """Test the plotly figure traces."""
        fig = render_figure(reduction_scene(square_reduction))
        names = [trace.name for trace in fig.data]
        assert names == ["blocked pairs", "L", "B"]

    def test_html(self, chain_instance):
        """Test the interactive HTML output."""
        html = render(chain_instance, "html")
        assert "<html>" in html
        assert "plotly" in html.lower()

    def test_unknown_format(self, chain_instance):
        """Test that only svg and html are supported."""
        with pytest.raises(ValueError, match="svg"):
            render(chain_instance, "png")

    def test_format_for_path(self):
        """Test choosing the format from the output suffix."""
        assert format_for_path("a/figure.HTML") == "html"
        assert format_for_path("figure.svg") == "svg"
        assert format_for_path("-") == "svg"
        assert format_for_path(None) == "svg"
