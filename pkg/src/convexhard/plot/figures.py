"""Figures for instances and reductions.

SVG is written directly as text; HTML goes through plotly for an interactive
view of the same scene. Coordinates are rounded for display only.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import plotly.graph_objects as go

from ..core.geometry import midpoint2
from ..core.reduction import DiskInstance, ReductionOutput, tangent_pairs

logger = logging.getLogger(__name__)

XY = Tuple[Fraction, Fraction]


@dataclass
class Scene:
    """Everything a figure draws, in plane coordinates.

    Instance Attributes:
        - disks: unit disk centers
        - tangencies: touching points of tangent disks
        - lifted: xy-projection of L
        - blocking: xy-projection of B
        - segments: for each blocker, the segment between its pair's centers
    """

    title: str
    disks: List[XY] = field(default_factory=list)
    tangencies: List[XY] = field(default_factory=list)
    lifted: List[XY] = field(default_factory=list)
    blocking: List[XY] = field(default_factory=list)
    segments: List[Tuple[XY, XY]] = field(default_factory=list)

    def bounds(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        xs: List[Fraction] = []
        ys: List[Fraction] = []
        for x, y in self.disks:
            xs += [x - 1, x + 1]
            ys += [y - 1, y + 1]
        for x, y in self.lifted + self.blocking:
            xs.append(x)
            ys.append(y)
        return min(xs), min(ys), max(xs), max(ys)


def _xy(p: Any) -> XY:
    return (Fraction(p.x), Fraction(p.y))


def instance_scene(instance: DiskInstance) -> Scene:
    """Raises ValueError on an empty or invalid instance."""
    if len(instance) == 0:
        raise ValueError("cannot plot an empty instance")
    centers = instance.centers
    scene = Scene(title=f"{len(centers)} unit disks")
    scene.disks = [_xy(c) for c in centers]
    for pair in tangent_pairs(instance):
        scene.tangencies.append(_xy(midpoint2(centers[pair.i], centers[pair.j])))
    return scene


def reduction_scene(output: ReductionOutput) -> Scene:
    if not output.points:
        raise ValueError("cannot plot an empty point set")
    scene = Scene(title=f"|L| = {len(output.lifted)}, |B| = {len(output.blocking)}")
    scene.lifted = [_xy(p) for p in output.lifted]
    scene.blocking = [_xy(b.point) for b in output.blocking]
    for b in output.blocking:
        scene.segments.append((_xy(output.lifted[b.pair.i]), _xy(output.lifted[b.pair.j])))
    return scene


def scene_for(obj: Union[DiskInstance, ReductionOutput]) -> Scene:
    if isinstance(obj, DiskInstance):
        return instance_scene(obj)
    return reduction_scene(obj)


def render_svg(scene: Scene, precision: int = 3, scale: int = 40, margin: int = 2) -> str:
    """Render the scene as an SVG document; y grows upwards in the figure."""
    min_x, min_y, max_x, max_y = scene.bounds()
    left = min_x - margin
    top = max_y + margin
    width = (max_x - min_x + 2 * margin) * scale
    height = (max_y - min_y + 2 * margin) * scale

    def fmt(v: Fraction) -> str:
        return f"{float(v):.{precision}f}"

    def sx(x: Fraction) -> str:
        return fmt((x - left) * scale)

    def sy(y: Fraction) -> str:
        return fmt((top - y) * scale)

    mark = Fraction(scale, 8)
    rows = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" '
            f'height="{fmt(height)}" viewBox="0 0 {fmt(width)} {fmt(height)}">'
        ),
        f"<title>{scene.title}</title>",
    ]
    for x, y in scene.disks:
        rows.append(
            f'<circle class="disk" cx="{sx(x)}" cy="{sy(y)}" r="{fmt(Fraction(scale))}" '
            'fill="none" stroke="black"/>'
        )
    for x, y in scene.tangencies:
        rows.append(
            f'<circle class="tangency" cx="{sx(x)}" cy="{sy(y)}" r="{fmt(mark)}" fill="red"/>'
        )
    for (x1, y1), (x2, y2) in scene.segments:
        rows.append(
            f'<line class="blocking-segment" x1="{sx(x1)}" y1="{sy(y1)}" '
            f'x2="{sx(x2)}" y2="{sy(y2)}" stroke="gray"/>'
        )
    for x, y in scene.lifted:
        rows.append(
            f'<circle class="lifted" cx="{sx(x)}" cy="{sy(y)}" r="{fmt(mark)}" fill="black"/>'
        )
    for x, y in scene.blocking:
        rows.append(
            f'<rect class="blocking" x="{fmt((x - left) * scale - mark)}" '
            f'y="{fmt((top - y) * scale - mark)}" width="{fmt(2 * mark)}" '
            f'height="{fmt(2 * mark)}" fill="red"/>'
        )
    rows.append("</svg>")
    return "\n".join(rows) + "\n"


def render_figure(scene: Scene) -> go.Figure:
    """Plotly figure of the scene; disks are drawn as circle shapes."""
    fig = go.Figure()
    for x, y in scene.disks:
        fig.add_shape(
            type="circle",
            x0=float(x - 1),
            y0=float(y - 1),
            x1=float(x + 1),
            y1=float(y + 1),
            line=dict(color="black"),
        )
    if scene.disks:
        fig.add_trace(
            go.Scatter(
                x=[float(x) for x, _ in scene.disks],
                y=[float(y) for _, y in scene.disks],
                mode="markers",
                marker=dict(size=4, color="black"),
                name="centers",
                hovertext=[f"disk {k + 1}: ({x}, {y})" for k, (x, y) in enumerate(scene.disks)],
                hoverinfo="text",
            )
        )
    if scene.tangencies:
        fig.add_trace(
            go.Scatter(
                x=[float(x) for x, _ in scene.tangencies],
                y=[float(y) for _, y in scene.tangencies],
                mode="markers",
                marker=dict(size=8, color="red"),
                name="tangencies",
            )
        )
    if scene.segments:
        edge_x: List[Optional[float]] = []
        edge_y: List[Optional[float]] = []
        for (x1, y1), (x2, y2) in scene.segments:
            edge_x += [float(x1), float(x2), None]
            edge_y += [float(y1), float(y2), None]
        fig.add_trace(
            go.Scatter(
                x=edge_x, y=edge_y, mode="lines", line=dict(color="gray"),
                hoverinfo="none", name="blocked pairs",
            )
        )
    for name, pts, symbol, color in (
        ("L", scene.lifted, "circle", "black"),
        ("B", scene.blocking, "square", "red"),
    ):
        if pts:
            fig.add_trace(
                go.Scatter(
                    x=[float(x) for x, _ in pts],
                    y=[float(y) for _, y in pts],
                    mode="markers",
                    marker=dict(size=9, symbol=symbol, color=color),
                    name=name,
                    hovertext=[f"{name}[{k + 1}]: ({x}, {y})" for k, (x, y) in enumerate(pts)],
                    hoverinfo="text",
                )
            )
    fig.update_layout(
        title=dict(text=scene.title),
        hovermode="closest",
        xaxis=dict(zeroline=False),
        yaxis=dict(zeroline=False, scaleanchor="x", scaleratio=1),
        plot_bgcolor="white",
    )
    return fig


def render_html(scene: Scene) -> str:
    return render_figure(scene).to_html(include_plotlyjs="cdn", full_html=True)


def render(
    obj: Union[DiskInstance, ReductionOutput],
    fmt: str,
    plot_config: Optional[Dict[str, Any]] = None,
) -> str:
    """Render obj as "svg" or "html".

    Raises:
        ValueError: on an empty input or an unknown format
    """
    cfg = plot_config or {}
    scene = scene_for(obj)
    if fmt == "svg":
        return render_svg(
            scene,
            precision=int(cfg.get("precision", 3)),
            scale=int(cfg.get("scale", 40)),
            margin=int(cfg.get("margin", 2)),
        )
    if fmt == "html":
        return render_html(scene)
    raise ValueError(f"plot format must be 'svg' or 'html', got {fmt!r}")


def format_for_path(path: Optional[str]) -> str:
    """"html" for .html / .htm outputs, otherwise "svg"."""
    if path and path.lower().endswith((".html", ".htm")):
        return "html"
    return "svg"
