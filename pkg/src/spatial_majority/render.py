"""Static SVG pictures of planar instances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ClippedLine
from .model import Ball, Box, InstanceError, VotingSituation

SIZE = 400
MARGIN = 20


@dataclass(frozen=True, eq=False)
class Annotations:
    core: np.ndarray | None = None
    witness: np.ndarray | None = None
    line: ClippedLine | None = None
    segment: tuple[np.ndarray, np.ndarray] | None = None


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(situation: VotingSituation, annotations: Annotations | None = None) -> str:
    if situation.dimension != 2:
        raise InstanceError("rendering needs a 2-dimensional instance")
    ann = annotations or Annotations()
    lo, hi = situation.space.bounds()
    scale = (SIZE - 2 * MARGIN) / float(np.max(hi - lo))

    def xy(p):
        # svg y grows downwards
        return (_fmt(MARGIN + (p[0] - lo[0]) * scale), _fmt(MARGIN + (hi[1] - p[1]) * scale))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    sp = situation.space
    if isinstance(sp, Box):
        x, y = xy((lo[0], hi[1]))
        out.append(f'<rect class="space" x="{x}" y="{y}" width="{_fmt((hi[0] - lo[0]) * scale)}" '
                   f'height="{_fmt((hi[1] - lo[1]) * scale)}" fill="none" stroke="black"/>')
    elif isinstance(sp, Ball):
        cx, cy = xy(sp.center)
        out.append(f'<circle class="space" cx="{cx}" cy="{cy}" r="{_fmt(sp.radius * scale)}" '
                   'fill="none" stroke="black"/>')
    if ann.line is not None:
        (x1, y1), (x2, y2) = xy(ann.line.point(ann.line.t_min)), xy(ann.line.point(ann.line.t_max))
        out.append(f'<line class="line" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   'stroke="gray" stroke-dasharray="4 3"/>')
    if ann.segment is not None:
        (x1, y1), (x2, y2) = xy(ann.segment[0]), xy(ann.segment[1])
        out.append(f'<line class="segment" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   'stroke="orange" stroke-width="2"/>')
    for i, p in enumerate(situation.ideals):
        cx, cy = xy(p)
        out.append(f'<circle class="ideal" data-voter="{i}" cx="{cx}" cy="{cy}" r="4" fill="steelblue"/>')
    if ann.core is not None:
        cx, cy = xy(ann.core)
        out.append(f'<rect class="core" x="{_fmt(float(cx) - 5)}" y="{_fmt(float(cy) - 5)}" '
                   'width="10" height="10" fill="none" stroke="red" stroke-width="2"/>')
    if ann.witness is not None:
        cx, cy = xy(ann.witness)
        out.append(f'<circle class="witness" cx="{cx}" cy="{cy}" r="5" fill="none" '
                   'stroke="darkgreen" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
