"""SVG drawings for inspection: a 1000x1000 viewport with a 5% margin."""

from __future__ import annotations

from fractions import Fraction

from .geometry import LabeledConfiguration
from .motion import MotionPath

SIZE = 1000
MARGIN = 0.05


def _bounds(configs):
    xs0, xs1, ys0, ys1 = [], [], [], []
    for c in configs:
        for x in c:
            xs0.append(x.cx - x.r)
            xs1.append(x.cx + x.r)
            ys0.append(x.cy - x.r)
            ys1.append(x.cy + x.r)
    if not xs0:
        return Fraction(-1), Fraction(-1), Fraction(1), Fraction(1)
    return min(xs0), min(ys0), max(xs1), max(ys1)


def render_svg(obj: LabeledConfiguration | MotionPath, labels: bool = False) -> str:
    if isinstance(obj, MotionPath):
        configs = [c for _, c in obj.keyframes]
        shown = obj.start
    else:
        configs = [obj]
        shown = obj
    x0, y0, x1, y1 = _bounds(configs)
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    scale = float(SIZE * (1 - 2 * MARGIN)) / float(span)
    off = SIZE * MARGIN

    def px(x):
        return off + (float(x - x0)) * scale

    def py(y):
        # y grows upward in the plane, downward in SVG
        return off + (float(y1 - y)) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
             f'viewBox="0 0 {SIZE} {SIZE}">']
    if isinstance(obj, MotionPath) and len(configs) > 1:
        for i in shown.labels:
            pts = " ".join(f"{px(c[i].cx):.3f},{py(c[i].cy):.3f}" for c in configs)
            parts.append(f'<polyline points="{pts}" fill="none" stroke="#999" stroke-width="1"/>')
    for i, c in shown.items():
        parts.append(f'<circle cx="{px(c.cx):.3f}" cy="{py(c.cy):.3f}" r="{float(c.r) * scale:.3f}" '
                     f'fill="none" stroke="black" stroke-width="2"/>')
        if labels:
            parts.append(f'<text x="{px(c.cx):.3f}" y="{py(c.cy):.3f}" font-size="14" '
                         f'text-anchor="middle" dominant-baseline="middle">{i}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
