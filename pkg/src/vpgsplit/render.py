"""Deterministic SVG 1.1 drawings of representations and decompositions."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .decompose import Centered, Cornered, Decomposition, Grounded, OuterstringGroups
from .geometry import H, OrthoCurve, Representation

SCALE = 10
MARGIN = 2
GAP = 4


def part_colors(k):
    return [f"hsl({(360 * i) // max(k, 1)},70%,42%)" for i in range(k)]


def _bbox(reps, extra=()):
    xs, ys = [], []
    for rep in reps:
        for o in rep.objects:
            for s in o.geom.segments:
                for x, y in s.endpoints:
                    xs.append(2 * x)
                    ys.append(2 * y)
    for x2, y2 in extra:
        xs.append(x2)
        ys.append(y2)
    if not xs:
        return 0, 0, 0, 0
    return min(xs), max(xs), min(ys), max(ys)


class _Panel:
    """Maps doubled model coordinates to pixels; y grows upwards."""

    def __init__(self, bbox, x0):
        self.xmin, self.xmax, self.ymin, self.ymax = bbox
        self.x0 = x0

    @property
    def width(self):
        return (self.xmax - self.xmin) * SCALE // 2 + 2 * MARGIN * SCALE

    @property
    def height(self):
        return (self.ymax - self.ymin) * SCALE // 2 + 2 * MARGIN * SCALE

    def px(self, x2):
        return self.x0 + (x2 - self.xmin) * SCALE // 2 + MARGIN * SCALE

    def py(self, y2, total_h):
        return total_h - ((y2 - self.ymin) * SCALE // 2 + MARGIN * SCALE)


def _object_element(o, panel, h, color):
    g = o.geom
    if isinstance(g, OrthoCurve):
        pts = " ".join(f"{panel.px(2 * x)},{panel.py(2 * y, h)}" for x, y in g.points)
        return f'<polyline data-id="{o.id}" points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>'
    d = []
    for s in g.segments:
        (ax, ay), (bx, by) = s.endpoints
        d.append(f"M{panel.px(2 * ax)},{panel.py(2 * ay, h)} L{panel.px(2 * bx)},{panel.py(2 * by, h)}")
    return f'<path data-id="{o.id}" d="{" ".join(d)}" fill="none" stroke="{color}" stroke-width="2"/>'


def _dashed(x1, y1, x2, y2, color="#555"):
    return (
        f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" '
        f'stroke-width="1" stroke-dasharray="4,3"/>'
    )


def render_svg(rep: Representation, dec: Decomposition | None = None) -> str:
    """Objects as polylines (paths for single-vertical objects with
    horizontals), coloured by part when ``dec`` is given.  Ground and split
    lines are dashed; parts that carry their own geometry get an extra
    panel with their line and rays."""
    color = {}
    colors = part_colors(len(dec.parts)) if dec else []
    if dec:
        for k, p in enumerate(dec.parts):
            for v in p.members:
                color[v] = colors[k]
    main = _Panel(_bbox([rep]), 0)
    panels = [(main, rep, None, None)]
    x0 = main.width + GAP * SCALE
    for k, p in enumerate(dec.parts if dec else ()):
        c = p.cert
        if isinstance(c, (Centered, Grounded, Cornered)):
            extra = [c.corner] if isinstance(c, Cornered) else []
            pn = _Panel(_bbox([c.geometry], extra), x0)
            panels.append((pn, c.geometry, c, colors[k]))
            x0 += pn.width + GAP * SCALE
    total_w = max(x0 - GAP * SCALE, main.width) if len(panels) > 1 else main.width
    total_h = max(pn.height for pn, *_ in panels)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_w}" '
        f'height="{total_h}" viewBox="0 0 {total_w} {total_h}">',
        f'<rect x="0" y="0" width="{total_w}" height="{total_h}" fill="white"/>',
    ]
    # axes of the main panel through the origin when visible, else along the border
    ax = main.px(0) if main.xmin <= 0 <= main.xmax else main.px(main.xmin)
    ay = main.py(0, total_h) if main.ymin <= 0 <= main.ymax else main.py(main.ymin, total_h)
    out.append(f'<line class="axis" x1="0" y1="{ay}" x2="{main.width}" y2="{ay}" stroke="#bbb" stroke-width="1"/>')
    out.append(f'<line class="axis" x1="{ax}" y1="0" x2="{ax}" y2="{total_h}" stroke="#bbb" stroke-width="1"/>')
    top, bottom = 0, total_h
    for k, p in enumerate(dec.parts if dec else ()):
        c = p.cert
        if not isinstance(c, OuterstringGroups):
            continue
        for g in c.groups:
            if g.line2 is None:
                continue
            if c.rotated:
                # (x, y) -> (-y, x) was applied; the split line x' = m is y = -m here
                y = main.py(-g.line2, total_h)
                out.append(_dashed(0, y, main.width, y, colors[k]))
            else:
                x = main.px(g.line2)
                out.append(_dashed(x, top, x, bottom, colors[k]))
    for o in sorted(rep.objects, key=lambda o: o.id):
        out.append(_object_element(o, main, total_h, color.get(o.id, "#000")))
    for pn, geo, c, col in panels[1:]:
        out.append('<g class="part-panel">')
        if geo.line is not None and geo.line.orient == H:
            y = pn.py(geo.line.value2, total_h)
            out.append(_dashed(pn.x0, y, pn.x0 + pn.width, y))
        if isinstance(c, Cornered):
            cx, cy = pn.px(c.corner[0]), pn.py(c.corner[1], total_h)
            ex = pn.x0 if c.r1 == "-x" else pn.x0 + pn.width
            out.append(_dashed(cx, cy, ex, cy, "#c00"))
            out.append(_dashed(cx, cy, cx, 0, "#c00"))
        for o in sorted(geo.objects, key=lambda o: o.id):
            out.append(_object_element(o, pn, total_h, col))
        out.append("</g>")
    out.append(f"<title>{escape(f'{len(rep.objects)} objects')}</title>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
