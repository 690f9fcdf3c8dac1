"""Static drawings of planar scenes.

``render_svg`` writes SVG 1.1 by hand using only the elements svg, g,
circle, line and text, so output is byte-for-byte deterministic.
``render_png`` draws the same scene with matplotlib (imported on demand).

An overlay is a dict with optional keys

* ``circles``: extra cycles such as Apollonius solutions,
* ``inscribed``: cycles drawn in the inscribed-sphere style,
* ``lines``: point pairs ``(p, q)`` drawn as dashed lines clipped to the view,
* ``points``: ``(label, coords)`` pairs drawn as labelled dots.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .apollonius import Configuration
from .cycles import Hyperplane, PointAtInfinity, PointSphere, Sphere
from .errors import UnsupportedDimension
from .io import ConfigDocument

MARGIN = 0.10
_GROUP_IDS = {"cycle": "cycles", "solution": "solutions", "inscribed": "inscribed"}
_COLORS = {
    "cycle": "#1f3b73",
    "solution": "#8a8a8a",
    "inscribed": "#b0302a",
    "theorem-line": "#2a7a3a",
    "dot": "#000000",
}


def _scene(doc):
    if isinstance(doc, Configuration):
        return doc.dim, tuple(doc.cycles)
    if isinstance(doc, ConfigDocument):
        return doc.dimension, tuple(doc.cycles)
    raise TypeError("expected a ConfigDocument or Configuration")


def _items(cycles, overlay):
    overlay = overlay or {}
    items = [("cycle", c) for c in cycles]
    items += [("solution", c) for c in overlay.get("circles", ())]
    items += [("inscribed", c) for c in overlay.get("inscribed", ())]
    lines = [tuple(np.asarray(p, dtype=float) for p in seg) for seg in overlay.get("lines", ())]
    points = [(str(lab), np.asarray(p, dtype=float)) for lab, p in overlay.get("points", ())]
    return items, lines, points


def scene_bounds(items, points) -> tuple[float, float, float, float]:
    """(xmin, ymin, xmax, ymax) of all finite objects, with the margin."""
    lo, hi = np.full(2, np.inf), np.full(2, -np.inf)

    def grow(p, r=0.0):
        nonlocal lo, hi
        lo = np.minimum(lo, np.asarray(p) - r)
        hi = np.maximum(hi, np.asarray(p) + r)

    for _, c in items:
        if isinstance(c, Sphere):
            grow(c.center, abs(c.signed_radius))
        elif isinstance(c, PointSphere):
            grow(c.coords)
        elif isinstance(c, Hyperplane):
            grow(np.asarray(c.unit_normal) * c.offset)
    for _, p in points:
        grow(p)
    if not np.all(np.isfinite(lo)):
        lo, hi = np.array([-1.0, -1.0]), np.array([1.0, 1.0])
    span = hi - lo
    side = max(float(np.max(span)), 1e-9)
    span = np.where(span < 1e-9 * side, side, span)
    mid = 0.5 * (lo + hi)
    lo, hi = mid - 0.5 * span, mid + 0.5 * span
    pad = MARGIN * span
    return (lo[0] - pad[0], lo[1] - pad[1], hi[0] + pad[0], hi[1] + pad[1])


def clip_line(p, q, bounds):
    """Part of the infinite line through p and q inside the box, or None."""
    xmin, ymin, xmax, ymax = bounds
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    d = q - p
    if not np.any(d):
        return None
    t0, t1 = -np.inf, np.inf
    for k, (low, high) in enumerate(((xmin, xmax), (ymin, ymax))):
        if d[k] == 0.0:
            if not low <= p[k] <= high:
                return None
            continue
        a, b = (low - p[k]) / d[k], (high - p[k]) / d[k]
        t0, t1 = max(t0, min(a, b)), min(t1, max(a, b))
    if t0 >= t1:
        return None
    return p + t0 * d, p + t1 * d


def _hyperplane_points(h: Hyperplane):
    n = np.asarray(h.unit_normal)
    foot = n * h.offset
    return foot, foot + np.array([-n[1], n[0]])


def _f(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(doc, overlay: dict | None = None, width: int = 600) -> str:
    dim, cycles = _scene(doc)
    if dim != 2:
        raise UnsupportedDimension(f"SVG rendering needs dimension 2, got {dim}")
    if width <= 0:
        raise ValueError("width must be positive")
    items, lines, points = _items(cycles, overlay)
    xmin, ymin, xmax, ymax = bounds = scene_bounds(items, points)
    w, h = xmax - xmin, ymax - ymin
    height = max(1, int(round(width * h / w)))
    sw = 0.004 * max(w, h)
    dot = 2.0 * sw
    font = 0.03 * max(w, h)

    # y grows downward in SVG: emit (x, -y) and a viewBox over the flipped box
    def xy(p):
        return _f(p[0]), _f(-p[1])

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="{_f(xmin)} {_f(-ymax)} {_f(w)} {_f(h)}">',
    ]

    def stroke(role, dashed=False):
        dash = f' stroke-dasharray="{_f(4 * sw)} {_f(2 * sw)}"' if dashed else ""
        return (f'fill="none" stroke="{_COLORS[role]}" stroke-width="{_f(sw)}"{dash}')

    def line_el(role, seg, dashed=False):
        clipped = clip_line(seg[0], seg[1], bounds)
        if clipped is None:
            return None
        (x1, y1), (x2, y2) = xy(clipped[0]), xy(clipped[1])
        return (f'<line class="{role}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'{stroke(role, dashed)}/>')

    groups: dict[str, list[str]] = {k: [] for k in ("cycle", "solution", "inscribed")}
    for role, c in items:
        if isinstance(c, Sphere):
            cx, cy = xy(c.center)
            groups[role].append(
                f'<circle class="{role}" cx="{cx}" cy="{cy}" '
                f'r="{_f(abs(c.signed_radius))}" {stroke(role)}/>'
            )
        elif isinstance(c, PointSphere):
            cx, cy = xy(c.coords)
            groups[role].append(
                f'<circle class="{role} point" cx="{cx}" cy="{cy}" r="{_f(dot)}" '
                f'fill="{_COLORS[role]}"/>'
            )
        elif isinstance(c, Hyperplane):
            el = line_el(role, _hyperplane_points(c))
            if el:
                groups[role].append(el)
        elif isinstance(c, PointAtInfinity):
            continue
    for role, els in groups.items():
        if els:
            out.append(f'<g id="{_GROUP_IDS[role]}">')
            out += els
            out.append("</g>")
    theorem = [el for el in (line_el("theorem-line", seg, True) for seg in lines) if el]
    if theorem:
        out.append('<g id="theorem-lines">')
        out += theorem
        out.append("</g>")
    if points:
        out.append('<g id="points">')
        for label, p in points:
            cx, cy = xy(p)
            out.append(f'<circle class="dot" cx="{cx}" cy="{cy}" r="{_f(dot)}" '
                       f'fill="{_COLORS["dot"]}"/>')
            tx, ty = _f(p[0] + 1.5 * dot), _f(-p[1] - 1.5 * dot)
            out.append(f'<text x="{tx}" y="{ty}" font-size="{_f(font)}" '
                       f'font-family={quoteattr("sans-serif")}>{escape(label)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_png(doc, path, overlay: dict | None = None, width: int = 600, dpi: int = 100):
    """Same scene as :func:`render_svg`, drawn with matplotlib into ``path``."""
    dim, cycles = _scene(doc)
    if dim != 2:
        raise UnsupportedDimension(f"figure rendering needs dimension 2, got {dim}")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Circle

    items, lines, points = _items(cycles, overlay)
    bounds = xmin, ymin, xmax, ymax = scene_bounds(items, points)
    aspect = (ymax - ymin) / (xmax - xmin)
    fig, ax = plt.subplots(figsize=(width / dpi, width * aspect / dpi), dpi=dpi)
    try:
        for role, c in items:
            color = _COLORS[role]
            if isinstance(c, Sphere):
                ax.add_patch(Circle(c.center, abs(c.signed_radius), fill=False, color=color))
            elif isinstance(c, PointSphere):
                ax.plot(*c.coords, "o", color=color, ms=3)
            elif isinstance(c, Hyperplane):
                seg = clip_line(*_hyperplane_points(c), bounds)
                if seg is not None:
                    ax.plot(*np.transpose(seg), color=color)
        for p, q in lines:
            seg = clip_line(p, q, bounds)
            if seg is not None:
                ax.plot(*np.transpose(seg), "--", color=_COLORS["theorem-line"])
        for label, p in points:
            ax.plot(*p, "o", color="k", ms=3)
            ax.annotate(label, p, textcoords="offset points", xytext=(4, 4))
        ax.set_xlim(xmin, xmax)
        ax.set_ylim(ymin, ymax)
        ax.set_aspect("equal")
        ax.set_axis_off()
        fig.savefig(path, dpi=dpi)
    finally:
        plt.close(fig)
