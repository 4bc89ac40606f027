"""SVG pictures of cross-sections and of their dual median levels.

Drawing uses decimal approximations only; nothing here feeds back into the
exact computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from .exact import to_float
from .geometry import Scene, cross_section
from .levels import contacts, dualize, median_level

PALETTE = {"R": "#d62728", "G": "#2ca02c", "B": "#1f77b4"}


@dataclass
class RenderSpec:
    width: int = 640
    height: int = 480
    precision: int = 6
    dual: bool = False
    margin: int = 30

    def __post_init__(self):
        if self.precision < 6:
            raise ValueError("precision must be at least 6 digits")


class _Frame:
    """Affine map from a data box to SVG pixels (y axis flipped)."""

    def __init__(self, xs, ys, spec: RenderSpec):
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        pad_x = (x1 - x0) * 0.08 or 1.0
        pad_y = (y1 - y0) * 0.08 or 1.0
        self.x0, self.x1 = x0 - pad_x, x1 + pad_x
        self.y0, self.y1 = y0 - pad_y, y1 + pad_y
        self.spec = spec

    def px(self, x: float, y: float) -> tuple[float, float]:
        s = self.spec
        w, h = s.width - 2 * s.margin, s.height - 2 * s.margin
        return (s.margin + (x - self.x0) / (self.x1 - self.x0) * w,
                s.margin + (self.y1 - y) / (self.y1 - self.y0) * h)


def _fmt(v: float, digits: int) -> str:
    return f"{v:.{digits}g}"


def _header(spec: RenderSpec, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="white"/>',
    ]


def render_svg(scene: Scene, slope, spec: Optional[RenderSpec] = None,
               bisector: Optional[tuple[int, int]] = None, label: str = "") -> str:
    spec = spec or RenderSpec()
    if spec.dual:
        return _render_dual(scene, slope, spec, label)
    cs = cross_section(scene, slope)
    pts = [(p, to_float(p.u), to_float(p.z)) for p in cs.points]
    frame = _Frame([x for _, x, _ in pts] or [0.0], [y for _, _, y in pts] or [0.0], spec)
    d = spec.precision
    out = _header(spec, f"cross-section at slope {label}")
    if bisector is not None:
        a, b = (next(q for q in pts if q[0].id == i) for i in bisector)
        (ax, ay), (bx, by) = (a[1], a[2]), (b[1], b[2])
        # extend the segment across the whole box
        if abs(bx - ax) >= abs(by - ay):
            k = (by - ay) / (bx - ax)
            ends = [(frame.x0, ay + k * (frame.x0 - ax)), (frame.x1, ay + k * (frame.x1 - ax))]
        else:
            k = (bx - ax) / (by - ay)
            ends = [(ax + k * (frame.y0 - ay), frame.y0), (ax + k * (frame.y1 - ay), frame.y1)]
        (x1, y1), (x2, y2) = (frame.px(*e) for e in ends)
        out.append(
            f'<line class="bisector" x1="{_fmt(x1, d)}" y1="{_fmt(y1, d)}" x2="{_fmt(x2, d)}" '
            f'y2="{_fmt(y2, d)}" stroke="black" stroke-width="1.5" stroke-dasharray="6 3"/>'
        )
    for p, x, y in pts:
        cx, cy = frame.px(x, y)
        out.append(
            f'<circle class="point" data-id="{p.id}" data-u="{_fmt(x, d)}" data-z="{_fmt(y, d)}" '
            f'cx="{_fmt(cx, d)}" cy="{_fmt(cy, d)}" r="4" fill="{PALETTE[p.color]}"/>'
        )
        out.append(
            f'<text x="{_fmt(cx + 6, d)}" y="{_fmt(cy - 6, d)}" font-size="10">{p.id}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _render_dual(scene: Scene, slope, spec: RenderSpec, label: str) -> str:
    cs = cross_section(scene, slope)
    levels = {c: median_level(dualize(cs.of_color(c))) for c in "RGB"}
    d = spec.precision
    breaks = [to_float(x) for lv in levels.values() for x in lv.breaks]
    marks = []
    for c in "RB":
        for ct in contacts(levels["G"], levels[c]):
            if ct.crossing:
                marks.append((c, ct.sign, to_float(ct.x)))
    xs = breaks + [m[2] for m in marks] or [0.0]
    lo, hi = min(xs), max(xs)
    span = (hi - lo) or 2.0
    lo, hi = lo - 0.15 * span, hi + 0.15 * span
    duals = dualize(cs.points)

    def val(line, x):
        return to_float(line.slope) * x + to_float(line.intercept)

    ys = [val(l, x) for l in duals for x in (lo, hi)]
    ys += [levels[c].value_at(b) for c in levels for b in levels[c].breaks]
    ys = [to_float(y) for y in ys]
    frame = _Frame([lo, hi], ys, spec)
    frame.x0, frame.x1 = lo, hi
    out = _header(spec, f"dual median levels at slope {label}")
    for l in duals:
        (x1, y1), (x2, y2) = frame.px(lo, val(l, lo)), frame.px(hi, val(l, hi))
        out.append(
            f'<line class="dual" data-id="{l.id}" x1="{_fmt(x1, d)}" y1="{_fmt(y1, d)}" '
            f'x2="{_fmt(x2, d)}" y2="{_fmt(y2, d)}" stroke="{PALETTE[l.color]}" '
            f'stroke-opacity="0.3" stroke-width="1"/>'
        )
    for c, lv in levels.items():
        knots = [lo] + [to_float(b) for b in lv.breaks] + [hi]
        vals = [val(lv.first, lo)] + [to_float(lv.value_at(b)) for b in lv.breaks]
        vals.append(val(lv.last, hi))
        path = " ".join(
            f"{_fmt(px, d)},{_fmt(py, d)}" for px, py in (frame.px(x, y) for x, y in zip(knots, vals))
        )
        out.append(
            f'<polyline class="level" data-color="{c}" data-breaks="{len(lv.breaks)}" '
            f'points="{path}" fill="none" stroke="{PALETTE[c]}" stroke-width="3"/>'
        )
    for c, sign, x in marks:
        y = to_float(levels["G"].value_at(x))
        px, py = frame.px(x, y)
        out.append(
            f'<text class="crossing" x="{_fmt(px + 4, d)}" y="{_fmt(py - 4, d)}" font-size="12" '
            f'fill="{PALETTE[c]}">{c}{"+" if sign > 0 else "-"}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
