"""
SVG pictures of Cerf graphics and polygon decompositions.

Output is plain text built from fixed-precision numbers only, so the same
input always gives byte-identical SVG.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from checks import CerfError
from family_one import (
    BirthDeath,
    CerfGraphic1,
    HeightSwitch,
    IntervalType,
    classify_interval,
    validate_graphic,
)
from family_two import (
    ElementaryPolygon,
    PolygonDecomposition,
    classify_polygon,
    validate_decomposition,
)
from settings import COLORS, get_logger

logger = get_logger("cerf_svg")

WIDTH = 640
HEIGHT = 320
MARGIN = 40
POLYGON_RADIUS = 110


class RenderError(CerfError):
    code = "RENDER_ERROR"


def _num(x: float) -> str:
    text = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def _props(**attrs) -> str:
    return " ".join(f'{k.rstrip("_").replace("_", "-")}="{v}"' for k, v in attrs.items())


def _open(width: int, height: int, title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" {_props(width=width, height=height, viewBox=f"0 0 {width} {height}")}>',
        f"<title>{title}</title>",
        f'<rect {_props(x=0, y=0, width=width, height=height, fill=COLORS["surface"])}/>',
    ]


def _axes(width: int, height: int) -> list[str]:
    stroke = COLORS["outline"]
    bottom = height - MARGIN
    return [
        f'<line class="axis" {_props(x1=MARGIN, y1=bottom, x2=width - MARGIN, y2=bottom, stroke=stroke)}/>',
        f'<line class="axis" {_props(x1=MARGIN, y1=MARGIN, x2=MARGIN, y2=bottom, stroke=stroke)}/>',
    ]


# ---------------------------------------------------------------------------
# One-parameter graphics
# ---------------------------------------------------------------------------


def _height_range(gr: CerfGraphic1) -> tuple[Fraction, Fraction]:
    heights = [h for seg in gr.segments for f in (seg.start, seg.end) for h in f.heights]
    if not heights:
        return Fraction(0), Fraction(1)
    low, high = min(heights), max(heights)
    return (low, high) if high > low else (low, low + 1)


def _graphic_body(gr: CerfGraphic1) -> list[str]:
    n = len(gr.segments)
    if n == 0:
        return []
    low, high = _height_range(gr)
    span = float(high - low)
    step = (WIDTH - 2 * MARGIN) / n

    def y(h: Fraction) -> float:
        return HEIGHT - MARGIN - (float(h - low) / span) * (HEIGHT - 2 * MARGIN)

    out = []
    for i, seg in enumerate(gr.segments):
        x0 = MARGIN + i * step
        mid = x0 + step / 2
        x1 = x0 + step
        for h in seg.start.heights:
            pts = f"{_num(x0)},{_num(y(h))} {_num(mid)},{_num(y(h))}"
            out.append(f'<polyline class="strand" {_props(points=pts, fill="none", stroke=COLORS["char"])}/>')
        for h in seg.end.heights:
            pts = f"{_num(mid)},{_num(y(h))} {_num(x1)},{_num(y(h))}"
            out.append(f'<polyline class="strand" {_props(points=pts, fill="none", stroke=COLORS["char"])}/>')

        event = seg.event
        center_y = HEIGHT / 2
        if isinstance(event, HeightSwitch):
            kind = classify_interval(seg)
            color = COLORS["pink"] if kind is IntervalType.TYPE1 else COLORS["navy"]
            d = 8
            out.append(
                f'<g class="crossing" data-type="{kind.value}">'
                f'<line {_props(x1=_num(mid - d), y1=_num(center_y - d), x2=_num(mid + d), y2=_num(center_y + d), stroke=color)}/>'
                f'<line {_props(x1=_num(mid - d), y1=_num(center_y + d), x2=_num(mid + d), y2=_num(center_y - d), stroke=color)}/>'
                "</g>"
            )
        elif isinstance(event, BirthDeath):
            # cusp opens to the right for a birth, to the left for a death
            tip = mid - 8 if event.direction == "birth" else mid + 8
            end = mid + 8 if event.direction == "birth" else mid - 8
            path = (
                f"M{_num(end)},{_num(center_y - 8)} Q{_num(mid)},{_num(center_y)} {_num(tip)},{_num(center_y)} "
                f"Q{_num(mid)},{_num(center_y)} {_num(end)},{_num(center_y + 8)}"
            )
            out.append(f'<path class="cusp" {_props(d=path, fill="none", stroke=COLORS["green"])}/>')
        if i:
            out.append(
                f'<line class="segment-break" {_props(x1=_num(x0), y1=MARGIN, x2=_num(x0), y2=HEIGHT - MARGIN, stroke=COLORS["mist"])}/>'
            )
    if gr.cyclic:
        out.append(
            f'<path class="cyclic" {_props(d=f"M{WIDTH - MARGIN},{MARGIN // 2} H{MARGIN}", fill="none", stroke=COLORS["outline"], stroke_dasharray="4 3")}/>'
        )
    return out


def render_graphic(gr: CerfGraphic1) -> str:
    kinds = "cyclic" if gr.cyclic else "interval"
    lines = _open(WIDTH, HEIGHT, f"Cerf graphic, genus {gr.genus}, {kinds}, {len(gr.segments)} segments")
    lines += _axes(WIDTH, HEIGHT)
    lines += _graphic_body(gr)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Polygon decompositions
# ---------------------------------------------------------------------------


def _polygon_body(P: ElementaryPolygon, cx: float, cy: float, label: str) -> Iterable[str]:
    k = len(P.boundary)
    angles = np.pi / 2 + 2 * np.pi * np.arange(k) / k
    xs = cx + POLYGON_RADIUS * np.cos(angles)
    ys = cy - POLYGON_RADIUS * np.sin(angles)
    for e, seg in enumerate(P.boundary):
        a, b = e, (e + 1) % k
        kind = classify_interval(seg)
        color = COLORS["pink"] if kind is IntervalType.TYPE1 else COLORS["navy"]
        d = f"M{_num(cx)},{_num(cy)} L{_num(xs[a])},{_num(ys[a])} L{_num(xs[b])},{_num(ys[b])} Z"
        yield (
            f'<path class="sector" data-edge="{e}" data-type="{kind.value}" '
            f'{_props(d=d, fill=COLORS["cream"] if kind is IntervalType.TYPE1 else COLORS["mist"], stroke=color)}/>'
        )
    yield f'<text class="center" {_props(x=_num(cx), y=_num(cy), text_anchor="middle", fill=COLORS["char"])}>{label}</text>'


def render_decomposition(D: PolygonDecomposition) -> str:
    count = max(len(D.polygons), 1)
    width = max(WIDTH, count * (2 * POLYGON_RADIUS + MARGIN) + MARGIN)
    height = 2 * POLYGON_RADIUS + 3 * MARGIN
    lines = _open(width, height, f"Polygon decomposition, genus {D.genus}, {len(D.polygons)} polygons")
    for i, P in enumerate(D.polygons):
        cx = MARGIN + POLYGON_RADIUS + i * (2 * POLYGON_RADIUS + MARGIN)
        cy = MARGIN + POLYGON_RADIUS
        center = "none" if P.center is None else P.center.kind
        label = f"{center}: {classify_polygon(P).label()}"
        lines.extend(_polygon_body(P, cx, cy, label))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(item: Union[CerfGraphic1, PolygonDecomposition]) -> str:
    if isinstance(item, CerfGraphic1):
        report = validate_graphic(item)
        render = render_graphic
    elif isinstance(item, PolygonDecomposition):
        report = validate_decomposition(item)
        render = render_decomposition
    else:
        raise RenderError(f"cannot render {type(item).__name__}")
    if not report.ok:
        raise RenderError("refusing to render: " + ", ".join(c.name for c in report.failures))
    logger.info("rendering %s", type(item).__name__)
    return render(item)
