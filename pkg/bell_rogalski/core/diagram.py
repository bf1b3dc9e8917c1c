"""
core/diagram.py

Static pictures of an orbit: lattice points sigma^alpha(m) for alpha in the
window, break classes as coloured lines between consecutive offsets, and the
support of every simple module as a shaded box.

Rank 1 draws a number line, rank 2 a square lattice (axis 1 horizontal).
Higher ranks fall back to a text table.  Output is assembled as plain text so
it is byte-identical across runs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from io import StringIO
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .automorphism import WeightPoint, orbit_point
from .config import DEFAULT_WINDOW
from .datum import BellRogalskiDatum, degree_window
from .weights import AxisBreaks, Classification, classify

logger = logging.getLogger(__name__)

CELL = 40
MARGIN = 40
FILLS = ("#d9d9d9", "#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fcbba1")
TIKZ_FILLS = ("gray!25", "blue!15", "orange!20", "green!15", "violet!15", "red!15")
AXIS_COLOURS = ("#d62728", "#1f77b4")
TIKZ_AXIS_COLOURS = ("red", "blue")


@dataclass
class Diagram:
    rank: int
    window: int
    svg: Optional[str]
    tikz: Optional[str]
    table: str
    break_lines: list[tuple[int, float]]
    boxes: list[list[tuple[int, int]]]

    @property
    def fallback(self) -> bool:
        return self.svg is None

    def to_dict(self) -> dict:
        d: dict = {
            "rank": self.rank,
            "window": self.window,
            "break_lines": [{"axis": axis + 1, "at": _num(v)} for axis, v in self.break_lines],
            "boxes": [[list(side) for side in box] for box in self.boxes],
        }
        if self.fallback:
            d["table"] = self.table
        return d


def _num(v: float) -> str:
    return f"{v:g}"


def _break_positions(breaks: Sequence[AxisBreaks], window: int) -> list[tuple[int, float]]:
    """A break b on axis i separates offsets b and b + 1."""
    out = []
    for b in breaks:
        for c in b.classes(window):
            if c is not None and -window <= c < window:
                out.append((b.axis, c + 0.5))
    return out


def _clipped_boxes(result: Classification, window: int) -> list[list[tuple[int, int]]]:
    """Each descriptor's support cut to the window, as inclusive offset ranges per axis."""
    out = []
    for desc in result.descriptors:
        box = []
        for lo, hi in desc.box:
            first = -window if lo is None else max(-window, lo + 1)
            last = window if hi is None else min(window, hi)
            box.append((first, last))
        if all(first <= last for first, last in box):
            out.append(box)
    return out


def _table(datum: BellRogalskiDatum, result: Classification) -> str:
    buf = StringIO()
    buf.write(f"orbit of {result.base} on [-{result.window}, {result.window}]^{datum.n}\n")
    for b in result.breaks:
        values = "all" if b.everything else (", ".join(str(v) for v in b.values) or "none")
        buf.write(f"axis {b.axis + 1} breaks: {values}\n")
    for k, desc in enumerate(result.descriptors):
        buf.write(f"module {k + 1}: {desc.describe_box()}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

def _sx(a: float, window: int) -> float:
    return MARGIN + (a + window) * CELL


def _sy(b: float, window: int) -> float:
    return MARGIN + (window - b) * CELL


def _svg(
    datum: BellRogalskiDatum,
    base: WeightPoint,
    window: int,
    lines: list[tuple[int, float]],
    boxes: list[list[tuple[int, int]]],
) -> str:
    rank = datum.n
    span = 2 * window * CELL
    width = span + 2 * MARGIN
    height = width if rank == 2 else 2 * MARGIN + CELL
    buf = StringIO()
    buf.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
    )
    buf.write(f'  <title>{escape(datum.name or "datum")}: orbit of {escape(str(base))}</title>\n')
    mid = MARGIN + CELL / 2
    for k, box in enumerate(boxes):
        fill = FILLS[k % len(FILLS)]
        (a0, a1) = box[0]
        x0, x1 = _sx(a0 - 0.5, window), _sx(a1 + 0.5, window)
        if rank == 1:
            y0, y1 = mid - CELL / 4, mid + CELL / 4
        else:
            (b0, b1) = box[1]
            y0, y1 = _sy(b1 + 0.5, window), _sy(b0 - 0.5, window)
        buf.write(
            f'  <rect x="{_num(x0)}" y="{_num(y0)}" width="{_num(x1 - x0)}" height="{_num(y1 - y0)}" '
            f'fill="{fill}" fill-opacity="0.7" />\n'
        )
    if rank == 1:
        buf.write(
            f'  <line x1="{_num(_sx(-window - 0.5, window))}" y1="{_num(mid)}" '
            f'x2="{_num(_sx(window + 0.5, window))}" y2="{_num(mid)}" stroke="#000" />\n'
        )
    for axis, v in lines:
        colour = AXIS_COLOURS[axis]
        if axis == 0:
            x = _num(_sx(v, window))
            y0 = _num(MARGIN / 2 if rank == 1 else _sy(window + 0.5, window))
            y1 = _num(height - MARGIN / 2 if rank == 1 else _sy(-window - 0.5, window))
            buf.write(f'  <line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="{colour}" stroke-width="2" />\n')
        else:
            y = _num(_sy(v, window))
            x0 = _num(_sx(-window - 0.5, window))
            x1 = _num(_sx(window + 0.5, window))
            buf.write(f'  <line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="{colour}" stroke-width="2" />\n')
    for alpha in degree_window(rank, window):
        cx = _num(_sx(alpha[0], window))
        cy = _num(mid if rank == 1 else _sy(alpha[1], window))
        weight = orbit_point(datum.sigma, base, alpha)
        buf.write(
            f'  <circle cx="{cx}" cy="{cy}" r="3" fill="#000">'
            f'<title>{list(alpha)}: {escape(str(weight))}</title></circle>\n'
        )
    for a in range(-window, window + 1):
        y = _num(height - 8 if rank == 1 else height - MARGIN / 4)
        buf.write(f'  <text x="{_num(_sx(a, window))}" y="{y}" font-size="10" text-anchor="middle">{a}</text>\n')
    if rank == 2:
        for b in range(-window, window + 1):
            buf.write(
                f'  <text x="{_num(MARGIN / 4)}" y="{_num(_sy(b, window) + 3)}" font-size="10" '
                f'text-anchor="middle">{b}</text>\n'
            )
    buf.write("</svg>\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# TikZ
# ---------------------------------------------------------------------------

def _tikz(
    datum: BellRogalskiDatum,
    base: WeightPoint,
    window: int,
    lines: list[tuple[int, float]],
    boxes: list[list[tuple[int, int]]],
) -> str:
    rank = datum.n
    lo, hi = _num(-window - 0.5), _num(window + 0.5)
    buf = StringIO()
    buf.write(f"% {datum.name or 'datum'}: orbit of {base}\n")
    buf.write("\\begin{tikzpicture}[scale=0.6]\n")
    for k, box in enumerate(boxes):
        fill = TIKZ_FILLS[k % len(TIKZ_FILLS)]
        (a0, a1) = box[0]
        if rank == 1:
            b0, b1 = -0.25, 0.25
        else:
            b0, b1 = box[1][0] - 0.5, box[1][1] + 0.5
        buf.write(
            f"  \\fill[{fill}] ({_num(a0 - 0.5)},{_num(b0)}) rectangle ({_num(a1 + 0.5)},{_num(b1)});\n"
        )
    if rank == 1:
        buf.write(f"  \\draw ({lo},0) -- ({hi},0);\n")
    for axis, v in lines:
        colour = TIKZ_AXIS_COLOURS[axis]
        if axis == 0:
            y0, y1 = ("-0.5", "0.5") if rank == 1 else (lo, hi)
            buf.write(f"  \\draw[{colour}, thick] ({_num(v)},{y0}) -- ({_num(v)},{y1});\n")
        else:
            buf.write(f"  \\draw[{colour}, thick] ({lo},{_num(v)}) -- ({hi},{_num(v)});\n")
    for alpha in degree_window(rank, window):
        y = 0 if rank == 1 else alpha[1]
        buf.write(f"  \\fill ({alpha[0]},{y}) circle (2pt);\n")
    for a in range(-window, window + 1):
        y = "-0.8" if rank == 1 else _num(-window - 1)
        buf.write(f"  \\node[font=\\tiny] at ({a},{y}) {{{a}}};\n")
    if rank == 2:
        for b in range(-window, window + 1):
            buf.write(f"  \\node[font=\\tiny] at ({_num(-window - 1)},{b}) {{{b}}};\n")
    buf.write("\\end{tikzpicture}\n")
    return buf.getvalue()


def diagram(
    datum: BellRogalskiDatum,
    pt: WeightPoint,
    window: int = DEFAULT_WINDOW,
    result: Optional[Classification] = None,
) -> Diagram:
    result = result if result is not None else classify(datum, pt, window)
    lines = _break_positions(result.breaks, window)
    boxes = _clipped_boxes(result, window)
    table = _table(datum, result)
    if datum.n > 2:
        logger.info("diagram: rank %d, emitting the text table only", datum.n)
        return Diagram(datum.n, window, None, None, table, lines, boxes)
    return Diagram(
        datum.n, window,
        _svg(datum, pt, window, lines, boxes),
        _tikz(datum, pt, window, lines, boxes),
        table, lines, boxes,
    )
