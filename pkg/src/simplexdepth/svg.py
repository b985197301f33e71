"""Tiny self-contained SVG charts: polyline series and boxplot groups.

Only what the experiment reports need -- axes with tick labels, line series
with a small legend, dashed horizontal reference lines, and box-and-whisker
groups with optional point markers. Output is deterministic text.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Series", "Box", "line_chart", "box_chart"]

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 62.0, 18.0, 34.0, 46.0


@dataclass(frozen=True)
class Series:
    label: str
    x: tuple
    y: tuple


@dataclass(frozen=True)
class Box:
    """Five-number summary for one boxplot position."""

    label: str
    low: float
    q1: float
    median: float
    q3: float
    high: float


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return []
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _tick_label(v: float) -> str:
    return f"{v:.6g}"


class _Canvas:
    def __init__(self, width: float, height: float, x_range, y_range):
        self.width = width
        self.height = height
        self.x_lo, self.x_hi = x_range
        self.y_lo, self.y_hi = y_range
        if self.x_hi <= self.x_lo:
            self.x_hi = self.x_lo + 1.0
        if self.y_hi <= self.y_lo:
            self.y_hi = self.y_lo + 1.0
        self.parts: list[str] = []

    def px(self, x: float) -> float:
        span = self.width - _MARGIN_L - _MARGIN_R
        return _MARGIN_L + (x - self.x_lo) / (self.x_hi - self.x_lo) * span

    def py(self, y: float) -> float:
        span = self.height - _MARGIN_T - _MARGIN_B
        return self.height - _MARGIN_B - (y - self.y_lo) / (self.y_hi - self.y_lo) * span

    def add(self, element: str) -> None:
        self.parts.append(element)

    def axes(self, title: str, xlabel: str, ylabel: str,
             x_ticks: list[float] | None = None,
             x_tick_labels: list[str] | None = None) -> None:
        x0, x1 = _MARGIN_L, self.width - _MARGIN_R
        y0, y1 = self.height - _MARGIN_B, _MARGIN_T
        self.add(f'<rect x="0" y="0" width="{self.width}" height="{self.height}" '
                 'fill="white"/>')
        self.add(f'<text x="{self.width / 2:.1f}" y="20" text-anchor="middle" '
                 f'font-size="14">{title}</text>')
        self.add(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" '
                 'stroke="black" stroke-width="1"/>')
        self.add(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" '
                 'stroke="black" stroke-width="1"/>')
        if x_ticks is None:
            x_ticks = _nice_ticks(self.x_lo, self.x_hi)
            x_tick_labels = [_tick_label(t) for t in x_ticks]
        for t, lab in zip(x_ticks, x_tick_labels):
            px = self.px(t)
            self.add(f'<line x1="{_fmt(px)}" y1="{y0}" x2="{_fmt(px)}" '
                     f'y2="{y0 + 4}" stroke="black"/>')
            self.add(f'<text x="{_fmt(px)}" y="{y0 + 17}" text-anchor="middle" '
                     f'font-size="11">{lab}</text>')
        for t in _nice_ticks(self.y_lo, self.y_hi):
            py = self.py(t)
            self.add(f'<line x1="{x0 - 4}" y1="{_fmt(py)}" x2="{x0}" '
                     f'y2="{_fmt(py)}" stroke="black"/>')
            self.add(f'<text x="{x0 - 7}" y="{_fmt(py + 3.5)}" text-anchor="end" '
                     f'font-size="11">{_tick_label(t)}</text>')
        self.add(f'<text x="{(x0 + x1) / 2:.1f}" y="{self.height - 10:.1f}" '
                 f'text-anchor="middle" font-size="12">{xlabel}</text>')
        self.add(f'<text x="16" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" '
                 f'font-size="12" transform="rotate(-90 16 {(y0 + y1) / 2:.1f})">'
                 f'{ylabel}</text>')

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width:g}" '
                f'height="{self.height:g}" viewBox="0 0 {self.width:g} '
                f'{self.height:g}">\n{body}\n</svg>\n')


def _pad_range(lo: float, hi: float) -> tuple[float, float]:
    if hi <= lo:
        pad = max(abs(lo), 1.0) * 0.05
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.06
    return lo - pad, hi + pad


def line_chart(series: list[Series], *, title: str, xlabel: str, ylabel: str,
               hlines: list[tuple[str, float]] | None = None,
               width: float = 720, height: float = 460) -> str:
    """Multi-series line chart with optional dashed horizontal reference lines."""
    if not series:
        raise ValueError("need at least one series")
    xs = [v for s in series for v in s.x]
    ys = [v for s in series for v in s.y]
    if hlines:
        ys.extend(v for _, v in hlines)
    canvas = _Canvas(width, height, _pad_range(min(xs), max(xs)),
                     _pad_range(min(ys), max(ys)))
    canvas.axes(title, xlabel, ylabel)
    for i, (label, y) in enumerate(hlines or []):
        color = _PALETTE[i % len(_PALETTE)]
        py = canvas.py(y)
        canvas.add(f'<line x1="{_MARGIN_L}" y1="{_fmt(py)}" '
                   f'x2="{width - _MARGIN_R}" y2="{_fmt(py)}" stroke="{color}" '
                   'stroke-width="1" stroke-dasharray="6 4"/>')
    for i, s in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{_fmt(canvas.px(x))},{_fmt(canvas.py(y))}"
                       for x, y in zip(s.x, s.y))
        canvas.add(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   'stroke-width="1.6"/>')
        ly = _MARGIN_T + 16 + 15 * i
        lx = width - _MARGIN_R - 130
        canvas.add(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="1.6"/>')
        canvas.add(f'<text x="{lx + 27}" y="{ly}" font-size="11">{s.label}</text>')
    return canvas.render()


def box_chart(boxes: list[Box], *, title: str, xlabel: str, ylabel: str,
              markers: list[tuple[int, float, str]] | None = None,
              hlines: list[tuple[int, float]] | None = None,
              width: float = 720, height: float = 460) -> str:
    """Box-and-whisker groups at integer positions.

    ``markers`` are (position, value, label) diamonds; ``hlines`` are
    (position, value) short dashed segments local to one box, for overlaying
    reference values.
    """
    if not boxes:
        raise ValueError("need at least one box")
    ys = [v for b in boxes for v in (b.low, b.q1, b.median, b.q3, b.high)]
    if markers:
        ys.extend(v for _, v, _ in markers)
    if hlines:
        ys.extend(v for _, v in hlines)
    m = len(boxes)
    canvas = _Canvas(width, height, (-0.7, m - 0.3), _pad_range(min(ys), max(ys)))
    canvas.axes(title, xlabel, ylabel, x_ticks=list(range(m)),
                x_tick_labels=[b.label for b in boxes])
    half = min(0.32, 0.4 * (width - _MARGIN_L - _MARGIN_R) / (width * m) * 8)
    for i, b in enumerate(boxes):
        cx = canvas.px(i)
        x_l, x_r = canvas.px(i - half), canvas.px(i + half)
        for lo, hi in ((b.low, b.q1), (b.q3, b.high)):
            canvas.add(f'<line x1="{_fmt(cx)}" y1="{_fmt(canvas.py(lo))}" '
                       f'x2="{_fmt(cx)}" y2="{_fmt(canvas.py(hi))}" stroke="black"/>')
        for v in (b.low, b.high):
            py = canvas.py(v)
            canvas.add(f'<line x1="{_fmt(canvas.px(i - half / 2))}" y1="{_fmt(py)}" '
                       f'x2="{_fmt(canvas.px(i + half / 2))}" y2="{_fmt(py)}" '
                       'stroke="black"/>')
        top, bot = canvas.py(b.q3), canvas.py(b.q1)
        canvas.add(f'<rect x="{_fmt(x_l)}" y="{_fmt(top)}" '
                   f'width="{_fmt(x_r - x_l)}" height="{_fmt(bot - top)}" '
                   f'fill="{_PALETTE[0]}" fill-opacity="0.25" stroke="black"/>')
        py = canvas.py(b.median)
        canvas.add(f'<line x1="{_fmt(x_l)}" y1="{_fmt(py)}" x2="{_fmt(x_r)}" '
                   f'y2="{_fmt(py)}" stroke="black" stroke-width="1.6"/>')
    for pos, v, label in markers or []:
        cx, cy = canvas.px(pos), canvas.py(v)
        canvas.add(f'<path d="M {_fmt(cx)} {_fmt(cy - 5)} L {_fmt(cx + 5)} '
                   f'{_fmt(cy)} L {_fmt(cx)} {_fmt(cy + 5)} L {_fmt(cx - 5)} '
                   f'{_fmt(cy)} Z" fill="{_PALETTE[1]}"/>')
        if label:
            canvas.add(f'<text x="{_fmt(cx + 8)}" y="{_fmt(cy + 4)}" '
                       f'font-size="10">{label}</text>')
    for pos, v in hlines or []:
        py = canvas.py(v)
        canvas.add(f'<line x1="{_fmt(canvas.px(pos - 0.45))}" y1="{_fmt(py)}" '
                   f'x2="{_fmt(canvas.px(pos + 0.45))}" y2="{_fmt(py)}" '
                   f'stroke="{_PALETTE[2]}" stroke-width="1.4" '
                   'stroke-dasharray="5 3"/>')
    return canvas.render()
