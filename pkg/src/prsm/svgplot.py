"""Static SVG emission for density plots: a histogram step line with
an optional reference-law curve.  Hand-rolled on purpose; figures are
byte-deterministic artifacts of a run, not an interactive surface, so
a plotting stack would buy nothing."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .laws import HistogramResult, RefLaw, law_pdf

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 56, 16, 28, 40  # margins


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _path(points) -> str:
    return " ".join(
        f"{'M' if i == 0 else 'L'}{_fmt(x)},{_fmt(y)}" for i, (x, y) in enumerate(points)
    )


def density_svg(hist: HistogramResult, law: Optional[RefLaw] = None, title: str = "") -> str:
    """An SVG document: histogram density as a step polyline, the law's
    pdf as a smooth curve when given."""
    edges = np.asarray(hist.bin_edges, dtype=np.float64)
    dens = np.asarray(hist.density, dtype=np.float64)
    x_lo, x_hi = float(edges[0]), float(edges[-1])

    curve_x = curve_y = None
    y_hi = float(dens.max()) if len(dens) else 1.0
    if law is not None:
        curve_x = np.linspace(x_lo, x_hi, 257)
        curve_y = law_pdf(law, curve_x)
        finite = curve_y[np.isfinite(curve_y)]
        if len(finite):
            y_hi = max(y_hi, float(finite.max()))
    if y_hi <= 0.0 or not math.isfinite(y_hi):
        y_hi = 1.0
    y_hi *= 1.05

    pw = _W - _ML - _MR
    ph = _H - _MT - _MB

    def sx(x: float) -> float:
        return _ML + (x - x_lo) / (x_hi - x_lo) * pw

    def sy(y: float) -> float:
        y = min(max(y, 0.0), y_hi)
        return _MT + ph - y / y_hi * ph

    steps = []
    for i in range(len(dens)):
        steps.append((sx(edges[i]), sy(dens[i])))
        steps.append((sx(edges[i + 1]), sy(dens[i])))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<g font-family="monospace" font-size="11" fill="black">',
    ]
    if title:
        parts.append(f'<text x="{_ML}" y="{_MT - 10}">{title}</text>')
    # axes
    parts.append(
        f'<path d="M{_ML},{_MT} L{_ML},{_MT + ph} L{_ML + pw},{_MT + ph}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    # x ticks: lo, 0 (if inside), hi; y ticks: 0, max
    xticks = [x_lo, x_hi] + ([0.0] if x_lo < 0.0 < x_hi else [])
    for xt in sorted(set(xticks)):
        parts.append(
            f'<line x1="{_fmt(sx(xt))}" y1="{_MT + ph}" x2="{_fmt(sx(xt))}" '
            f'y2="{_MT + ph + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(sx(xt))}" y="{_MT + ph + 16}" text-anchor="middle">{_fmt(xt)}</text>'
        )
    for yt in (0.0, y_hi / 1.05):
        parts.append(
            f'<text x="{_ML - 6}" y="{_fmt(sy(yt) + 4)}" text-anchor="end">{_fmt(yt)}</text>'
        )
    parts.append("</g>")
    parts.append(
        f'<path d="{_path(steps)}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>'
    )
    if curve_x is not None:
        pts = [
            (sx(x), sy(y))
            for x, y in zip(curve_x, curve_y)
            if math.isfinite(y)
        ]
        if pts:
            parts.append(
                f'<path d="{_path(pts)}" fill="none" stroke="#c03020" stroke-width="1.5"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_density_svg(path, hist: HistogramResult, law: Optional[RefLaw] = None, title: str = "") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(density_svg(hist, law=law, title=title))
