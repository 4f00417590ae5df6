"""Minimal self-contained SVG emission for log-log sweep plots.

Plots are illustrative companions to the CSV output, so this stays a tiny
scatter-plus-line writer instead of pulling in a plotting dependency.
"""

from __future__ import annotations

import math
from typing import Sequence

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 70, 20, 40, 60


def _ticks(lo: float, hi: float) -> list[float]:
    first = math.ceil(lo - 1e-9)
    last = math.floor(hi + 1e-9)
    step = max(1, (last - first) // 6 + 1)
    return [float(t) for t in range(first, last + 1, step)]


def loglog_plot(
    points: Sequence[tuple[float, float]],
    xlabel: str,
    ylabel: str,
    title: str,
    fit: tuple[float, float] | None = None,
) -> str:
    """Render points (and optionally a fitted power law) on log10 axes.

    ``fit`` is (exponent, log_prefactor) in natural logs, as produced by the
    power-law fitter.
    """
    if not points:
        raise ValueError("nothing to plot")
    lx = [math.log10(p[0]) for p in points]
    ly = [math.log10(p[1]) for p in points]
    pad = 0.08
    x0, x1 = min(lx), max(lx)
    y0, y1 = min(ly), max(ly)
    x0, x1 = x0 - pad * (x1 - x0 + 1e-9) - 0.02, x1 + pad * (x1 - x0 + 1e-9) + 0.02
    y0, y1 = y0 - pad * (y1 - y0 + 1e-9) - 0.02, y1 + pad * (y1 - y0 + 1e-9) + 0.02

    def px(v: float) -> float:
        return _ML + (v - x0) / (x1 - x0) * (_W - _ML - _MR)

    def py(v: float) -> float:
        return _H - _MB - (v - y0) / (y1 - y0) * (_H - _MT - _MB)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="monospace" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
    ]
    for t in _ticks(x0, x1):
        out.append(
            f'<line x1="{px(t):.1f}" y1="{_MT}" x2="{px(t):.1f}" y2="{_H - _MB}" '
            'stroke="#ddd"/>'
        )
        out.append(
            f'<text x="{px(t):.1f}" y="{_H - _MB + 18}" text-anchor="middle">1e{t:g}</text>'
        )
    for t in _ticks(y0, y1):
        out.append(
            f'<line x1="{_ML}" y1="{py(t):.1f}" x2="{_W - _MR}" y2="{py(t):.1f}" stroke="#ddd"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{py(t):.1f}" text-anchor="end" dominant-baseline="middle">'
            f"1e{t:g}</text>"
        )
    out.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
        'fill="none" stroke="black"/>'
    )
    if fit is not None:
        exponent, log_pref = fit
        ln10 = math.log(10.0)
        ya = (log_pref + exponent * x0 * ln10) / ln10
        yb = (log_pref + exponent * x1 * ln10) / ln10
        out.append(
            f'<line x1="{px(x0):.1f}" y1="{py(ya):.1f}" x2="{px(x1):.1f}" y2="{py(yb):.1f}" '
            'stroke="#c33" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{_W - _MR - 6}" y="{_MT + 16}" text-anchor="end" fill="#c33">'
            f"slope {exponent:.3f}</text>"
        )
    for vx, vy in zip(lx, ly):
        out.append(f'<circle cx="{px(vx):.1f}" cy="{py(vy):.1f}" r="3.5" fill="#1565c0"/>')
    out.append(
        f'<text x="{_W / 2}" y="{_H - 16}" text-anchor="middle">{xlabel}</text>'
    )
    out.append(
        f'<text x="18" y="{_H / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {_H / 2})">{ylabel}</text>'
    )
    out.append("</svg>")
    return "\n".join(out)
