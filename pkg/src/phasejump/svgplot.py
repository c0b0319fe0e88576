"""Standalone SVG line charts with no plotting dependency.

Produces a fixed-size chart with linear axes, tick labels, a legend, and one
``<polyline>`` element per series.  Output is deterministic text, so the same
series always serialize to the same bytes; useful where raster backends or
font stacks would break reproducibility.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .output import Series

__all__ = ["emit_svg_plot"]

WIDTH = 720
HEIGHT = 480
MARGIN_LEFT = 76
MARGIN_RIGHT = 150
MARGIN_TOP = 40
MARGIN_BOTTOM = 56
N_TICKS = 5
PAD_FRACTION = 0.05

# matplotlib tab10 cycle; familiar colors, stable order.
COLORS = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _check_series(series: list[Series]) -> None:
    if not series:
        raise ValueError("emit_svg_plot needs at least one series")
    for s in series:
        x = np.asarray(s.x, dtype=float)
        y = np.asarray(s.y, dtype=float)
        if x.size == 0:
            raise ValueError(f"series {s.label!r} is empty")
        if x.shape != y.shape:
            raise ValueError(
                f"series {s.label!r} has mismatched lengths {x.size} vs {y.size}"
            )
        for name, arr in (("x", x), ("y", y)):
            bad = np.flatnonzero(~np.isfinite(arr))
            if bad.size:
                raise ValueError(
                    f"series {s.label!r} has non-finite {name} at index {bad[0]}"
                )


def _padded_range(lo: float, hi: float) -> tuple[float, float]:
    span = hi - lo
    if span == 0.0:
        pad = max(abs(lo), 1.0) * PAD_FRACTION
    else:
        pad = span * PAD_FRACTION
    return lo - pad, hi + pad


def _tick_label(value: float) -> str:
    out = f"{value:.4g}"
    return "0" if out == "-0" else out


def emit_svg_plot(series, path, *, title: str = "",
                  x_label: str = "", y_label: str = "") -> None:
    """Write a line chart of the given series to ``path`` as standalone SVG.

    Axis ranges are the data ranges padded by 5%.  Series must be nonempty,
    equal-length, and finite; violations raise ValueError naming the series
    and first offending index.
    """
    series = list(series)
    _check_series(series)

    x_lo = min(float(np.min(s.x)) for s in series)
    x_hi = max(float(np.max(s.x)) for s in series)
    y_lo = min(float(np.min(s.y)) for s in series)
    y_hi = max(float(np.max(s.y)) for s in series)
    x0, x1 = _padded_range(x_lo, x_hi)
    y0, y1 = _padded_range(y_lo, y_hi)

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w

    def py(y: float) -> float:
        return HEIGHT - MARGIN_BOTTOM - (y - y0) / (y1 - y0) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#333333" stroke-width="1"/>',
    ]

    font = 'font-family="sans-serif" font-size="12"'
    for i in range(N_TICKS):
        frac = i / (N_TICKS - 1)
        xv = x0 + frac * (x1 - x0)
        yv = y0 + frac * (y1 - y0)
        xp = px(xv)
        yp = py(yv)
        out.append(
            f'<line x1="{xp:.2f}" y1="{HEIGHT - MARGIN_BOTTOM}" x2="{xp:.2f}" '
            f'y2="{HEIGHT - MARGIN_BOTTOM + 5}" stroke="#333333"/>'
        )
        out.append(
            f'<text x="{xp:.2f}" y="{HEIGHT - MARGIN_BOTTOM + 18}" {font} '
            f'text-anchor="middle">{_tick_label(xv)}</text>'
        )
        out.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{yp:.2f}" x2="{MARGIN_LEFT}" '
            f'y2="{yp:.2f}" stroke="#333333"/>'
        )
        out.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{yp + 4:.2f}" {font} '
            f'text-anchor="end">{_tick_label(yv)}</text>'
        )

    if title:
        out.append(
            f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{MARGIN_TOP - 14}" '
            f'{font} font-size="14" text-anchor="middle">{title}</text>'
        )
    if x_label:
        out.append(
            f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 14}" '
            f'{font} text-anchor="middle">{x_label}</text>'
        )
    if y_label:
        yc = MARGIN_TOP + plot_h / 2
        out.append(
            f'<text x="20" y="{yc:.2f}" {font} text-anchor="middle" '
            f'transform="rotate(-90 20 {yc:.2f})">{y_label}</text>'
        )

    for i, s in enumerate(series):
        color = COLORS[i % len(COLORS)]
        points = " ".join(
            f"{px(float(xi)):.2f},{py(float(yi)):.2f}"
            for xi, yi in zip(np.asarray(s.x, float), np.asarray(s.y, float))
        )
        out.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )

    legend_x = WIDTH - MARGIN_RIGHT + 12
    for i, s in enumerate(series):
        color = COLORS[i % len(COLORS)]
        ly = MARGIN_TOP + 14 + 18 * i
        out.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 22}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{legend_x + 28}" y="{ly + 4}" {font}>{s.label}</text>'
        )

    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
