"""Matplotlib figure rendering for report outputs.

The CLI's ``--plot`` flag dispatches on extension: ``.svg`` goes through the
dependency-free writer in :mod:`phasejump.svgplot`, anything else (png, pdf,
...) renders here with the Agg backend.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

import numpy as np  # noqa: E402

from .svgplot import emit_svg_plot  # noqa: E402

__all__ = ["save_plot", "render_plot"]


def save_plot(series, path, *, title: str = "", x_label: str = "",
              y_label: str = "", log_y: bool = False) -> None:
    """Render labeled series to an image file via matplotlib (Agg)."""
    series = list(series)
    if not series:
        raise ValueError("save_plot needs at least one series")
    fig, ax = plt.subplots(figsize=(7.2, 4.8), dpi=120)
    try:
        for s in series:
            ax.plot(s.x, s.y, label=s.label, lw=1.2)
        if log_y:
            ax.set_yscale("log")
        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        if title:
            ax.set_title(title)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path)
    finally:
        plt.close(fig)


def render_plot(series, path, *, title: str = "", x_label: str = "",
                y_label: str = "", prefer_log_y: bool = False) -> None:
    """Write the figure for ``series`` to ``path``, choosing the backend by
    extension (.svg = deterministic polyline SVG, otherwise matplotlib)."""
    series = list(series)
    if Path(path).suffix.lower() == ".svg":
        emit_svg_plot(series, path, title=title, x_label=x_label, y_label=y_label)
        return
    log_y = prefer_log_y and all(
        np.all(np.asarray(s.y, dtype=float) > 0) for s in series
    )
    save_plot(series, path, title=title, x_label=x_label, y_label=y_label,
              log_y=log_y)
