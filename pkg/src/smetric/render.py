"""File emission: delimited point clouds, scatter SVG, and PNG figures.

CSV and SVG writers are byte-deterministic: identical inputs produce
identical files (floats are rendered with ``repr``, iteration orders are
fixed, and no timestamps or environment data are embedded).  The SVG is a
standalone 1.1 document whose viewBox is the data window itself (with the
y axis flipped), so coordinates in the file are plain data coordinates.

PNG rendering goes through matplotlib and is meant for human inspection of
the same clouds the CSV/SVG carry.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

from .spaces import Point

Cloud = tuple[str, Sequence[Point]]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def emit_csv(
    points: Sequence[Point],
    residuals: Sequence[float],
    path,
    dimension: int | None = None,
) -> None:
    """Write one row per point: ``x1[,x2],residual`` in the given order."""
    if len(points) != len(residuals):
        raise ValueError("points and residuals must have equal length")
    if dimension is None:
        dimension = len(points[0]) if points else 1
    header = ",".join(f"x{i}" for i in range(1, dimension + 1)) + ",residual"
    lines = [header]
    for p, res in zip(points, residuals):
        lines.append(",".join(repr(c) for c in p) + f",{res!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _padded_box(window) -> tuple[float, float, float, float]:
    axes = [(float(lo), float(hi)) for lo, hi in window]
    if len(axes) == 1:
        # render 1D clouds on a number line with a synthetic vertical extent
        (x_lo, x_hi) = axes[0]
        span = (x_hi - x_lo) / 8.0
        axes = [axes[0], (-span, span)]
    (x_lo, x_hi), (y_lo, y_hi) = axes
    return x_lo, x_hi, y_lo, y_hi


def _cloud_xy(points: Sequence[Point]) -> list[tuple[float, float]]:
    return [(p[0], p[1] if len(p) > 1 else 0.0) for p in points]


def emit_svg(
    clouds: Sequence[Cloud],
    window,
    path,
    point_size: float | None = None,
    title: str | None = None,
) -> None:
    """Scatter the labeled clouds into a standalone SVG 1.1 document."""
    x_lo, x_hi, y_lo, y_hi = _padded_box(window)
    w = x_hi - x_lo
    h = y_hi - y_lo
    if not (w > 0 and h > 0 and math.isfinite(w) and math.isfinite(h)):
        raise ValueError("window must have positive finite extent")
    pad_x, pad_y = 0.08 * w, 0.08 * h
    vb_x, vb_y = x_lo - pad_x, -(y_hi + pad_y)
    vb_w, vb_h = w + 2 * pad_x, h + 2 * pad_y
    radius = point_size if point_size is not None else min(w, h) / 240.0
    stroke = min(w, h) / 400.0
    font = vb_h / 24.0

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="480" '
        f'height="{480.0 * vb_h / vb_w!r}" '
        f'viewBox="{vb_x!r} {vb_y!r} {vb_w!r} {vb_h!r}">',
        f'<rect x="{x_lo!r}" y="{-y_hi!r}" width="{w!r}" height="{h!r}" '
        f'fill="white" stroke="#444444" stroke-width="{stroke!r}"/>',
    ]
    if x_lo < 0.0 < x_hi:
        lines.append(
            f'<line x1="0" y1="{-y_hi!r}" x2="0" y2="{-y_lo!r}" '
            f'stroke="#bbbbbb" stroke-width="{stroke!r}"/>'
        )
    if y_lo < 0.0 < y_hi:
        lines.append(
            f'<line x1="{x_lo!r}" y1="0" x2="{x_hi!r}" y2="0" '
            f'stroke="#bbbbbb" stroke-width="{stroke!r}"/>'
        )
    for idx, (label, points) in enumerate(clouds):
        color = _PALETTE[idx % len(_PALETTE)]
        lines.append(f'<g fill="{color}" stroke="none">')
        for x, y in _cloud_xy(points):
            lines.append(f'<circle cx="{x!r}" cy="{-y!r}" r="{radius!r}"/>')
        lines.append("</g>")
        if label:
            lines.append(
                f'<text x="{x_lo + pad_x / 2.0!r}" y="{-(y_hi - (idx + 1) * font)!r}" '
                f'font-size="{font!r}" font-family="sans-serif" fill="{color}">{label}</text>'
            )
    if title:
        lines.append(
            f'<text x="{x_lo + w / 2.0!r}" y="{-(y_hi + pad_y / 2.0)!r}" '
            f'font-size="{font!r}" font-family="sans-serif" fill="#222222" '
            f'text-anchor="middle">{title}</text>'
        )
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_png(
    clouds: Sequence[Cloud],
    window,
    path,
    title: str | None = None,
) -> None:
    """Render the same clouds with matplotlib for quick visual checks."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x_lo, x_hi, y_lo, y_hi = _padded_box(window)
    fig, ax = plt.subplots(figsize=(6.0, 6.0 * (y_hi - y_lo) / (x_hi - x_lo)))
    for idx, (label, points) in enumerate(clouds):
        xy = _cloud_xy(points)
        ax.scatter(
            [p[0] for p in xy],
            [p[1] for p in xy],
            s=4,
            color=_PALETTE[idx % len(_PALETTE)],
            label=label or None,
        )
    ax.set_xlim(x_lo, x_hi)
    ax.set_ylim(y_lo, y_hi)
    ax.set_aspect("equal", adjustable="box")
    ax.grid(alpha=0.3)
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    if title:
        ax.set_title(title)
    if any(label for label, _ in clouds):
        ax.legend(loc="upper right", fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
