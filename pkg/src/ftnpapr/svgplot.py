"""Minimal self-contained SVG renderer for CCDF curves.

Log-scaled probability axis against thresholds in dB.  No plotting
dependency: the CSVs are the data contract, these files are a convenience.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .papr import CcdfCurve

__all__ = ["write_ccdf_svg"]

_COLORS = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
    "#bcbd22",
    "#e377c2",
    "#393b79",
    "#637939",
)

_WIDTH, _HEIGHT = 720, 520
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 210, 48, 56


def _curve_points(curve: CcdfCurve, floor: float) -> tuple[np.ndarray, np.ndarray]:
    p_ref = float(curve.meta.get("p_ref", 1.0))
    keep = (curve.gammas > 0) & (curve.probs >= floor)
    x = 10.0 * np.log10(curve.gammas[keep] / p_ref)
    y = np.log10(curve.probs[keep])
    return x, y


def write_ccdf_svg(
    path: str | Path,
    curves: list[tuple[str, CcdfCurve, str]],
    title: str = "Average CCDF",
    floor: float = 1e-4,
    x_label: str = "threshold over nominal power (dB)",
) -> Path:
    """Render (label, curve, 'solid'|'dashed') triples to an SVG file."""
    xs, ys = [], []
    for _, curve, _ in curves:
        x, y = _curve_points(curve, floor)
        if len(x):
            xs.append(x)
            ys.append(y)
    if not xs:
        raise ValueError("no drawable curve points above the probability floor")
    x_min = math.floor(min(float(x.min()) for x in xs))
    x_max = math.ceil(max(float(x.max()) for x in xs))
    if x_max <= x_min:
        x_max = x_min + 1
    y_min = math.floor(math.log10(floor))
    y_max = 0.0

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_T + (y_max - y) / (y_max - y_min) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]

    # gridlines and ticks
    for decade in range(int(y_min), 1):
        y_pix = sy(decade)
        parts.append(
            f'<line x1="{_MARGIN_L}" y1="{y_pix:.1f}" x2="{_MARGIN_L + plot_w}" '
            f'y2="{y_pix:.1f}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{y_pix + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">1e{decade}</text>'
        )
    x_step = max(1, int(round((x_max - x_min) / 8)))
    for x_tick in range(x_min, x_max + 1, x_step):
        x_pix = sx(x_tick)
        parts.append(
            f'<line x1="{x_pix:.1f}" y1="{_MARGIN_T}" x2="{x_pix:.1f}" '
            f'y2="{_MARGIN_T + plot_h}" stroke="#eeeeee" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x_pix:.1f}" y="{_MARGIN_T + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{x_tick}</text>'
        )
    parts.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333333" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{x_label}</text>'
    )
    parts.append(
        f'<text x="20" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {_MARGIN_T + plot_h / 2:.1f})">CCDF</text>'
    )

    # curves and legend
    legend_y = _MARGIN_T + 10
    for idx, (label, curve, style) in enumerate(curves):
        x, y = _curve_points(curve, floor)
        if not len(x):
            continue
        color = _COLORS[idx % len(_COLORS)]
        dash = ' stroke-dasharray="7,4"' if style == "dashed" else ""
        pts = " ".join(f"{sx(float(a)):.2f},{sy(float(b)):.2f}" for a, b in zip(x, y))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.6"{dash}/>'
        )
        lx = _MARGIN_L + plot_w + 12
        parts.append(
            f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 26}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="2"{dash}/>'
        )
        parts.append(
            f'<text x="{lx + 32}" y="{legend_y + 4}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )
        legend_y += 18

    parts.append("</svg>")
    out = Path(path)
    out.write_text("\n".join(parts))
    return out
