"""Deterministic SVG box plots.

Each variable gets a fixed 200x400 panel laid out left to right; all
panels share one linear value scale spanning the extremes (whiskers and
outliers included) of every summary, so side-by-side panels are directly
comparable.  Mild outliers are open circles, extreme outliers filled.
Output depends only on the input summaries: coordinates are formatted
with three decimals and elements are emitted in a fixed order, so
identical input yields byte-identical SVG.
"""

from __future__ import annotations

from .errors import EmptyInputError
from .stats import BoxSummary

PANEL_W = 200
PANEL_H = 400
BAND_TOP = 20
BAND_BOTTOM = 380

_BOX_HALF = 40  # box spans center +- 40
_CAP_HALF = 20  # whisker caps span center +- 20
_GLYPH_R = 4


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _extent(summaries) -> tuple[float, float]:
    lo = min(
        min(b.q1, b.whiskers[0], *b.outliers) if b.outliers else min(b.q1, b.whiskers[0])
        for _, b in summaries
    )
    hi = max(
        max(b.q3, b.whiskers[1], *b.outliers) if b.outliers else max(b.q3, b.whiskers[1])
        for _, b in summaries
    )
    return lo, hi


def emit_boxplot_svg(summaries) -> bytes:
    """Render (name, BoxSummary) pairs as one standalone SVG document."""
    summaries = list(summaries)
    if not summaries:
        raise EmptyInputError("box plot summaries")
    for name, box in summaries:
        if not isinstance(box, BoxSummary):
            raise TypeError(f"expected BoxSummary for {name!r}, got {type(box).__name__}")

    vmin, vmax = _extent(summaries)
    span = vmax - vmin

    def scale(v: float) -> float:
        if span == 0.0:
            return (BAND_TOP + BAND_BOTTOM) / 2.0
        return BAND_TOP + (vmax - v) * (BAND_BOTTOM - BAND_TOP) / span

    width = PANEL_W * len(summaries)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" '
        f'viewBox="0 0 {width} {PANEL_H}">',
        '<g stroke="black" fill="none" stroke-width="1">',
    ]
    for i, (name, box) in enumerate(summaries):
        cx = i * PANEL_W + PANEL_W / 2
        x_box_l, x_box_r = cx - _BOX_HALF, cx + _BOX_HALF
        x_cap_l, x_cap_r = cx - _CAP_HALF, cx + _CAP_HALF
        y_q1, y_med, y_q3 = scale(box.q1), scale(box.median), scale(box.q3)
        y_wlo, y_whi = scale(box.whiskers[0]), scale(box.whiskers[1])
        lines.append(f'<g data-variable="{_escape(name)}">')
        # whisker stems (vertical) and caps (horizontal)
        lines.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(y_q3)}" x2="{_fmt(cx)}" y2="{_fmt(y_whi)}"/>'
        )
        lines.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(y_q1)}" x2="{_fmt(cx)}" y2="{_fmt(y_wlo)}"/>'
        )
        lines.append(
            f'<line x1="{_fmt(x_cap_l)}" y1="{_fmt(y_whi)}" x2="{_fmt(x_cap_r)}" y2="{_fmt(y_whi)}"/>'
        )
        lines.append(
            f'<line x1="{_fmt(x_cap_l)}" y1="{_fmt(y_wlo)}" x2="{_fmt(x_cap_r)}" y2="{_fmt(y_wlo)}"/>'
        )
        # box and median
        lines.append(
            f'<rect x="{_fmt(x_box_l)}" y="{_fmt(y_q3)}" width="{_fmt(2 * _BOX_HALF)}" '
            f'height="{_fmt(y_q1 - y_q3)}"/>'
        )
        lines.append(
            f'<line x1="{_fmt(x_box_l)}" y1="{_fmt(y_med)}" x2="{_fmt(x_box_r)}" y2="{_fmt(y_med)}"/>'
        )
        # outlier glyphs: open circles mild, filled circles extreme
        extreme = set(box.extreme_outliers)
        for v in box.outliers:
            fill = ' fill="black"' if v in extreme else ""
            lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(scale(v))}" r="{_GLYPH_R}"{fill}/>')
        lines.append("</g>")
    lines.append("</g>")
    for i, (name, _) in enumerate(summaries):
        cx = i * PANEL_W + PANEL_W / 2
        lines.append(
            f'<text x="{_fmt(cx)}" y="394" font-size="12" font-family="sans-serif" '
            f'fill="black" text-anchor="middle">{_escape(name)}</text>'
        )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )
