"""Static SVG bar chart of a score report.

Six limb-group clusters with one bar per axis, plus a dashed reference
line at score 1.0. Bars carry ``data-group``/``data-axis``/``data-score``
attributes so the rendering is scriptable and testable.
"""

from __future__ import annotations

from .formats import atomic_write_text
from .pipeline import ScoreReport
from .pose import AXES

__all__ = ["render_bar_chart", "render_bar_chart_svg"]

_WIDTH, _HEIGHT = 680, 420
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 20, 48, 64
_AXIS_FILL = {"x": "#4878a8", "y": "#e08a3c"}


def _f(v: float) -> str:
    return f"{v:.2f}"


def render_bar_chart_svg(report: ScoreReport) -> str:
    """Build the SVG document for a report."""
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B
    groups = list(report.verdicts.keys())
    vmax = max(1.25, max(report.scores.values())) * 1.1

    def sy(value: float) -> float:
        return _MARGIN_T + plot_h * (1.0 - value / vmax)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<title>normalized limb scores: {report.test_id} vs {report.gold_id}</title>',
        f'<text x="{_WIDTH / 2:.0f}" y="24" text-anchor="middle" font-size="15" '
        f'font-family="sans-serif">{report.test_id} vs {report.gold_id}</text>',
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" '
        f'y2="{_MARGIN_T + plot_h}" stroke="#333"/>',
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T + plot_h}" x2="{_MARGIN_L + plot_w}" '
        f'y2="{_MARGIN_T + plot_h}" stroke="#333"/>',
    ]

    ticks = 5
    for t in range(ticks + 1):
        value = vmax * t / ticks
        y = sy(value)
        parts.append(
            f'<line x1="{_MARGIN_L - 4}" y1="{_f(y)}" x2="{_MARGIN_L}" y2="{_f(y)}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{_f(y + 4)}" text-anchor="end" font-size="11" '
            f'font-family="sans-serif">{value:.2f}</text>'
        )

    cluster_w = plot_w / len(groups)
    bar_w = cluster_w * 0.3
    for gi, group in enumerate(groups):
        cx = _MARGIN_L + cluster_w * (gi + 0.5)
        for ai, axis in enumerate(AXES):
            score = report.scores[(group, axis)]
            x0 = cx + (ai - 1) * bar_w + bar_w * 0.1
            y0 = sy(score)
            parts.append(
                f'<rect class="bar" data-group="{group}" data-axis="{axis}" '
                f'data-score="{score!r}" x="{_f(x0)}" y="{_f(y0)}" '
                f'width="{_f(bar_w * 0.8)}" height="{_f(_MARGIN_T + plot_h - y0)}" '
                f'fill="{_AXIS_FILL[axis]}"/>'
            )
        parts.append(
            f'<text x="{_f(cx)}" y="{_HEIGHT - _MARGIN_B + 18}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{group}</text>'
        )

    y_ref = sy(1.0)
    parts.append(
        f'<line class="reference" data-score="1.0" x1="{_MARGIN_L}" y1="{_f(y_ref)}" '
        f'x2="{_MARGIN_L + plot_w}" y2="{_f(y_ref)}" stroke="#b03030" '
        f'stroke-dasharray="6 4" stroke-width="1.5"/>'
    )

    legend_x = _MARGIN_L + plot_w - 90
    for ai, axis in enumerate(AXES):
        ly = _MARGIN_T + 6 + 18 * ai
        parts.append(
            f'<rect x="{legend_x}" y="{ly}" width="12" height="12" fill="{_AXIS_FILL[axis]}"/>'
        )
        parts.append(
            f'<text x="{legend_x + 18}" y="{ly + 10}" font-size="11" '
            f'font-family="sans-serif">{axis} axis</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_bar_chart(report: ScoreReport, path) -> None:
    """Write the report chart to ``path`` as an SVG file."""
    atomic_write_text(path, render_bar_chart_svg(report))
