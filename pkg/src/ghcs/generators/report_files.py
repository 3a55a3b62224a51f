"""
ghcs.generators.report_files
============================

CSV and SVG emission for scans and verification reports.

Output is byte-deterministic: '.' decimal point, no locale, floats with 17
significant digits, '\\n' line endings, fixed SVG geometry.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO, Union
from xml.sax.saxutils import escape

from ghcs.core.models import VerificationReport

SVG_WIDTH = 640
SVG_HEIGHT = 400
SVG_MARGIN = 50

REPORT_HEADER = ["report", "key", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs", "rel", "pass"]
MOMENT_HEADER = ["preset", "n", "quadrature_value", "target", "rel_error"]
OMEGA_HEADER = [
    "preset",
    "eps",
    "z_re",
    "z_im",
    "zp_re",
    "zp_im",
    "value_re",
    "value_im",
    "terms_used",
    "route",
]


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def write_text(target: Union[Path, TextIO], text: str) -> None:
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8", newline="")
    else:
        target.write(text)


def _key_cell(key: tuple) -> str:
    parts = []
    for item in key:
        if isinstance(item, complex):
            parts.append(f"{format_cell(item.real)}{item.imag:+.17g}j")
        else:
            parts.append(format_cell(item))
    return "|".join(parts)


def report_rows(report: VerificationReport) -> list[list[Any]]:
    rows = []
    for row in report.sorted().rows:
        lhs, rhs = complex(row.lhs), complex(row.rhs)
        verdict = "info" if row.informational else ("pass" if row.passed else "fail")
        rows.append(
            [
                report.name,
                _key_cell(row.key),
                lhs.real,
                lhs.imag,
                rhs.real,
                rhs.imag,
                float(row.abs_error),
                float(row.rel_error),
                verdict,
            ]
        )
    return rows


def reports_csv(reports: Iterable[VerificationReport]) -> str:
    rows = []
    for report in reports:
        rows.extend(report_rows(report))
    return csv_text(REPORT_HEADER, rows)


def render_svg(
    xs: Sequence[float],
    ys: Sequence[float],
    title: str,
    x_label: str = "x",
    y_label: str = "y",
) -> str:
    """Minimal line plot: frame, polyline, title and axis extremes."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("plot needs matching, non-empty x and y")
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    inner_w = SVG_WIDTH - 2 * SVG_MARGIN
    inner_h = SVG_HEIGHT - 2 * SVG_MARGIN

    def px(x: float) -> float:
        return SVG_MARGIN + (x - x_lo) / (x_hi - x_lo) * inner_w

    def py(y: float) -> float:
        return SVG_HEIGHT - SVG_MARGIN - (y - y_lo) / (y_hi - y_lo) * inner_h

    points = " ".join(f"{px(x):.3f},{py(y):.3f}" for x, y in zip(xs, ys))
    left, right = SVG_MARGIN, SVG_WIDTH - SVG_MARGIN
    top, bottom = SVG_MARGIN, SVG_HEIGHT - SVG_MARGIN
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{SVG_WIDTH // 2}" y="{SVG_MARGIN // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>',
        f'<text x="{left}" y="{bottom + 18}" font-family="sans-serif" font-size="11">'
        f"{x_lo:.6g}</text>",
        f'<text x="{right}" y="{bottom + 18}" text-anchor="end" font-family="sans-serif" '
        f'font-size="11">{x_hi:.6g}</text>',
        f'<text x="{(left + right) // 2}" y="{bottom + 36}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{escape(x_label)}</text>',
        f'<text x="{left - 6}" y="{bottom}" text-anchor="end" font-family="sans-serif" '
        f'font-size="11">{y_lo:.6g}</text>',
        f'<text x="{left - 6}" y="{top + 4}" text-anchor="end" font-family="sans-serif" '
        f'font-size="11">{y_hi:.6g}</text>',
        f'<text x="{left}" y="{top - 8}" font-family="sans-serif" font-size="12">'
        f"{escape(y_label)}</text>",
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{points}"/>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def moment_rows(reports: Iterable[VerificationReport]) -> list[list[Any]]:
    """Rows of the moment CSV: preset, n, quadrature value, target, relative error."""
    rows = []
    for report in reports:
        for row in report.sorted().rows:
            preset, n = row.key[0], row.key[1]
            value, target = complex(row.lhs).real, complex(row.rhs).real
            rows.append([preset, n, value, target, float(row.rel_error)])
    return rows
