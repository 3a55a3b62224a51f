import csv
import io
import math

import pytest

from ghcs.core.models import VerificationReport, make_row
from ghcs.generators.report_files import (
    MOMENT_HEADER,
    REPORT_HEADER,
    csv_text,
    format_cell,
    moment_rows,
    render_svg,
    report_rows,
    reports_csv,
    write_text,
)


def test_format_cell():
    assert format_cell(True) == "true"
    assert format_cell(False) == "false"
    assert format_cell(0.1) == "0.10000000000000001"
    assert format_cell(2.0) == "2"
    assert format_cell(math.inf) == "inf"
    assert format_cell(-math.inf) == "-inf"
    assert format_cell(math.nan) == "nan"
    assert format_cell(7) == "7"
    assert format_cell("pho-kp") == "pho-kp"


def test_float_cells_round_trip():
    value = math.exp(0.5)
    assert float(format_cell(value)) == value


def test_csv_uses_unix_line_endings():
    text = csv_text(["a", "b"], [[1.5, "x"], [2.0, "y,z"]])
    assert text == 'a,b\n1.5,x\n2,"y,z"\n'


def test_report_rows_are_sorted_and_labelled():
    report = VerificationReport(
        "bloch:ho",
        1e-6,
        [
            make_row(("ho", 1.0, 0.5 + 0j), 2.0, 2.0, 1e-6),
            make_row(("ho", 0.1, 0.5 + 0j), 1.0, 1.5, 1e-6),
            make_row(("ho", 0.5, 0.5 + 0j), 1.0, 3.0, 1e-6, informational=True),
        ],
    )
    rows = report_rows(report)
    assert [row[-1] for row in rows] == ["fail", "info", "pass"]
    assert rows[0][1] == "ho|0.10000000000000001|0.5+0j"
    parsed = list(csv.reader(io.StringIO(reports_csv([report]))))
    assert parsed[0] == REPORT_HEADER
    assert len(parsed) == 4


def test_moment_rows():
    report = VerificationReport(
        "moments:ho",
        1e-8,
        [make_row(("ho", 1), 1.0, 1.0, 1e-8), make_row(("ho", 0), 1.0, 1.0, 1e-8)],
    )
    rows = moment_rows([report])
    assert [row[:2] for row in rows] == [["ho", 0], ["ho", 1]]
    assert len(rows[0]) == len(MOMENT_HEADER)


def test_svg_is_deterministic():
    xs = [0.0, 0.5, 1.0, 1.5]
    ys = [1.0, 0.8, 0.6, 0.5]
    first = render_svg(xs, ys, "husimi (ho)", "|z|^2", "Q")
    second = render_svg(xs, ys, "husimi (ho)", "|z|^2", "Q")
    assert first == second
    assert first.startswith("<svg ")
    assert first.endswith("</svg>\n")
    assert "<polyline" in first
    assert 'width="640"' in first


def test_svg_escapes_and_flat_series():
    svg = render_svg([1.0], [2.0], "a < b & c")
    assert "a &lt; b &amp; c" in svg


def test_svg_needs_points():
    with pytest.raises(ValueError):
        render_svg([], [], "empty")
    with pytest.raises(ValueError):
        render_svg([1.0, 2.0], [1.0], "mismatch")


def test_write_text(tmp_path):
    target = tmp_path / "out.csv"
    write_text(target, "a\nb\n")
    assert target.read_bytes() == b"a\nb\n"
    buffer = io.StringIO()
    write_text(buffer, "x")
    assert buffer.getvalue() == "x"
