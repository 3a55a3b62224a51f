"""ghcs generators - deterministic CSV and SVG report files."""
