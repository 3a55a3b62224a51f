"""
ghcs
====

Generalized hypergeometric coherent states and the canonical density matrix.

Modules:
- series: Pochhammer symbols, structure constants, pFq evaluation, power series.
- states: Energy spectra, coherent-state families, ladder operators, overlaps.
- thermal: Canonical density-matrix elements, partition functions, Husimi functions.
- auditors: Bloch-equation residuals, identity audits, resolution-of-unity checks.
- generators: CSV and SVG report files.
- cli: Command-line front end.

Usage:
    python -m ghcs eval --p 0 --q 0 --x 1
    python -m ghcs omega --preset ho --eps 0.693147 --zz 1
    python -m ghcs verify --suite all
    python -m ghcs scan husimi --preset ho --eps 0.693147 --zsq 0..4:0.5
    python -m ghcs presets list
"""

__version__ = "1.0.0"

# Auto-load environment variables on import
try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    pass  # dotenv is optional for minimal installs
