"""
ghcs.__main__ — CLI Entry Point
===============================

Enables running ghcs via: ghcs (installed script) or python -m ghcs

Usage:
    ghcs eval --p 0 --q 0 --x 1           # e, exit 0
    ghcs omega --preset ho --eps 0.693147 --zz 1
    ghcs verify --suite all --output-dir out/
    ghcs scan partition --preset ho --eps 0.5..2:0.5
    ghcs presets list
    ghcs --version

Exit codes: 0 pass, 1 tolerance failure, 2 invalid input, 3 numerical failure.
"""

import sys
from typing import Optional, Sequence

# Load environment variables before settings are read
try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    pass  # dotenv is optional for minimal installs

from ghcs.cli.commands import EXIT_INPUT, EXIT_NUMERICAL, run
from ghcs.core.config import setup_logging
from ghcs.core.errors import InvalidParameters, NumericalFailure, UnknownPreset


def _log_level(argv: Sequence[str]) -> Optional[str]:
    for i, arg in enumerate(argv):
        if arg == "--log-level" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--log-level="):
            return arg.split("=", 1)[1]
    return None


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    setup_logging(_log_level(argv))
    try:
        return run(argv)
    except (InvalidParameters, UnknownPreset) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
