"""
ghcs.core.config
================

Centralized configuration: numerical settings, environment overrides and
logging setup.
"""

import logging
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

logger = logging.getLogger("ghcs.config")

# === SERIES SUMMATION ===
DEFAULT_NMAX = 10_000
STOP_TOLERANCE = 1e-15
STOP_CONSECUTIVE = 2
RADIUS_MARGIN = 1e-6
LOG_DOMAIN_THRESHOLD = 150

# === FOCK EXPANSIONS ===
FOCK_DEFAULT_ORDER = 64
FOCK_TAIL_TOLERANCE = 1e-30
FOCK_MAX_ORDER = 4096

# === VERIFICATION ===
FD_STEP = 1e-4
BLOCH_TOLERANCE = 1e-6
QUADRATURE_NODES = 200

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


@dataclass(frozen=True)
class NumericSettings:
    """Knobs shared by every series evaluation."""

    n_max: int = DEFAULT_NMAX
    stop_tolerance: float = STOP_TOLERANCE
    stop_consecutive: int = STOP_CONSECUTIVE
    radius_margin: float = RADIUS_MARGIN
    log_domain_threshold: int = LOG_DOMAIN_THRESHOLD
    fock_order: int = FOCK_DEFAULT_ORDER
    fock_tail: float = FOCK_TAIL_TOLERANCE
    fock_max_order: int = FOCK_MAX_ORDER
    fd_step: float = FD_STEP


# Global cache for the settings singleton
_SETTINGS_CACHE: Optional[NumericSettings] = None


def _nmax_from_env() -> int:
    raw = os.getenv("GHCS_NMAX")
    if not raw:
        return DEFAULT_NMAX
    try:
        value = int(raw)
    except ValueError:
        logger.warning("GHCS_NMAX=%r is not an integer; using %d", raw, DEFAULT_NMAX)
        return DEFAULT_NMAX
    if value < 1:
        logger.warning("GHCS_NMAX=%d must be positive; using %d", value, DEFAULT_NMAX)
        return DEFAULT_NMAX
    return value


def get_settings() -> NumericSettings:
    """
    Return the process-wide numeric settings.
    Reads GHCS_NMAX once and caches the result.
    """
    global _SETTINGS_CACHE
    if _SETTINGS_CACHE is None:
        _SETTINGS_CACHE = NumericSettings(n_max=_nmax_from_env())
    return _SETTINGS_CACHE


def override_settings(**changes) -> NumericSettings:
    """Replace fields of the cached settings (CLI flags, tests)."""
    global _SETTINGS_CACHE
    _SETTINGS_CACHE = replace(get_settings(), **changes)
    return _SETTINGS_CACHE


def reset_settings() -> None:
    """Drop the cache so the next access re-reads the environment."""
    global _SETTINGS_CACHE
    _SETTINGS_CACHE = None


def default_presets_path() -> Optional[Path]:
    """Registry file named by GHCS_PRESETS, if any."""
    raw = os.getenv("GHCS_PRESETS")
    return Path(raw) if raw else None


def setup_logging(level: Optional[str] = None) -> None:
    """Configure stderr logging for the ``ghcs`` logger tree (idempotent)."""
    root = logging.getLogger("ghcs")
    name = (level or os.getenv("GHCS_LOG_LEVEL") or "WARNING").upper()
    root.setLevel(getattr(logging, name, logging.WARNING))
    if any(getattr(h, "_ghcs_handler", False) for h in root.handlers):
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    handler._ghcs_handler = True
    root.addHandler(handler)
