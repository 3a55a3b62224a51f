"""Shared fixtures: fresh numeric settings per test and a CLI runner."""

import os
import subprocess
import sys
from pathlib import Path

import pytest

from ghcs.core.config import reset_settings

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    monkeypatch.delenv("GHCS_NMAX", raising=False)
    monkeypatch.delenv("GHCS_PRESETS", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def run_cli(tmp_path):
    """Run ``python -m ghcs`` in a clean environment; returns the CompletedProcess."""

    def _run(*args, env=None):
        environment = {k: v for k, v in os.environ.items() if not k.startswith("GHCS_")}
        environment["PYTHONPATH"] = str(ROOT / "src")
        environment.update(env or {})
        return subprocess.run(
            [sys.executable, "-m", "ghcs", *args],
            capture_output=True,
            text=True,
            cwd=tmp_path,
            env=environment,
            timeout=300,
        )

    return _run


@pytest.fixture
def golden():
    def _read(name: str) -> str:
        return (GOLDEN / name).read_text(encoding="utf-8")

    return _read
