"""
ghcs.core.errors
================

Exception hierarchy. Input problems and numerical failures are kept apart so
the CLI can map them onto distinct exit codes.
"""

from __future__ import annotations


class GHCSError(Exception):
    """Base class for every error raised by ghcs."""


# ---------------------------------------------------------------------------
# Input errors (exit code 2)
# ---------------------------------------------------------------------------


class InvalidParameters(GHCSError, ValueError):
    """Raised when parameters violate a construction invariant."""


class UnknownPreset(GHCSError, KeyError):
    """Raised when a preset name is not in the registry."""

    def __init__(self, name: str, known: list[str]):
        self.name = name
        self.known = known
        super().__init__(f"Unknown preset '{name}' (known: {', '.join(known)})")

    def __str__(self) -> str:
        return self.args[0]


# ---------------------------------------------------------------------------
# Numerical failures (exit code 3)
# ---------------------------------------------------------------------------


class NumericalFailure(GHCSError):
    """Raised when an evaluation cannot produce a trustworthy number."""


class OutOfRadius(NumericalFailure):
    """Raised when a series argument lies outside the admissible disc."""

    def __init__(self, x: complex, limit: float):
        self.x = x
        self.limit = limit
        super().__init__(f"|x| = {abs(x):.17g} exceeds the admissible radius {limit:.17g}")


class NotConverged(NumericalFailure):
    """Raised when the series cap is reached before the stopping rule holds."""

    def __init__(self, terms: int, last_term: float, partial_sum: complex):
        self.terms = terms
        self.last_term = last_term
        self.partial_sum = partial_sum
        super().__init__(
            f"series not converged after {terms} terms "
            f"(last |term| = {last_term:.3e}, |sum| = {abs(partial_sum):.3e})"
        )


class OutOfSupport(NumericalFailure):
    """Raised when a weight density is queried outside its support."""

    def __init__(self, preset: str, t: float):
        self.preset = preset
        self.t = t
        super().__init__(f"t = {t!r} lies outside the support of weight '{preset}'")


class QuadratureUnderResolved(NumericalFailure):
    """Raised when moment errors do not shrink as the node count doubles."""

    def __init__(self, preset: str, errors: list[float]):
        self.preset = preset
        self.errors = errors
        super().__init__(
            f"quadrature for '{preset}' does not converge under node doubling: "
            + ", ".join(f"{e:.3e}" for e in errors)
        )


class StructureOverflow(NumericalFailure, OverflowError):
    """Raised when ρ(n) leaves the double range; use the log-domain variant."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"structure constant overflows at n = {n}; use structure_constant_log")
