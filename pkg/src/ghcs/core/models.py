"""
ghcs.core.models
================

Shared result structures.
"""

from dataclasses import dataclass, field
from typing import Any, List, Tuple


@dataclass(frozen=True)
class EvalResult:
    """
    Value of a truncated series.
    Used by: pFq evaluation, overlaps, density-matrix elements.
    """

    value: complex
    terms_used: int
    last_term_magnitude: float
    converged: bool
    radius: float  # math.inf for entire series


@dataclass(frozen=True)
class CheckRow:
    """One point of a verification grid."""

    key: Tuple[Any, ...]  # sort key; also the CSV identity columns
    lhs: complex
    rhs: complex
    abs_error: float
    rel_error: float
    measured: float  # the error the verdict was judged on
    passed: bool
    informational: bool = False  # reported, never counted as a failure


@dataclass(frozen=True)
class VerificationReport:
    """Per-point residuals with an overall verdict against a tolerance."""

    name: str
    tolerance: float
    rows: List[CheckRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed or row.informational for row in self.rows)

    @property
    def worst(self) -> float:
        """Largest judged error among the asserted rows (0.0 when empty)."""
        asserted = [row.measured for row in self.rows if not row.informational]
        return max(asserted, default=0.0)

    def sorted(self) -> "VerificationReport":
        return VerificationReport(
            self.name, self.tolerance, sorted(self.rows, key=lambda r: _sortable(r.key))
        )


def relative_error(lhs: complex, rhs: complex) -> float:
    """|lhs − rhs| / max(|lhs|, |rhs|, 1e-300)."""
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def make_row(
    key: Tuple[Any, ...],
    lhs: complex,
    rhs: complex,
    tolerance: float,
    *,
    absolute: bool = False,
    informational: bool = False,
) -> CheckRow:
    """Build a CheckRow judged on the relative (default) or absolute error."""
    abs_error = abs(lhs - rhs)
    rel_error = relative_error(lhs, rhs)
    measured = abs_error if absolute else rel_error
    return CheckRow(
        key=key,
        lhs=lhs,
        rhs=rhs,
        abs_error=abs_error,
        rel_error=rel_error,
        measured=measured,
        passed=measured <= tolerance,
        informational=informational,
    )


def _sortable(key: Tuple[Any, ...]) -> Tuple[Tuple[int, Any], ...]:
    # Mixed str/float keys compare by (type rank, value).
    out = []
    for item in key:
        if isinstance(item, str):
            out.append((1, item))
        elif isinstance(item, complex):
            out.append((0, (item.real, item.imag)))
        else:
            out.append((0, (float(item), 0.0)))
    return tuple(out)
