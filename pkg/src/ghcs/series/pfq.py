"""
ghcs.series.pfq
===============

Pochhammer symbols, structure constants ρ(n), convergence radii and adaptive
summation of generalized hypergeometric series

    pFq(a; b; x) = Σ_n x^n / ρ_BG(n),   ρ_BG(n) = n! ∏(b_j)_n / ∏(a_i)_n

together with registered closed forms, the coefficient form of the pFq
differential equation and the large-argument ₁F₁ asymptotics.

Usage:
    from ghcs.series.pfq import HypergeometricParams, eval_pfq

    params = HypergeometricParams(p=1, q=1, a=(1.0,), b=(1.5,))
    eval_pfq(params, 1.0).value      # ≈ 2.03007
"""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import erf, erfi, gammaln

from ghcs.core.config import NumericSettings, get_settings
from ghcs.core.errors import InvalidParameters, NotConverged, OutOfRadius, StructureOverflow
from ghcs.core.models import EvalResult
from ghcs.series.power_series import PowerSeries

logger = logging.getLogger("ghcs.pfq")

# log of the largest finite double
LOG_DOUBLE_MAX = math.log(sys.float_info.max)


class Kind(str, Enum):
    """Coherent-state convention for the structure constants."""

    BG = "BG"  # Barut-Girardello: eigenvectors of the lowering operator
    KP = "KP"  # Klauder-Perelomov: exponential raising operator on the vacuum
    GK = "GK"  # Gazeau-Klauder: action-angle labels with phases exp(-iγ e_n)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypergeometricParams:
    """The (p, q) index pair with numerator list a and denominator list b."""

    p: int
    q: int
    a: tuple[float, ...] = ()
    b: tuple[float, ...] = ()

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.p < 0 or self.q < 0:
            raise InvalidParameters(f"p and q must be nonnegative (got p={self.p}, q={self.q})")
        if len(a) != self.p or len(b) != self.q:
            raise InvalidParameters(
                f"expected {self.p} numerator and {self.q} denominator parameters, "
                f"got {len(a)} and {len(b)}"
            )
        for bj in b:
            if _is_nonpositive_integer(bj):
                raise InvalidParameters(f"denominator parameter {bj:g} makes (b)_n vanish")
        if self.p > self.q + 1:
            raise InvalidParameters(
                f"p={self.p} > q+1={self.q + 1}: the series has zero radius of convergence"
            )

    @classmethod
    def of(cls, a: Sequence[float] = (), b: Sequence[float] = ()) -> "HypergeometricParams":
        return cls(p=len(a), q=len(b), a=tuple(a), b=tuple(b))

    def dual(self) -> "HypergeometricParams":
        """Swap a↔b and p↔q (the KP kernel is qFp(b; a; x))."""
        return HypergeometricParams(p=self.q, q=self.p, a=self.b, b=self.a)

    @property
    def terminating_order(self) -> Optional[int]:
        """Polynomial degree when some a_i is a nonpositive integer, else None."""
        orders = [int(-ai) for ai in self.a if _is_nonpositive_integer(ai)]
        return min(orders) if orders else None

    def label(self) -> str:
        fmt = lambda xs: ",".join(f"{v:g}" for v in xs)  # noqa: E731
        return f"{self.p}F{self.q}({fmt(self.a)};{fmt(self.b)})"


# ---------------------------------------------------------------------------
# Pochhammer symbols and structure constants
# ---------------------------------------------------------------------------


def pochhammer(x: float, n: int) -> float:
    """Rising factorial (x)_n = x(x+1)…(x+n−1); (x)_0 = 1."""
    if n < 0:
        raise InvalidParameters("Pochhammer order must be nonnegative")
    return math.prod(x + m for m in range(n)) if n else 1.0


def log_pochhammer(x: float, n: int) -> float:
    """
    log|(x)_n|. Uses log-gamma differences for x > 0, a direct log sum
    otherwise. Returns -inf when the product vanishes.
    """
    if n == 0:
        return 0.0
    if x > 0:
        return float(gammaln(x + n) - gammaln(x))
    factors = np.abs(x + np.arange(n, dtype=float))
    if np.any(factors == 0.0):
        return -math.inf
    return float(np.sum(np.log(factors)))


def _negative_factors(x: float, n: int) -> int:
    # count of m < n with x + m < 0
    return min(n, max(0, math.ceil(-x))) if x < 0 else 0


def pochhammer_shift_check(x: float, n: int) -> tuple[float, float]:
    """
    Relative errors of the shift identities
        (x)_{n+1} = (x+n)(x)_n   and   (x+1)_n = (x)_{n+1} / x.
    """
    lhs1, rhs1 = pochhammer(x, n + 1), (x + n) * pochhammer(x, n)
    lhs2, rhs2 = pochhammer(x + 1, n), pochhammer(x, n + 1) / x
    rel = lambda u, v: abs(u - v) / max(abs(u), abs(v), 1e-300)  # noqa: E731
    return rel(lhs1, rhs1), rel(lhs2, rhs2)


def _pochhammer_ratio_terms(params: HypergeometricParams, kind: Kind):
    if kind == Kind.KP:
        return params.a, params.b  # ρ_KP = n! ∏(a)_n / ∏(b)_n
    return params.b, params.a  # ρ_BG = n! ∏(b)_n / ∏(a)_n


def structure_constant(params: HypergeometricParams, kind: Kind, n: int) -> float:
    """
    ρ(n) for the BG (n!∏(b)_n/∏(a)_n) or KP (n!∏(a)_n/∏(b)_n) convention.

    Returns math.inf when a vanishing Pochhammer sits in the denominator
    (terminating series: the coefficient 1/ρ(n) is zero). When the direct
    product overflows (n! alone does so past n = 170) the value is taken
    from the log domain; StructureOverflow is raised only when ρ(n) itself
    leaves the double range.
    """
    kind = Kind(kind)
    if kind == Kind.GK:
        raise InvalidParameters("GK structure constants depend on the spectrum; use CSFamily.rho")
    if n < 0:
        raise InvalidParameters("n must be nonnegative")
    upper, lower = _pochhammer_ratio_terms(params, kind)
    denominator = math.prod(pochhammer(v, n) for v in lower)
    if denominator == 0.0:
        return math.inf
    try:
        value = float(math.factorial(n))
        for v in upper:
            value *= pochhammer(v, n)
        value /= denominator
    except OverflowError:
        value = math.nan
    if math.isfinite(value) and math.isfinite(denominator):
        return value
    log_value = structure_constant_log(params, kind, n)
    if log_value > LOG_DOUBLE_MAX:
        raise StructureOverflow(n)
    negative = sum(_negative_factors(v, n) for v in (*upper, *lower))
    sign = -1.0 if negative % 2 else 1.0
    return sign * math.exp(log_value)


def structure_constant_log(params: HypergeometricParams, kind: Kind, n: int) -> float:
    """log ρ(n) through log-gamma; safe far beyond the double range of ρ itself."""
    kind = Kind(kind)
    if kind == Kind.GK:
        raise InvalidParameters("GK structure constants depend on the spectrum; use CSFamily.rho")
    upper, lower = _pochhammer_ratio_terms(params, kind)
    log_value = float(gammaln(n + 1))
    log_value += sum(log_pochhammer(v, n) for v in upper)
    log_value -= sum(log_pochhammer(v, n) for v in lower)
    return log_value


def convergence_radius(params: HypergeometricParams) -> float:
    """∞ for p ≤ q (Stieltjes regime), 1 for p = q+1 (Hausdorff regime)."""
    return math.inf if params.p <= params.q else 1.0


# ---------------------------------------------------------------------------
# Series evaluation
# ---------------------------------------------------------------------------


def term_ratio(params: HypergeometricParams, n: int) -> float:
    """c_{n+1}/c_n for c_n = 1/ρ_BG(n), without the factor x."""
    num = math.prod(ai + n for ai in params.a)
    den = (n + 1) * math.prod(bj + n for bj in params.b)
    return num / den


def admissible_limit(radius: float, settings: Optional[NumericSettings] = None) -> float:
    """Largest |x| accepted for a series with the given radius."""
    settings = settings or get_settings()
    return math.inf if math.isinf(radius) else radius * (1.0 - settings.radius_margin)


def check_radius(x: complex, radius: float, settings: Optional[NumericSettings] = None) -> None:
    limit = admissible_limit(radius, settings)
    if abs(x) > limit:
        raise OutOfRadius(x, limit)


def sum_series(
    ratio: Callable[[int], float],
    x: complex,
    radius: float,
    *,
    weight: Optional[Callable[[int], complex]] = None,
    strict: bool = True,
    settings: Optional[NumericSettings] = None,
) -> EvalResult:
    """
    Sum Σ w(n)·t_n with t_0 = 1 and t_{n+1} = t_n · x · ratio(n).

    Stops once |w(n)·t_n| ≤ tol·|partial sum| for ``stop_consecutive`` terms
    in a row, or at an exactly-zero t_n (terminating series). With ``strict``
    the cap raises NotConverged; otherwise the result carries converged=False.
    """
    settings = settings or get_settings()
    base: complex = 1.0
    term: complex = 1.0
    total: complex = weight(0) if weight else 1.0
    quiet = 0
    for n in range(settings.n_max):
        base = base * x * ratio(n)
        if base == 0:
            return EvalResult(total, n + 1, 0.0, True, radius)
        if weight is None:
            term = base
        else:
            w = weight(n + 1)
            term = 0.0 if w == 0 else base * w
        total += term
        if abs(term) <= settings.stop_tolerance * abs(total):
            quiet += 1
            if quiet >= settings.stop_consecutive:
                logger.debug("series converged after %d terms", n + 2)
                return EvalResult(total, n + 2, abs(term), True, radius)
        else:
            quiet = 0
    if strict:
        raise NotConverged(settings.n_max + 1, abs(term), total)
    logger.warning("series cap %d reached (last |term| = %.3e)", settings.n_max, abs(term))
    return EvalResult(total, settings.n_max + 1, abs(term), False, radius)


def eval_pfq(
    params: HypergeometricParams,
    x: complex,
    *,
    strict: bool = True,
    settings: Optional[NumericSettings] = None,
) -> EvalResult:
    """
    Evaluate pFq(a; b; x) by the term recurrence
        t_{n+1} = t_n · x · ∏(a_i+n) / [(n+1) ∏(b_j+n)].

    Raises OutOfRadius when |x| exceeds the radius less the safety margin
    (terminating series are polynomials and skip the check).
    """
    radius = convergence_radius(params)
    if params.terminating_order is None:
        check_radius(x, radius, settings)
    return sum_series(lambda n: term_ratio(params, n), x, radius, strict=strict, settings=settings)


def pfq_series(params: HypergeometricParams, order: int, kind: Kind = Kind.BG) -> PowerSeries:
    """
    Coefficients 1/ρ(n) for n ≤ order built by the term recurrence.
    For KP the series is qFp(b; a; ·).
    """
    source = params.dual() if Kind(kind) == Kind.KP else params
    coeffs = np.empty(order + 1)
    coeffs[0] = 1.0
    for n in range(order):
        coeffs[n + 1] = coeffs[n] * term_ratio(source, n)
    return PowerSeries(coeffs, convergence_radius(source))


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _erf_form(x: float) -> float:
    # 1F1(1; 3/2; x) via Kummer's transformation and erf / erfi
    if x == 0:
        return 1.0
    root = math.sqrt(abs(x))
    if x > 0:
        return math.sqrt(math.pi) * math.exp(x) * float(erf(root)) / (2.0 * root)
    return math.sqrt(math.pi) * math.exp(x) * float(erfi(root)) / (2.0 * root)


def closed_form(params: HypergeometricParams, x: float) -> Optional[float]:
    """
    Registered elementary reductions:
        ₀F₀(;;x) = e^x          ₁F₀(c;;x) = (1−x)^{−c}
        ₁F₁(c;c;x) = e^x        ₁F₁(1;3/2;x) = √π e^x erf(√x)/(2√x)
        ₁F₁(1;2;x) = (e^x − 1)/x
    Returns None when no pattern matches.
    """
    a, b = params.a, params.b
    if params.p == 0 and params.q == 0:
        return math.exp(x)
    if params.p == 1 and params.q == 0:
        if abs(x) >= 1.0:
            raise OutOfRadius(x, 1.0)
        return (1.0 - x) ** (-a[0])
    if params.p == 1 and params.q == 1:
        if a[0] == b[0]:
            return math.exp(x)
        if a[0] == 1.0 and b[0] == 1.5:
            return _erf_form(x)
        if a[0] == 1.0 and b[0] == 2.0:
            return math.expm1(x) / x if x != 0 else 1.0
    return None


# ---------------------------------------------------------------------------
# Differential equation and asymptotics
# ---------------------------------------------------------------------------


def ode_residual_coefficients(params: HypergeometricParams, N: int) -> float:
    """
    Coefficient form of [B̂(θ) − x·Â(θ)] F = 0 with θ = x d/dx:
    max over n ≤ N of |c_{n+1}(n+1)∏(b_j+n) − c_n ∏(a_i+n)|, relative to
    the larger of the two products.
    """
    if N < 1:
        raise InvalidParameters("N must be at least 1")
    c = pfq_series(params, N + 1).coefficients
    worst = 0.0
    for n in range(N + 1):
        lowered = c[n + 1] * (n + 1) * math.prod(bj + n for bj in params.b)
        raised = c[n] * math.prod(ai + n for ai in params.a)
        scale = max(abs(lowered), abs(raised))
        if scale > 0:
            worst = max(worst, abs(lowered - raised) / scale)
    return worst


def log_asymptotic_1f1(a: float, b: float, x: float) -> float:
    """log of Γ(b)/Γ(a) · e^x · x^{a−b}."""
    return float(gammaln(b) - gammaln(a)) + x + (a - b) * math.log(x)


def asymptotic_1f1(a: float, b: float, x: float) -> float:
    """Leading large-x behaviour of ₁F₁(a; b; x); intended for x ≳ 20."""
    return math.exp(log_asymptotic_1f1(a, b, x))
