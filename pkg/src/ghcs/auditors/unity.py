"""
ghcs.auditors.unity
===================

Resolution-of-unity checks. A weight h̃(t), t = |z|², resolves the identity
for a family when its power moments reproduce the structure constants:

    ∫ h̃(t) tⁿ dt = ρ(n)

The angular integral is done analytically, so only the diagonal terms
|n⟩⟨n| are ever formed.

Registered weights (each validated against its Gamma/Beta moment oracle):
    ho         h̃ = e^{−t}                          ρ(n) = n!
    pho-bg(k)  h̃ = t^k e^{−t}/Γ(k+1)               ρ(n) = (k+1)_n
    pho-kp(k)  h̃ = (2k−1)(1−t)^{2k−2} on [0, 1)    ρ(n) = n!/(2k)_n, k > 1/2
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.special import beta, gammaln

from ghcs.core.errors import InvalidParameters, OutOfSupport, QuadratureUnderResolved
from ghcs.core.models import CheckRow, VerificationReport, make_row, relative_error
from ghcs.auditors.quadrature import QuadratureSpec, Scheme, integrate
from ghcs.series.pfq import pochhammer
from ghcs.states.families import CSFamily
from ghcs.thermal.density import ThermalQuery, omega_element, partition_function

logger = logging.getLogger("ghcs.unity")

MOMENT_TOLERANCE = 1e-8
QUADRATURE_FLOOR = 1e-12
# generalized Laguerre rules lose accuracy at several hundred nodes
DOUBLING_START_NODES = 50
WEIGHT_NAMES = ("ho", "pho-bg", "pho-kp")


@dataclass(frozen=True)
class WeightPreset:
    """An elementary weight h̃(t) with its support [0, R_c) and target moments."""

    name: str
    k: float = 0.0

    def __post_init__(self):
        if self.name not in WEIGHT_NAMES:
            raise InvalidParameters(
                f"no weight registered for '{self.name}' (known: {', '.join(WEIGHT_NAMES)})"
            )
        if self.name == "pho-bg" and not self.k > 0:
            raise InvalidParameters(f"pho-bg weight needs k > 0 (got {self.k:g})")
        if self.name == "pho-kp" and not self.k > 0.5:
            raise InvalidParameters(
                f"pho-kp weight (2k−1)(1−t)^(2k−2) is not integrable for k = {self.k:g}; "
                "need k > 1/2"
            )
        self.validate()

    @property
    def support(self) -> float:
        return 1.0 if self.name == "pho-kp" else math.inf

    @property
    def scheme(self) -> Scheme:
        return Scheme.FINITE if self.name == "pho-kp" else Scheme.SEMI_INFINITE

    @property
    def alpha(self) -> float:
        """Endpoint exponent carried by the Gauss rule."""
        return {"ho": 0.0, "pho-bg": self.k, "pho-kp": 2.0 * self.k - 2.0}[self.name]

    @property
    def normalization(self) -> float:
        """Constant left after the rule's own weight is factored out."""
        if self.name == "pho-bg":
            return math.exp(-math.lgamma(self.k + 1.0))
        if self.name == "pho-kp":
            return 2.0 * self.k - 1.0
        return 1.0

    def density(self, t: float) -> float:
        if self.name == "ho":
            return math.exp(-t)
        if self.name == "pho-bg":
            return math.exp(self.k * math.log(t) - t - math.lgamma(self.k + 1.0)) if t > 0 else 0.0
        exponent = 2.0 * self.k - 2.0
        return (2.0 * self.k - 1.0) * (1.0 - t) ** exponent

    def target_moment(self, n: int) -> float:
        """ρ(n) the weight must reproduce."""
        if self.name == "ho":
            return float(math.factorial(n))
        if self.name == "pho-bg":
            return pochhammer(self.k + 1.0, n)
        return math.factorial(n) / pochhammer(2.0 * self.k, n)

    def oracle_moment(self, n: int) -> float:
        """∫ h̃ tⁿ dt from the Gamma or Beta integral."""
        if self.name == "ho":
            return math.exp(gammaln(n + 1))
        if self.name == "pho-bg":
            return math.exp(gammaln(n + self.k + 1.0) - gammaln(self.k + 1.0))
        return (2.0 * self.k - 1.0) * float(beta(n + 1.0, 2.0 * self.k - 1.0))

    def validate(self, n_max: int = 10, tolerance: float = 1e-12) -> None:
        for n in range(n_max + 1):
            error = relative_error(self.target_moment(n), self.oracle_moment(n))
            if error > tolerance:
                raise InvalidParameters(
                    f"weight '{self.name}' fails its moment oracle at n={n} (rel {error:.3e})"
                )


def weight_density(preset: WeightPreset, t: float) -> float:
    """h̃(t); raises OutOfSupport outside [0, R_c)."""
    if not (0.0 <= t < preset.support):
        raise OutOfSupport(preset.name, t)
    return preset.density(t)


def _check_scheme(preset: WeightPreset, quad: QuadratureSpec) -> None:
    if quad.scheme != preset.scheme:
        raise InvalidParameters(
            f"weight '{preset.name}' lives on a {preset.scheme.value} support, "
            f"not {quad.scheme.value}"
        )


def quadrature_moment(preset: WeightPreset, n: int, quad: QuadratureSpec) -> float:
    """Gauss-rule value of ∫ h̃(t) tⁿ dt."""
    _check_scheme(preset, quad)
    return preset.normalization * integrate(quad, lambda t: t**n, preset.alpha)


def _moment_rows(preset: WeightPreset, n_max: int, quad: QuadratureSpec, tolerance: float):
    return [
        make_row(
            (preset.name, n), quadrature_moment(preset, n, quad), preset.target_moment(n), tolerance
        )
        for n in range(n_max + 1)
    ]


def node_doubling_errors(
    preset: WeightPreset, n_max: int, quad: QuadratureSpec, doublings: int = 2
) -> List[float]:
    """Worst moment error for node counts N, 2N, ..., 2^doublings·N."""
    errors = []
    for _ in range(doublings + 1):
        errors.append(max(row.rel_error for row in _moment_rows(preset, n_max, quad, 1.0)))
        quad = quad.doubled()
    return errors


def node_doubling_check(
    preset: WeightPreset,
    n_max: int,
    quad: Optional[QuadratureSpec] = None,
    tolerance: float = MOMENT_TOLERANCE,
    doublings: int = 2,
    name: Optional[str] = None,
) -> VerificationReport:
    """node_doubling_errors as a report: one row per node count, each within tolerance."""
    quad = quad or QuadratureSpec(DOUBLING_START_NODES, preset.scheme)
    errors = node_doubling_errors(preset, n_max, quad, doublings)
    rows = [
        make_row((preset.name, quad.node_count * 2**i), error, 0.0, tolerance, absolute=True)
        for i, error in enumerate(errors)
    ]
    return VerificationReport(name or f"doubling:{preset.name}", tolerance, rows)


def moment_check(
    preset: WeightPreset,
    n_max: int,
    quad: Optional[QuadratureSpec] = None,
    tolerance: float = MOMENT_TOLERANCE,
    name: Optional[str] = None,
) -> VerificationReport:
    """
    Per-n relative error of the quadrature moments against ρ(n).

    When the rule misses the tolerance, one doubling of the node count must
    at least halve the worst error, otherwise QuadratureUnderResolved.
    """
    quad = quad or QuadratureSpec(scheme=preset.scheme)
    rows = _moment_rows(preset, n_max, quad, tolerance)
    report = VerificationReport(name or f"moments:{preset.name}", tolerance, rows)
    if not report.passed:
        errors = node_doubling_errors(preset, n_max, quad, doublings=1)
        logger.debug("moment errors under doubling for %s: %s", preset.name, errors)
        if errors[0] > QUADRATURE_FLOOR and errors[1] > errors[0] / 2.0:
            raise QuadratureUnderResolved(preset.name, errors)
    return report


def _check_match(family: CSFamily, preset: WeightPreset, upto: int = 5) -> None:
    for n in range(upto + 1):
        if relative_error(family.rho(n), preset.target_moment(n)) > 1e-12:
            raise InvalidParameters(
                f"weight '{preset.name}' does not match family {family.label} at n={n}"
            )


def unity_reconstruction_check(
    family: CSFamily,
    preset: WeightPreset,
    N: int,
    quad: Optional[QuadratureSpec] = None,
    tolerance: float = MOMENT_TOLERANCE,
    name: Optional[str] = None,
) -> VerificationReport:
    """
    Diagonal of ∫ d²z/π h̃(|z|²)|z)(z| = Σ|n⟩⟨n|: the entry for |n⟩⟨n| is
    ∫ h̃ tⁿ dt / ρ(n), which must be 1. Off-diagonal terms vanish by the
    angular integral and are not formed.
    """
    quad = quad or QuadratureSpec(scheme=preset.scheme)
    _check_match(family, preset)
    rows = [
        make_row(
            (family.label, n, n), quadrature_moment(preset, n, quad) / family.rho(n), 1.0, tolerance
        )
        for n in range(N + 1)
    ]
    return VerificationReport(name or f"unity:{family.label}", tolerance, rows)


def trace_check(
    family: CSFamily,
    preset: WeightPreset,
    eps: float,
    quad: Optional[QuadratureSpec] = None,
    tolerance: float = 1e-6,
) -> CheckRow:
    """Tr Ω(ε) = ∫ h̃(t)·((z|Ω(ε)|z)) dt with t = |z|², against Z(ε)."""
    quad = quad or QuadratureSpec(scheme=preset.scheme)
    _check_match(family, preset)

    def diagonal(nodes: np.ndarray) -> np.ndarray:
        return np.array(
            [
                omega_element(family, ThermalQuery(eps, math.sqrt(t), math.sqrt(t))).value.real
                for t in nodes
            ]
        )

    trace = preset.normalization * integrate(quad, diagonal, preset.alpha)
    return make_row((family.label, eps), trace, partition_function(family.spectrum, eps), tolerance)
