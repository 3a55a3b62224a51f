"""
ghcs.thermal.density
====================

Canonical density-matrix elements ((z|Ω(ε)|z')) = Σ e^{−ε·level(n)}(z*z')^n/ρ(n)
in the coherent-state representation, with ε = βħω throughout.

Also: partition functions, mean energy, Husimi functions, normalized
elements and the large-argument asymptotics of linear-spectrum elements.

Usage:
    from ghcs.states.families import harmonic_oscillator
    from ghcs.thermal.density import ThermalQuery, omega_element

    q = ThermalQuery(eps=math.log(2), z=1.0, zp=1.0)
    omega_element(harmonic_oscillator(), q).value    # e^{0.5}
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ghcs.core.config import get_settings
from ghcs.core.errors import InvalidParameters, NotConverged
from ghcs.series.pfq import Kind, closed_form
from ghcs.states.families import CSFamily, GKLabel, Label, harmonic_oscillator
from ghcs.states.spectra import EnergySpectrum, GKScaled, Linear

logger = logging.getLogger("ghcs.thermal")

ASYMPTOTIC_TOLERANCE = 0.03


class Route(str, Enum):
    DEFINITION = "definition-series"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class ThermalQuery:
    """Dimensionless inverse temperature ε and the bra/ket labels."""

    eps: float
    z: Label
    zp: Label

    def __post_init__(self):
        if not (self.eps >= 0 and math.isfinite(self.eps)):
            raise InvalidParameters(f"eps must be finite and nonnegative (got {self.eps!r})")

    def swapped(self) -> "ThermalQuery":
        return ThermalQuery(self.eps, self.zp, self.z)


@dataclass(frozen=True)
class OmegaResult:
    value: complex
    route: Route
    terms_used: int


def _linear_offset(spectrum: EnergySpectrum) -> Optional[float]:
    # level(n) = n + offset for these variants
    if isinstance(spectrum, Linear):
        return spectrum.e0
    if isinstance(spectrum, GKScaled):
        return spectrum.k
    return None


def omega_element(
    family: CSFamily, q: ThermalQuery, route: Route = Route.DEFINITION
) -> OmegaResult:
    """
    Non-normalized element ((z|Ω(ε)|z')).

    The definition series is summed in the rescaled variable e^{−ε}x with
    per-term weight e^{−ε(level(n) − n)}, so Hausdorff families only need
    |e^{−ε}x| inside the radius. For linear spectra this weight is the
    constant e^{−ε·e0} and the sum is the kernel at e^{−ε}x. The closed-form
    route applies a registered elementary reduction of that kernel.
    """
    eps = q.eps
    x, phase = family.pair_argument(q.z, q.zp)
    spectrum = family.spectrum
    if Route(route) == Route.CLOSED_FORM:
        offset = _linear_offset(spectrum)
        reduced = None
        if offset is not None and phase is None and complex(x).imag == 0:
            scaled = math.exp(-eps) * complex(x).real * family.argument_scale
            reduced = closed_form(family.kernel_params, scaled)
        if reduced is None:
            raise InvalidParameters(f"no closed form registered for {family.label}")
        return OmegaResult(complex(math.exp(-eps * offset) * reduced), Route.CLOSED_FORM, 0)

    def weight(n: int) -> complex:
        w = math.exp(-eps * (spectrum.level(n) - n))
        return w * phase(n) if phase is not None else w

    result = family.kernel_sum(math.exp(-eps) * x, weight)
    logger.debug("omega %s eps=%g x=%s: %d terms", family.label, eps, x, result.terms_used)
    return OmegaResult(complex(result.value), Route.DEFINITION, result.terms_used)


def omega_boundary(family: CSFamily, z: Label, zp: Label) -> complex:
    """The β → 0 limit Ω(0) = 1, i.e. the overlap kernel ((z|z'))."""
    return family.pair_sum(z, zp).value


def partition_function(
    spectrum: EnergySpectrum, eps: float, n_max: Optional[int] = None
) -> float:
    """
    Z = Σ_{n=0}^{n_max} e^{−ε·level(n)}.

    Raises NotConverged when the term at n_max still exceeds the stopping
    tolerance relative to the sum.
    """
    if not eps > 0:
        raise InvalidParameters(f"partition function needs eps > 0 (got {eps!r})")
    settings = get_settings()
    n_max = settings.n_max if n_max is None else n_max
    levels = np.array([spectrum.level(m) for m in range(n_max + 1)], dtype=float)
    terms = np.exp(-eps * levels)
    total = math.fsum(terms)
    if terms[-1] > settings.stop_tolerance * total:
        raise NotConverged(n_max + 1, float(terms[-1]), total)
    return total


def partition_closed_form(spectrum: EnergySpectrum, eps: float) -> Optional[float]:
    """Geometric sum e^{−ε·offset}/(1 − e^{−ε}) for linear spectra, else None."""
    offset = _linear_offset(spectrum)
    if offset is None:
        return None
    return math.exp(-eps * offset) / -math.expm1(-eps)


def mean_energy(spectrum: EnergySpectrum, eps: float, n_max: Optional[int] = None) -> float:
    """⟨E⟩/ħω = −∂ ln Z/∂ε = Σ level(n)e^{−ε level(n)} / Z."""
    if not eps > 0:
        raise InvalidParameters(f"mean energy needs eps > 0 (got {eps!r})")
    n_max = get_settings().n_max if n_max is None else n_max
    levels = np.array([spectrum.level(m) for m in range(n_max + 1)], dtype=float)
    weights = np.exp(-eps * (levels - levels.min()))
    return float(np.dot(levels, weights) / np.sum(weights))


def husimi_q(family: CSFamily, eps: float, zsq: float, normalized: bool = False) -> float:
    """
    Diagonal element ((z|Ω|z)) divided by ((z|z)); ``normalized`` further
    divides by Z(ε).
    """
    if zsq < 0:
        raise InvalidParameters("|z|² must be nonnegative")
    label = GKLabel(zsq) if family.kind == Kind.GK else complex(math.sqrt(zsq))
    family.check_label(label)
    numerator = omega_element(family, ThermalQuery(eps, label, label)).value.real
    denominator = family.pair_sum(label, label).value.real
    value = numerator / denominator
    if normalized:
        value /= partition_function(family.spectrum, eps)
    return value


def normalized_element(family: CSFamily, q: ThermalQuery, zero_point: bool = False) -> complex:
    """
    Ω element divided by √kernel(|z|²)·√kernel(|z'|²). With ``zero_point``
    the e^{−ε/2} ground-state prefactor of the oscillator is applied on top.
    """
    family.check_label(q.z)
    family.check_label(q.zp)
    omega = omega_element(family, q).value
    bra = family.pair_sum(q.z, q.z).value.real
    ket = family.pair_sum(q.zp, q.zp).value.real
    value = omega / math.sqrt(bra * ket)
    if zero_point:
        value *= math.exp(-0.5 * q.eps)
    return complex(value)


def log_asymptotic_omega_linear(e0: float, eps: float, x: float) -> float:
    """log of Γ(e0+1)·e^{−ε e0}·exp(e^{−ε}x)/x^{e0}."""
    if not x > 0:
        raise InvalidParameters("the asymptotic form needs x > 0")
    return float(gammaln(e0 + 1.0)) - eps * e0 + math.exp(-eps) * x - e0 * math.log(x)


def asymptotic_omega_linear(e0: float, eps: float, x: float) -> float:
    """Leading behaviour of the linear-spectrum element for large e^{−ε}x."""
    return math.exp(log_asymptotic_omega_linear(e0, eps, x))


def compare_asymptotic_omega(e0: float, eps: float, x: float) -> tuple[float, float, float]:
    """
    (asymptotic, series, relative difference), compared in log domain.
    Differences above 3% are logged, never raised.
    """
    family = harmonic_oscillator(e0)
    series = omega_element(family, ThermalQuery(eps, math.sqrt(x), math.sqrt(x))).value.real
    log_asym = log_asymptotic_omega_linear(e0, eps, x)
    rel = abs(math.expm1(log_asym - math.log(series)))
    if rel > ASYMPTOTIC_TOLERANCE:
        logger.warning(
            "asymptotic form off by %.2f%% at e0=%g eps=%g x=%g", 100 * rel, e0, eps, x
        )
    return math.exp(log_asym), series, rel
