"""
ghcs.auditors.bloch
===================

Checks that definition-series Ω elements solve the coherent-state Bloch
equation −∂Ω/∂ε = H·Ω, with the Hamiltonian acting coefficient-wise: the
number operator n becomes z*∂/∂z*, so H multiplies coefficient n by level(n).

Usage:
    from ghcs.auditors.bloch import bloch_residual
    from ghcs.thermal.density import ThermalQuery

    bloch_residual(pho_kp(1.0), ThermalQuery(0.3, 0.5, 1.0)).rel_residual   # ≲ 1e-8
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from ghcs.core.config import BLOCH_TOLERANCE, get_settings
from ghcs.core.errors import InvalidParameters
from ghcs.core.models import CheckRow, VerificationReport, make_row, relative_error
from ghcs.series.pfq import Kind
from ghcs.states.families import CSFamily, harmonic_oscillator
from ghcs.states.spectra import EnergySpectrum, Linear
from ghcs.thermal.density import ThermalQuery, omega_element

logger = logging.getLogger("ghcs.bloch")

SCALING_REDUCTION = 3.0
ROUNDING_FLOOR = 1e-10
# rounding of Ω in units of the machine epsilon, with margin for summation
ROUNDING_ULPS = 16.0
EPS_MACHINE = float(np.finfo(float).eps)


@dataclass(frozen=True)
class BlochResidual:
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    fd_step: float

    @classmethod
    def of(cls, lhs: complex, rhs: complex, fd_step: float) -> "BlochResidual":
        return cls(lhs, rhs, abs(lhs - rhs), relative_error(lhs, rhs), fd_step)


def _hamiltonian_action(
    spectrum: EnergySpectrum, family: CSFamily, x: complex, eps: float, phase=None
) -> complex:
    # Σ level(n)·e^{−ε level(n)}·x^n/ρ(n), summed in the variable e^{−ε}x
    def weight(n: int) -> complex:
        level = spectrum.level(n)
        w = level * math.exp(-eps * (level - n))
        return w * phase(n) if phase is not None else w

    return complex(family.kernel_sum(math.exp(-eps) * x, weight).value)


def apply_hamiltonian_series(
    spectrum: EnergySpectrum, family: CSFamily, x: complex, eps: float = 0.0
) -> complex:
    """
    H acting on the Ω series at kernel argument x: Σ e(n)·e^{−ε e(n)}·x^n/ρ(n),
    with e(0) taken from the spectrum's ground-state convention.
    """
    if eps < 0:
        raise InvalidParameters("eps must be nonnegative")
    return _hamiltonian_action(spectrum, family, x, eps)


def _omega(family: CSFamily, q: ThermalQuery, eps: float) -> complex:
    return omega_element(family, ThermalQuery(eps, q.z, q.zp)).value


def _central_difference(family: CSFamily, q: ThermalQuery, h: float) -> complex:
    return -(_omega(family, q, q.eps + h) - _omega(family, q, q.eps - h)) / (2.0 * h)


def bloch_residual(
    family: CSFamily,
    q: ThermalQuery,
    fd_step: Optional[float] = None,
    richardson: bool = False,
) -> BlochResidual:
    """
    Compare −∂Ω/∂ε by central difference with the coefficient-wise H action.
    ``richardson`` combines steps h and h/2 into an O(h⁴) derivative.
    """
    h = get_settings().fd_step if fd_step is None else fd_step
    if not h > 0:
        raise InvalidParameters(f"fd_step must be positive (got {h!r})")
    if q.eps < h:
        raise InvalidParameters(f"eps = {q.eps:g} is below fd_step = {h:g}")
    lhs = _central_difference(family, q, h)
    if richardson:
        lhs = (4.0 * _central_difference(family, q, h / 2.0) - lhs) / 3.0
    x, phase = family.pair_argument(q.z, q.zp)
    rhs = _hamiltonian_action(family.spectrum, family, x, q.eps, phase)
    return BlochResidual.of(lhs, rhs, h)


def bloch_row(
    family: CSFamily, q: ThermalQuery, tolerance: float = BLOCH_TOLERANCE, **kwargs
) -> CheckRow:
    """bloch_residual as a verification row keyed (family, ε, x)."""
    result = bloch_residual(family, q, **kwargs)
    x, _ = family.pair_argument(q.z, q.zp)
    return make_row((family.label, q.eps, complex(x)), result.lhs, result.rhs, tolerance)


def step_scaling_row(
    family: CSFamily, q: ThermalQuery, fd_step: Optional[float] = None
) -> CheckRow:
    """
    Residuals at fd_step (lhs) and fd_step/2 (rhs). The central difference
    is second order, so halving the step cuts the residual by about four; the
    row passes at a reduction of at least SCALING_REDUCTION, or once the finer
    residual sits at the rounding floor of the difference quotient.
    """
    h = get_settings().fd_step if fd_step is None else fd_step
    coarse = bloch_residual(family, q, h).rel_residual
    fine = bloch_residual(family, q, h / 2.0).rel_residual
    x, phase = family.pair_argument(q.z, q.zp)
    action = abs(_hamiltonian_action(family.spectrum, family, x, q.eps, phase))
    omega = abs(_omega(family, q, q.eps))
    floor = ROUNDING_FLOOR + ROUNDING_ULPS * EPS_MACHINE * omega / (h * max(action, 1e-300))
    shrink = fine / coarse if coarse > 0 else 0.0
    at_floor = fine <= floor
    passed = shrink <= 1.0 / SCALING_REDUCTION or at_floor
    return CheckRow(
        key=(family.label, q.eps, complex(x)),
        lhs=coarse,
        rhs=fine,
        abs_error=abs(coarse - fine),
        rel_error=relative_error(coarse, fine),
        measured=min(shrink, 1.0 / SCALING_REDUCTION) if at_floor else shrink,
        passed=passed,
    )


def telescoping_check(family: CSFamily, q: ThermalQuery, tolerance: float = 1e-12) -> CheckRow:
    """
    For BG families whose structure rule reproduces a linear spectrum,
    H·Ω = e^{−ε}x·Ω + level(0)·e^{−ε level(0)} exactly.
    """
    spectrum = family.spectrum
    if family.kind != Kind.BG or not isinstance(spectrum, Linear):
        raise InvalidParameters("the telescoping identity needs a BG family with a linear spectrum")
    for m in range(1, 6):
        if not math.isclose(family.structure.eigenvalue(m), spectrum.level(m), rel_tol=1e-14):
            raise InvalidParameters(f"{family.label}: structure rule differs from the spectrum")
    x, _ = family.pair_argument(q.z, q.zp)
    lhs = _hamiltonian_action(spectrum, family, x, q.eps)
    ground = spectrum.level(0)
    rhs = math.exp(-q.eps) * x * _omega(family, q, q.eps) + ground * math.exp(-q.eps * ground)
    return make_row((family.label, q.eps, abs(x)), lhs, rhs, tolerance)


def closed_form_solution_check(
    eps: Union[float, Iterable[float]],
    x: Union[complex, Iterable[complex]],
    tolerance: float = 1e-13,
    name: str = "closed-form:ho",
) -> VerificationReport:
    """Series Ω for the e0 = 0 oscillator against exp(e^{−ε}x) over the grid eps × x."""
    family = harmonic_oscillator(0.0)
    rows = []
    for e in np.atleast_1d(eps):
        for value in np.atleast_1d(x):
            point = complex(value)
            series = omega_element(family, ThermalQuery(float(e), 1.0, point)).value
            exact = cmath.exp(math.exp(-float(e)) * point)
            rows.append(make_row((float(e), point.real, point.imag), series, exact, tolerance))
    report = VerificationReport(name, tolerance, rows)
    logger.debug("closed-form check: worst %.3e over %d points", report.worst, len(rows))
    return report
