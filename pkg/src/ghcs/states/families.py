"""
ghcs.states.families
====================

Coherent-state families (BG, KP, GK) over a hypergeometric normalization
kernel, their Fock-space expansions and ladder-operator actions.

A family couples:
    params     the kernel pFq(a; b; ·) (BG), its dual qFp(b; a; ·) (KP), or
               pFq(a; b; ·/scale) (GK, with ρ_GK(n) = scale^n ρ_BG(n))
    spectrum   the Hamiltonian levels used in Boltzmann factors
    structure  the rule e(m) with ρ(n) = ∏ e(m), driving the ladder operators

Usage:
    from ghcs.states.families import pho_bg, overlap, fock_expansion

    family = pho_bg(k=1.0)
    overlap(family, 0.5 ** 0.5, 0.5 ** 0.5)     # ₁F₁(1; 2; 0.5)
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Union

import numpy as np

from ghcs.core.config import NumericSettings, get_settings
from ghcs.core.errors import InvalidParameters, OutOfRadius, StructureOverflow
from ghcs.core.models import EvalResult, VerificationReport, make_row
from ghcs.series.pfq import (
    LOG_DOUBLE_MAX,
    HypergeometricParams,
    Kind,
    admissible_limit,
    check_radius,
    convergence_radius,
    structure_constant,
    structure_constant_log,
    sum_series,
    term_ratio,
)
from ghcs.states.spectra import (
    BGRational,
    EnergySpectrum,
    GKScaled,
    KPRational,
    Linear,
    Quadratic,
)

logger = logging.getLogger("ghcs.states")


# ---------------------------------------------------------------------------
# Labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GKLabel:
    """Action-angle label (J, γ) with z = √J·exp(−iγ)."""

    J: float
    gamma: float = 0.0

    def __post_init__(self):
        if self.J < 0:
            raise InvalidParameters(f"GK action J must be nonnegative (got {self.J:g})")

    @property
    def z(self) -> complex:
        return math.sqrt(self.J) * cmath.exp(-1j * self.gamma)

    @classmethod
    def from_complex(cls, z: complex) -> "GKLabel":
        z = complex(z)
        return cls(J=abs(z) ** 2, gamma=-cmath.phase(z))


Label = Union[complex, float, GKLabel]


def _as_complex(z: Label) -> complex:
    return z.z if isinstance(z, GKLabel) else complex(z)


def _as_gk(z: Label) -> GKLabel:
    return z if isinstance(z, GKLabel) else GKLabel.from_complex(z)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CSFamily:
    """A coherent-state family; immutable, all queries are pure."""

    kind: Kind
    params: HypergeometricParams
    spectrum: EnergySpectrum
    name: str = ""

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind == Kind.GK:
            if not isinstance(self.spectrum, GKScaled):
                raise InvalidParameters("GK families need a GKScaled spectrum")
            expected = HypergeometricParams.of((1.0,), (self.spectrum.k + 1.0,))
            if self.params != expected:
                raise InvalidParameters(
                    f"GK family with k={self.spectrum.k:g} needs params {expected.label()}"
                )
        # Building the structure rule validates positivity of e(m).
        _ = self.structure
        _ = self.kernel_params

    # -- derived rules ------------------------------------------------------

    @cached_property
    def structure(self) -> EnergySpectrum:
        """Rule e(m) with ρ(n) = ∏_{m≤n} e(m)."""
        if self.kind == Kind.BG:
            return BGRational(self.params)
        if self.kind == Kind.KP:
            return KPRational(self.params)
        return self.spectrum

    @cached_property
    def kernel_params(self) -> HypergeometricParams:
        """Parameters of the series Σ x^n/ρ(n) after argument scaling."""
        return self.params.dual() if self.kind == Kind.KP else self.params

    @property
    def argument_scale(self) -> float:
        return 1.0 / self.spectrum.scale if self.kind == Kind.GK else 1.0

    @property
    def radius(self) -> float:
        """Convergence radius in the variable z*·z' (or √(JJ') for GK)."""
        return convergence_radius(self.kernel_params) / self.argument_scale

    @property
    def label(self) -> str:
        return self.name or f"{self.kind.value}:{self.params.label()}"

    def rho(self, n: int) -> float:
        """Structure constant ρ(n); log-domain beyond the configured threshold."""
        settings = get_settings()
        if n > settings.log_domain_threshold:
            log_value = self.log_rho(n)
            if log_value > LOG_DOUBLE_MAX:
                raise StructureOverflow(n)
            return math.exp(log_value)
        if self.kind == Kind.GK:
            return self.spectrum.scale**n * structure_constant(self.params, Kind.BG, n)
        return structure_constant(self.params, self.kind, n)

    def log_rho(self, n: int) -> float:
        if self.kind == Kind.GK:
            return n * math.log(self.spectrum.scale) + structure_constant_log(
                self.params, Kind.BG, n
            )
        return structure_constant_log(self.params, self.kind, n)

    def rho_from_spectrum(self, n: int) -> float:
        """∏_{m=1}^{n} e(m) straight from the structure rule."""
        return math.prod(self.structure.eigenvalue(m) for m in range(1, n + 1))

    def phase_energy(self, n: int) -> float:
        """e_n in the GK phase factor (defined for n ≥ 0)."""
        if isinstance(self.spectrum, GKScaled):
            return self.spectrum.phase_energy(n)
        return self.structure.level(n)

    # -- kernel sums ----------------------------------------------------------

    def pair_argument(self, z: Label, zp: Label) -> tuple[complex, Optional[Callable]]:
        """
        Series variable for the pair (z, z') and an optional per-term phase.
        BG/KP: x = z*·z'. GK: x = √(JJ'), phase exp[i(γ−γ')e_n].
        """
        if self.kind != Kind.GK:
            return _as_complex(z).conjugate() * _as_complex(zp), None
        bra, ket = _as_gk(z), _as_gk(zp)
        x = math.sqrt(bra.J * ket.J)
        delta = bra.gamma - ket.gamma
        if delta == 0:
            return x, None
        return x, lambda n: cmath.exp(1j * delta * self.phase_energy(n))

    def kernel_sum(
        self,
        x: complex,
        weight: Optional[Callable[[int], complex]] = None,
        *,
        strict: bool = True,
        settings: Optional[NumericSettings] = None,
    ) -> EvalResult:
        """Σ_n w(n) x^n / ρ(n), checked against the family radius."""
        kernel = self.kernel_params
        scaled = x * self.argument_scale
        check_radius(scaled, convergence_radius(kernel), settings)
        return sum_series(
            lambda n: term_ratio(kernel, n),
            scaled,
            self.radius,
            weight=weight,
            strict=strict,
            settings=settings,
        )

    def pair_sum(
        self,
        z: Label,
        zp: Label,
        weight: Optional[Callable[[int], complex]] = None,
        *,
        strict: bool = True,
    ) -> EvalResult:
        """kernel_sum over the pair argument, folding in the GK phase."""
        x, phase = self.pair_argument(z, zp)
        if phase is None:
            return self.kernel_sum(x, weight, strict=strict)
        if weight is None:
            return self.kernel_sum(x, phase, strict=strict)
        return self.kernel_sum(x, lambda n: phase(n) * weight(n), strict=strict)

    def check_label(self, z: Label) -> None:
        """States exist only for |z|² inside the radius (Hausdorff families)."""
        zsq = _as_gk(z).J if self.kind == Kind.GK else abs(_as_complex(z)) ** 2
        limit = admissible_limit(self.radius)
        if zsq > limit:
            raise OutOfRadius(zsq, limit)


# ---------------------------------------------------------------------------
# Family factories (oscillator presets)
# ---------------------------------------------------------------------------


def harmonic_oscillator(e0: float = 0.0) -> CSFamily:
    """HO-1D: ρ(n) = n! with e0 = 0, else ρ(n) = (e0+1)_n with e(n) = n + e0."""
    if e0 == 0:
        return CSFamily(Kind.BG, HypergeometricParams(0, 0), Linear(0.0), "ho")
    return CSFamily(Kind.BG, HypergeometricParams.of((1.0,), (e0 + 1.0,)), Linear(e0), "ho-e0")


def pho_bg(k: float = 1.0) -> CSFamily:
    """Pseudoharmonic oscillator, BG states: ρ(n) = (k+1)_n, e(n) = n + k."""
    return CSFamily(Kind.BG, HypergeometricParams.of((1.0,), (k + 1.0,)), Linear(k), "pho-bg")


def pho_kp(k: float = 1.0) -> CSFamily:
    """Pseudoharmonic oscillator, KP states: ρ(n) = n!/(2k)_n, levels n + 2k."""
    if not k > 0:
        raise InvalidParameters(f"Bargmann index must be positive (got {k:g})")
    return CSFamily(Kind.KP, HypergeometricParams.of((), (2.0 * k,)), Linear(2.0 * k), "pho-kp")


def pho_gk(k: float = 1.0, scale: float = 2.0) -> CSFamily:
    """Pseudoharmonic oscillator, GK states: e(m) = scale·(m+k), levels m + k."""
    return CSFamily(
        Kind.GK, HypergeometricParams.of((1.0,), (k + 1.0,)), GKScaled(k, scale), "pho-gk"
    )


def quadratic(b: float = 1.0) -> CSFamily:
    """Quadratic spectrum e(n) = n(n+b): ρ(n) = n!(b+1)_n, kernel ₀F₁(; b+1; ·)."""
    return CSFamily(Kind.BG, HypergeometricParams.of((), (b + 1.0,)), Quadratic(b), "quadratic")


# ---------------------------------------------------------------------------
# Fock-space expansions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FockExpansion:
    """Entry n is the amplitude on |n⟩; ``order`` is the truncation N."""

    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return self.coefficients.size - 1

    def __getitem__(self, n: int) -> complex:
        return complex(self.coefficients[n])

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    @classmethod
    def basis(cls, n: int, order: Optional[int] = None) -> "FockExpansion":
        """The number state |n⟩ truncated at ``order`` (default n)."""
        coeffs = np.zeros((order if order is not None else n) + 1, dtype=complex)
        coeffs[n] = 1.0
        return cls(coeffs)


def cs_coefficient(family: CSFamily, n: int, z: Label) -> complex:
    """
    Amplitude of |n⟩ in the non-normalized state:
    z^n/√ρ(n) (BG, KP) or (√J)^n·exp(−iγ e_n)/√ρ_GK(n) (GK).
    """
    if n < 0:
        raise InvalidParameters("Fock index must be nonnegative")
    if family.kind == Kind.GK:
        label = _as_gk(z)
        r, phase = math.sqrt(label.J), cmath.exp(-1j * label.gamma * family.phase_energy(n))
    else:
        zc = _as_complex(z)
        r, phase = abs(zc), cmath.exp(1j * n * cmath.phase(zc))
    if n == 0:
        return complex(phase)
    if r == 0:
        return 0j
    if n <= get_settings().log_domain_threshold:
        return complex(r**n / math.sqrt(family.rho(n)) * phase)
    return complex(math.exp(n * math.log(r) - 0.5 * family.log_rho(n)) * phase)


def fock_expansion(family: CSFamily, z: Label, order: Optional[int] = None) -> FockExpansion:
    """
    Non-normalized coherent state truncated at ``order``. Without an
    explicit order, start at the configured default and double until
    |c_N|² ≤ tail·Σ|c_n|².
    """
    family.check_label(z)
    if order is not None:
        return FockExpansion([cs_coefficient(family, n, z) for n in range(order + 1)])
    settings = get_settings()
    N = settings.fock_order
    while True:
        coeffs = np.array([cs_coefficient(family, n, z) for n in range(N + 1)])
        tail = abs(coeffs[-1]) ** 2
        if tail <= settings.fock_tail * float(np.sum(np.abs(coeffs) ** 2)):
            return FockExpansion(coeffs)
        if N >= settings.fock_max_order:
            logger.warning("Fock expansion capped at N=%d (tail %.3e)", N, tail)
            return FockExpansion(coeffs)
        N = min(2 * N, settings.fock_max_order)
        logger.debug("raising Fock truncation to N=%d", N)


def normalized_state(family: CSFamily, z: Label, order: Optional[int] = None) -> FockExpansion:
    """Expansion divided by √kernel(|z|²); unit norm up to truncation."""
    expansion = fock_expansion(family, z, order)
    norm = family.pair_sum(z, z).value.real
    return FockExpansion(expansion.coefficients / math.sqrt(norm))


def ladder_down(family: CSFamily, expansion: FockExpansion) -> FockExpansion:
    """Â₋|n⟩ = √e(n)|n−1⟩; the top entry of the result is zero (truncation)."""
    c = expansion.coefficients
    out = np.zeros_like(c)
    for n in range(expansion.order):
        out[n] = math.sqrt(family.structure.eigenvalue(n + 1)) * c[n + 1]
    return FockExpansion(out)


def ladder_up(family: CSFamily, expansion: FockExpansion) -> FockExpansion:
    """Â₊|n⟩ = √e(n+1)|n+1⟩; the result is one order longer."""
    c = expansion.coefficients
    out = np.zeros(c.size + 1, dtype=complex)
    for n in range(c.size):
        out[n + 1] = math.sqrt(family.structure.eigenvalue(n + 1)) * c[n]
    return FockExpansion(out)


def build_state_by_ladder(family: CSFamily, z: Label, N: int) -> FockExpansion:
    """
    Σ_{n≤N} z^n (Â₊)^n|0⟩/ρ(n) assembled by repeated raising; (Â₊)^n|0⟩ =
    √ρ(n)|n⟩, so this reproduces cs_coefficient along a separate path.
    """
    if N < 0:
        raise InvalidParameters("N must be nonnegative")
    state = np.zeros(N + 1, dtype=complex)
    raised = FockExpansion.basis(0)
    state[0] = 1.0
    if family.kind == Kind.GK:
        label = _as_gk(z)
        amplitude = lambda n: math.sqrt(label.J) ** n * cmath.exp(  # noqa: E731
            -1j * label.gamma * family.phase_energy(n)
        )
        state[0] = amplitude(0)
    else:
        zc = _as_complex(z)
        amplitude = lambda n: zc**n  # noqa: E731
    for n in range(1, N + 1):
        raised = ladder_up(family, raised)
        state[: n + 1] += amplitude(n) / family.rho(n) * raised.coefficients
    return FockExpansion(state)


def number_expectation(expansion: FockExpansion) -> float:
    """⟨N̂⟩ = Σ n|c_n|² / Σ|c_n|²."""
    weights = np.abs(expansion.coefficients) ** 2
    return float(np.dot(np.arange(weights.size), weights) / np.sum(weights))


# ---------------------------------------------------------------------------
# Overlaps and identities
# ---------------------------------------------------------------------------


def overlap(family: CSFamily, z: Label, zp: Label) -> complex:
    """((z|z')) = Σ (z*z')^n/ρ(n): pFq (BG), qFp (KP), phased ₁F₁ (GK)."""
    return family.pair_sum(z, zp).value


def action_identity(family: CSFamily, zsq: float) -> float:
    """
    ⟨z|H|z⟩/ħω = Σ e(n)|z|^{2n}/ρ(n) ÷ kernel(|z|²) with e(0) dropped;
    equals |z|² for BG families.
    """
    if family.kind != Kind.BG:
        raise InvalidParameters(f"the action identity holds for BG families (got {family.kind})")
    if zsq < 0:
        raise InvalidParameters("|z|² must be nonnegative")
    energy = family.kernel_sum(zsq, lambda n: 0.0 if n == 0 else family.structure.eigenvalue(n))
    kernel = family.kernel_sum(zsq)
    return float(energy.value.real / kernel.value.real)


def duality_check(
    params: HypergeometricParams, n_max: int, tolerance: float = 1e-12, name: str = "duality"
) -> VerificationReport:
    """Relative error of ρ_BG(n)·ρ_KP(n) = (n!)² for n ≤ n_max."""
    threshold = get_settings().log_domain_threshold
    rows = []
    for n in range(n_max + 1):
        if n <= threshold:
            product = (
                structure_constant(params, Kind.BG, n)
                * structure_constant(params, Kind.KP, n)
                / math.factorial(n) ** 2
            )
        else:
            product = math.exp(
                structure_constant_log(params, Kind.BG, n)
                + structure_constant_log(params, Kind.KP, n)
                - 2.0 * math.lgamma(n + 1)
            )
        rows.append(make_row((params.label(), n), product, 1.0, tolerance))
    return VerificationReport(name, tolerance, rows)
