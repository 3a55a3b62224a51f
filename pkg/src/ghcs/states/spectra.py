"""
ghcs.states.spectra
===================

Dimensionless energy spectra e(m) (units of ħω).

Two readings of a spectrum are used:
    eigenvalue(m), m ≥ 1   the rule ρ(n) = ∏_{m=1}^{n} e(m) is built from
    level(n),      n ≥ 0   the exponent of the Boltzmann factor e^{−ε level(n)}

They differ only at n = 0 (ground-state convention) and for GKScaled,
whose levels are measured in units of the doubled frequency.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict

from ghcs.core.errors import InvalidParameters
from ghcs.series.pfq import HypergeometricParams


@dataclass(frozen=True)
class EnergySpectrum(ABC):
    """Eigenvalue rule of a non-degenerate spectrum."""

    @abstractmethod
    def eigenvalue(self, m: int) -> float:
        """e(m) for m ≥ 1."""

    def level(self, n: int) -> float:
        """Boltzmann exponent per unit ε; level(0) = 0 unless overridden."""
        return 0.0 if n == 0 else self.eigenvalue(n)

    @property
    def variant(self) -> str:
        return type(self).__name__

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Registry form {variant, parameters...}."""

    def _require_positive(self, upto: int) -> None:
        for m in range(1, upto + 1):
            e = self.eigenvalue(m)
            if not e > 0 or math.isinf(e):
                raise InvalidParameters(f"{self.variant}: e({m}) = {e:g} is not positive")


@dataclass(frozen=True)
class Linear(EnergySpectrum):
    """e(n) = n + e0."""

    e0: float = 0.0

    def __post_init__(self):
        if self.e0 < 0:
            raise InvalidParameters(f"Linear: e0 must be nonnegative (got {self.e0:g})")

    def eigenvalue(self, m: int) -> float:
        return m + self.e0

    def level(self, n: int) -> float:
        return n + self.e0

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": "linear", "e0": self.e0}


@dataclass(frozen=True)
class Quadratic(EnergySpectrum):
    """e(n) = n(n + b)."""

    b: float = 1.0

    def __post_init__(self):
        if self.b == 0 or self.b <= -1:
            raise InvalidParameters(f"Quadratic: b must be nonzero and > -1 (got {self.b:g})")

    def eigenvalue(self, m: int) -> float:
        return m * (m + self.b)

    def level(self, n: int) -> float:
        return n * (n + self.b)

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": "quadratic", "b": self.b}


@dataclass(frozen=True)
class GKScaled(EnergySpectrum):
    """
    e(m) = scale·(m + k). With ω = scale·ω₀ the thermal levels are m + k
    in units of ħω, so level(n) = e(n)/scale including n = 0.
    """

    k: float = 1.0
    scale: float = 2.0

    def __post_init__(self):
        if not self.k > 0:
            raise InvalidParameters(f"GKScaled: k must be positive (got {self.k:g})")
        if not self.scale > 0:
            raise InvalidParameters(f"GKScaled: scale must be positive (got {self.scale:g})")

    def eigenvalue(self, m: int) -> float:
        return self.scale * (m + self.k)

    def level(self, n: int) -> float:
        return n + self.k

    def phase_energy(self, n: int) -> float:
        """e_n entering the GK phase exp(−iγ e_n), defined for n ≥ 0."""
        return self.scale * (n + self.k)

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": "gk", "k": self.k, "scale": self.scale}


@dataclass(frozen=True)
class BGRational(EnergySpectrum):
    """e_BG(m) = m·∏(b_j+m−1)/∏(a_i+m−1), so that ∏ e = ρ_BG."""

    params: HypergeometricParams

    def __post_init__(self):
        for ai in self.params.a:
            if ai <= 0 and float(ai).is_integer():
                raise InvalidParameters(f"BGRational: a = {ai:g} makes e(m) singular")
        self._require_positive(_sign_horizon(self.params))

    def eigenvalue(self, m: int) -> float:
        return m * math.prod(bj + m - 1 for bj in self.params.b) / math.prod(
            ai + m - 1 for ai in self.params.a
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": "bg-rational", "a": list(self.params.a), "b": list(self.params.b)}


@dataclass(frozen=True)
class KPRational(EnergySpectrum):
    """e_KP(m) = m·∏(a_i+m−1)/∏(b_j+m−1), so that ∏ e = ρ_KP."""

    params: HypergeometricParams

    def __post_init__(self):
        for ai in self.params.a:
            if ai <= 0 and float(ai).is_integer():
                raise InvalidParameters(f"KPRational: a = {ai:g} makes e(m) vanish")
        self._require_positive(_sign_horizon(self.params))

    def eigenvalue(self, m: int) -> float:
        return m * math.prod(ai + m - 1 for ai in self.params.a) / math.prod(
            bj + m - 1 for bj in self.params.b
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": "kp-rational", "a": list(self.params.a), "b": list(self.params.b)}


def _sign_horizon(params: HypergeometricParams) -> int:
    # Factors (x+m-1) keep a fixed sign once m > 1 - x.
    values = list(params.a) + list(params.b) + [1.0]
    return max(2, int(math.ceil(2 - min(values))) + 1)


def energy_eigenvalue(spectrum: EnergySpectrum, m: int) -> float:
    """e(m) for m ≥ 1; e(0) is never consulted."""
    if m < 1:
        raise InvalidParameters(f"eigenvalues are defined for m ≥ 1 (got m={m})")
    return spectrum.eigenvalue(m)


def spectrum_from_dict(data: Dict[str, Any]) -> EnergySpectrum:
    """Inverse of ``EnergySpectrum.to_dict``."""
    variant = data.get("variant")
    if variant == "linear":
        return Linear(e0=float(data.get("e0", 0.0)))
    if variant == "quadratic":
        return Quadratic(b=float(data["b"]))
    if variant == "gk":
        return GKScaled(k=float(data["k"]), scale=float(data.get("scale", 2.0)))
    if variant in ("bg-rational", "kp-rational"):
        params = HypergeometricParams.of(data.get("a", ()), data.get("b", ()))
        return BGRational(params) if variant == "bg-rational" else KPRational(params)
    raise InvalidParameters(f"unknown spectrum variant {variant!r}")
