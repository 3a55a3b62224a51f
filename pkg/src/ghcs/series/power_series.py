"""
ghcs.series.power_series
========================

Explicitly truncated power series Σ c_n x^n and the operations the density
matrix calculus needs: evaluation, the x∂x eigenaction and Cauchy products.

Usage:
    from ghcs.series.power_series import PowerSeries, cauchy_product, exp_series

    s = cauchy_product(exp_series(1.0, 20), exp_series(-1.0, 20), 10)
    s.evaluate(0.3)        # ≈ 1.0
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import gammaln

from ghcs.core.errors import InvalidParameters


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficient n multiplies x^n; ``radius`` is the declared convergence radius."""

    coefficients: np.ndarray
    radius: float = math.inf

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise InvalidParameters("a power series needs a non-empty 1-D coefficient list")
        if not np.iscomplexobj(coeffs):
            coeffs = coeffs.astype(float)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        """Truncation order N (highest retained power)."""
        return self.coefficients.size - 1

    def __getitem__(self, n: int) -> complex:
        return self.coefficients[n]

    def __len__(self) -> int:
        return self.coefficients.size

    def evaluate(self, x: complex) -> complex:
        """Horner evaluation of the truncated sum."""
        value = P.polyval(x, self.coefficients)
        return complex(value) if np.iscomplexobj(value) else float(value)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise InvalidParameters(f"cannot truncate order {self.order} series at {order}")
        return PowerSeries(self.coefficients[: order + 1].copy(), self.radius)

    def apply_number_operator(self, f: Callable[[int], float]) -> "PowerSeries":
        """
        Realize f(x∂x) on the series: x∂x acts on x^n with eigenvalue n,
        so coefficient n is multiplied by f(n).
        """
        factors = np.array([f(n) for n in range(self.coefficients.size)], dtype=float)
        return PowerSeries(self.coefficients * factors, self.radius)

    def scale_argument(self, s: complex) -> "PowerSeries":
        """Series of F(s·x): coefficient n becomes c_n s^n."""
        powers = np.power(complex(s) if isinstance(s, complex) else float(s), np.arange(len(self)))
        return PowerSeries(self.coefficients * powers, self.radius / abs(s) if s else math.inf)

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries(np.zeros(1, dtype=self.coefficients.dtype), self.radius)
        return PowerSeries(P.polyder(self.coefficients), self.radius)

    def __mul__(self, scalar: complex) -> "PowerSeries":
        return PowerSeries(self.coefficients * scalar, self.radius)

    __rmul__ = __mul__


def cauchy_product(s1: PowerSeries, s2: PowerSeries, order: int) -> PowerSeries:
    """
    Product series truncated at ``order``:
    coefficient k = Σ_{j=0}^{k} s1_j · s2_{k−j}.
    """
    if order < 0:
        raise InvalidParameters("product order must be nonnegative")
    if s1.order < order or s2.order < order:
        raise InvalidParameters(
            f"operands truncated at {s1.order} and {s2.order}; order {order} requested"
        )
    product = np.convolve(s1.coefficients[: order + 1], s2.coefficients[: order + 1])
    return PowerSeries(product[: order + 1], min(s1.radius, s2.radius))


def exp_series(c: complex, order: int) -> PowerSeries:
    """Series of e^{c·x}: c^n / n!, computed in log domain to avoid overflow."""
    n = np.arange(order + 1)
    if c == 0:
        coeffs = np.zeros(order + 1)
        coeffs[0] = 1.0
        return PowerSeries(coeffs)
    magnitudes = np.exp(n * math.log(abs(c)) - gammaln(n + 1))
    phase = np.power(complex(c) / abs(c), n) if isinstance(c, complex) else np.sign(c) ** n
    return PowerSeries(magnitudes * phase)


def unit_series(order: int) -> PowerSeries:
    """The multiplicative identity 1 + 0·x + ... truncated at ``order``."""
    coeffs = np.zeros(order + 1)
    coeffs[0] = 1.0
    return PowerSeries(coeffs)
