"""
ghcs.auditors.identities
========================

Audits of the product and ratio identities for ₁F₁(1; e0+1; ·) that follow
from assuming H·Ω = ħω(e0 + e^{−ε}x)·Ω:

    product:  e^{−ε e0}F(e^{−ε}x)  vs  F(x)·exp[(e^{−ε}−1)x − ε e0]
    ratio:    F(e^{−ε}x)/F(x)      vs  exp[(e^{−ε}−1)x]

Both hold only for e0 = 0. For e0 ≠ 0 the discrepancy is measured and
reported as informational.

Alongside: the erf reduction of the e0 = 1/2 kernel and the large-argument
forms of the kernel and of the Ω element.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable

from ghcs.core.errors import InvalidParameters
from ghcs.core.models import CheckRow, VerificationReport, make_row
from ghcs.series.pfq import HypergeometricParams, asymptotic_1f1, eval_pfq, pfq_series
from ghcs.series.power_series import cauchy_product, exp_series
from ghcs.thermal.density import ASYMPTOTIC_TOLERANCE, compare_asymptotic_omega

logger = logging.getLogger("ghcs.identities")

PRODUCT_START_ORDER = 32
PRODUCT_MAX_ORDER = 4096
WARN_FLOOR = 1e-12
ERF_POINTS = (0.25, 1.0, 4.0)
ERF_TOLERANCE = 1e-10
ASYMPTOTIC_POINT = 30.0
KUMMER_TOLERANCE = 0.02


@dataclass(frozen=True)
class IdentityAudit:
    lhs: float
    rhs: float
    abs_diff: float
    exact_expected: bool
    rhs_scalar: float = math.nan  # rhs from two scalar evaluations

    @property
    def route_diff(self) -> float:
        """|rhs(Cauchy product) − rhs(scalar product)|."""
        return abs(self.rhs - self.rhs_scalar)

    def to_row(self, key: tuple, tolerance: float) -> CheckRow:
        return make_row(
            key,
            self.lhs,
            self.rhs,
            tolerance,
            absolute=True,
            informational=not self.exact_expected,
        )


def _kummer_params(e0: float) -> HypergeometricParams:
    if e0 < 0:
        raise InvalidParameters(f"e0 must be nonnegative (got {e0:g})")
    return HypergeometricParams.of((1.0,), (e0 + 1.0,))


def _product_at(params: HypergeometricParams, c: float, x: float) -> float:
    # F(x)·e^{cx} through the Cauchy product of the two coefficient lists,
    # doubling the order until the top term is negligible.
    order = PRODUCT_START_ORDER
    while True:
        product = cauchy_product(pfq_series(params, order), exp_series(c, order), order)
        value = product.evaluate(x)
        tail = abs(product[order]) * abs(x) ** order
        if tail <= 1e-17 * abs(value) or order >= PRODUCT_MAX_ORDER:
            return float(value)
        order *= 2


def _log_discrepancy(identity: str, audit: IdentityAudit, e0: float, eps: float, x: float):
    # both sides coincide at ε = 0 for every e0
    if audit.exact_expected or eps == 0:
        return
    if audit.abs_diff <= WARN_FLOOR * max(1.0, abs(audit.lhs)):
        return
    logger.warning(
        "%s identity discrepancy %.6g at e0=%g eps=%g x=%g (informational)",
        identity,
        audit.abs_diff,
        e0,
        eps,
        x,
    )


def audit_product_identity(e0: float, eps: float, x: float) -> IdentityAudit:
    """
    Product identity: lhs by the definition series at e^{−ε}x, rhs by the
    Cauchy product of F and exp[(e^{−ε}−1)·] evaluated at x.
    """
    params = _kummer_params(e0)
    shrink = math.exp(-eps)
    lhs = math.exp(-eps * e0) * eval_pfq(params, shrink * x).value.real
    rhs = math.exp(-eps * e0) * _product_at(params, shrink - 1.0, x)
    rhs_scalar = eval_pfq(params, x).value.real * math.exp((shrink - 1.0) * x - eps * e0)
    audit = IdentityAudit(lhs, rhs, abs(lhs - rhs), e0 == 0, rhs_scalar)
    _log_discrepancy("product", audit, e0, eps, x)
    return audit


def audit_ratio_identity(e0: float, eps: float, x: float) -> IdentityAudit:
    """Ratio identity F(e^{−ε}x)/F(x) against exp[(e^{−ε}−1)x]."""
    params = _kummer_params(e0)
    shrink = math.exp(-eps)
    lhs = eval_pfq(params, shrink * x).value.real / eval_pfq(params, x).value.real
    rhs = math.exp((shrink - 1.0) * x)
    audit = IdentityAudit(lhs, rhs, abs(lhs - rhs), e0 == 0, rhs)
    _log_discrepancy("ratio", audit, e0, eps, x)
    return audit


def erf_closed_form_check(
    xs: Iterable[float] = ERF_POINTS, tolerance: float = ERF_TOLERANCE
) -> VerificationReport:
    """
    Definition series of ₁F₁(1; 3/2; x), the e0 = 1/2 kernel, against
    √π·eˣ·erf(√x)/(2√x) with the error function taken from the math module.
    """
    params = _kummer_params(0.5)
    rows = []
    for x in xs:
        if not x > 0:
            raise InvalidParameters(f"the erf reduction is checked at x > 0 (got {x:g})")
        root = math.sqrt(x)
        oracle = math.sqrt(math.pi) * math.exp(x) * math.erf(root) / (2.0 * root)
        value = eval_pfq(params, x).value.real
        rows.append(make_row((params.label(), x), value, oracle, tolerance))
    return VerificationReport("closed-form:erf", tolerance, rows)


def asymptotics_check(x: float = ASYMPTOTIC_POINT, e0: float = 0.5) -> VerificationReport:
    """
    Leading large-argument forms against the series: ₁F₁(1; e0+1; x) within
    2% and the linear-spectrum Ω element at ε = 0 within 3%.
    """
    params = _kummer_params(e0)
    series = eval_pfq(params, x).value.real
    kummer = make_row(
        (params.label(), "kummer", x), asymptotic_1f1(1.0, e0 + 1.0, x), series, KUMMER_TOLERANCE
    )
    asym, omega, _ = compare_asymptotic_omega(e0, 0.0, x)
    element = make_row((params.label(), "omega", x), asym, omega, ASYMPTOTIC_TOLERANCE)
    return VerificationReport("asymptotics", ASYMPTOTIC_TOLERANCE, [kummer, element])
