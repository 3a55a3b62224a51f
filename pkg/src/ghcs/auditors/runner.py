"""
ghcs.auditors.runner
====================

Verification-suite driver. Checks are registered by name, fanned out over a
thread pool and merged in name order, so the combined report does not
depend on completion order.

Suites:
    bloch       Bloch residuals on the ε × x grid and their step scaling, boundary
                limit, partition function, HO closed form and Husimi function
    identities  duality, action identity, pFq recurrence, product/ratio audits,
                erf reduction, large-argument forms
    moments     weight moments, their node doubling, resolution-of-unity diagonal
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Tuple

from ghcs.auditors.bloch import (
    SCALING_REDUCTION,
    bloch_row,
    closed_form_solution_check,
    step_scaling_row,
)
from ghcs.auditors.identities import (
    asymptotics_check,
    audit_product_identity,
    audit_ratio_identity,
    erf_closed_form_check,
)
from ghcs.auditors.unity import moment_check, node_doubling_check, unity_reconstruction_check
from ghcs.core.config import BLOCH_TOLERANCE, get_settings
from ghcs.core.errors import InvalidParameters
from ghcs.core.models import VerificationReport, make_row
from ghcs.presets import PresetRecord, PresetRegistry
from ghcs.series.pfq import Kind, ode_residual_coefficients
from ghcs.states.families import CSFamily, GKLabel, action_identity, duality_check
from ghcs.states.spectra import Linear
from ghcs.thermal.density import (
    ThermalQuery,
    husimi_q,
    omega_boundary,
    omega_element,
    partition_closed_form,
    partition_function,
)

logger = logging.getLogger("ghcs.runner")

SUITES = ("bloch", "identities", "moments")
BLOCH_EPS = (0.1, 0.5, 1.0)
BLOCH_X = (0.1, 0.5, 1.0)
BOUNDARY_TOLERANCE = 1e-13
DUALITY_ORDER = 20
ODE_ORDER = 50
ODE_TOLERANCE = 1e-14
ACTION_TOLERANCE = 1e-10
AUDIT_TOLERANCE = 1e-12
MOMENT_ORDER = 10
PARTITION_EPS = (0.1, 0.5, math.log(2.0), 1.0)
PARTITION_TOLERANCE = 1e-12
HUSIMI_ZSQ = tuple(0.5 * i for i in range(9))
HUSIMI_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RunReport:
    """Outcome of one ``verify`` invocation."""

    command: str
    reports: List[VerificationReport]
    outputs: List[Path] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @property
    def worst(self) -> float:
        return max((report.worst for report in self.reports), default=0.0)

    def summary_lines(self) -> List[str]:
        lines = [f"command: {self.command}"]
        for report in self.reports:
            verdict = "pass" if report.passed else "FAIL"
            informational = sum(1 for row in report.rows if row.informational)
            note = f" ({informational} informational)" if informational else ""
            lines.append(
                f"{report.name}: {verdict} rows={len(report.rows)} "
                f"worst={report.worst:.3e} tol={report.tolerance:g}{note}"
            )
        for path in self.outputs:
            lines.append(f"wrote {path}")
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'} worst={self.worst:.3e}")
        return lines


class SuiteRunner:
    """Collects named checks and executes them, optionally in parallel."""

    def __init__(self, max_workers: Optional[int] = None):
        self.checks: List[Tuple[str, Callable[[], VerificationReport]]] = []
        self.max_workers = max_workers

    def register(self, name: str, executor: Callable[[], VerificationReport]) -> None:
        self.checks.append((name, executor))

    def execute(self, parallel: bool = True) -> List[VerificationReport]:
        """Run every check; errors propagate. Reports come back sorted by name."""
        if parallel and len(self.checks) > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                futures = [(name, pool.submit(fn)) for name, fn in self.checks]
                results = [(name, future.result()) for name, future in futures]
        else:
            results = [(name, fn()) for name, fn in self.checks]
        for name, report in results:
            logger.debug("%s: %s (worst %.3e)", name, report.passed, report.worst)
        return [report.sorted() for _, report in sorted(results, key=lambda item: item[0])]


# ---------------------------------------------------------------------------
# Suite definitions
# ---------------------------------------------------------------------------


def _labels(family: CSFamily, x: float):
    # Pair labels whose kernel argument is x
    if family.kind == Kind.GK:
        return GKLabel(x), GKLabel(x)
    return 1.0, complex(x)


def _bloch_grid(family: CSFamily) -> List[float]:
    cap = min(1.0, 0.9 * family.radius)
    return sorted({min(x, cap) for x in BLOCH_X})


def bloch_report(record: PresetRecord, tolerance: float = BLOCH_TOLERANCE) -> VerificationReport:
    family = record.to_family()
    rows = []
    for eps in BLOCH_EPS:
        for x in _bloch_grid(family):
            z, zp = _labels(family, x)
            rows.append(bloch_row(family, ThermalQuery(eps, z, zp), tolerance))
    return VerificationReport(f"bloch:{record.name}", tolerance, rows)


def step_scaling_report(record: PresetRecord) -> VerificationReport:
    family = record.to_family()
    rows = []
    for eps in BLOCH_EPS:
        for x in _bloch_grid(family):
            z, zp = _labels(family, x)
            rows.append(step_scaling_row(family, ThermalQuery(eps, z, zp)))
    return VerificationReport(f"step-scaling:{record.name}", 1.0 / SCALING_REDUCTION, rows)


def partition_report(record: PresetRecord) -> VerificationReport:
    """
    Z against the geometric closed form where one exists; otherwise against
    the sum with twice the term cap.
    """
    spectrum = record.to_family().spectrum
    rows = []
    for eps in PARTITION_EPS:
        value = partition_function(spectrum, eps)
        reference = partition_closed_form(spectrum, eps)
        if reference is None:
            reference = partition_function(spectrum, eps, 2 * get_settings().n_max)
        rows.append(make_row((record.name, eps), value, reference, PARTITION_TOLERANCE))
    return VerificationReport(f"partition:{record.name}", PARTITION_TOLERANCE, rows)


def husimi_report(record: PresetRecord) -> VerificationReport:
    family = record.to_family()
    rows = [
        make_row(
            (record.name, eps, zsq),
            husimi_q(family, eps, zsq),
            math.exp(math.expm1(-eps) * zsq),
            HUSIMI_TOLERANCE,
        )
        for eps in BLOCH_EPS
        for zsq in HUSIMI_ZSQ
    ]
    return VerificationReport(f"husimi:{record.name}", HUSIMI_TOLERANCE, rows)


def boundary_report(record: PresetRecord) -> VerificationReport:
    family = record.to_family()
    rows = []
    for x in _bloch_grid(family):
        z, zp = _labels(family, x)
        omega = omega_element(family, ThermalQuery(0.0, z, zp)).value
        rows.append(
            make_row(
                (record.name, x), omega, omega_boundary(family, z, zp), BOUNDARY_TOLERANCE,
                absolute=True,
            )
        )
    return VerificationReport(f"boundary:{record.name}", BOUNDARY_TOLERANCE, rows)


def action_report(record: PresetRecord) -> VerificationReport:
    family = record.to_family()
    rows = [
        make_row((record.name, zsq), action_identity(family, zsq), zsq, ACTION_TOLERANCE)
        for zsq in [0.5 * i for i in range(11)]
    ]
    return VerificationReport(f"action:{record.name}", ACTION_TOLERANCE, rows)


def recurrence_report(record: PresetRecord) -> VerificationReport:
    family = record.to_family()
    residual = ode_residual_coefficients(family.kernel_params, ODE_ORDER)
    row = make_row((record.name, ODE_ORDER), residual, 0.0, ODE_TOLERANCE, absolute=True)
    return VerificationReport(f"recurrence:{record.name}", ODE_TOLERANCE, [row])


def audit_report(record: PresetRecord) -> VerificationReport:
    family = record.to_family()
    e0 = family.spectrum.e0
    rows = []
    for eps in (0.0, math.log(2.0)):
        for x in (0.5, 1.0):
            product = audit_product_identity(e0, eps, x)
            ratio = audit_ratio_identity(e0, eps, x)
            exact = product.exact_expected or eps == 0.0
            rows.append(
                make_row(
                    (record.name, "product", eps, x), product.lhs, product.rhs, AUDIT_TOLERANCE,
                    absolute=True, informational=not exact,
                )
            )
            rows.append(
                make_row(
                    (record.name, "ratio", eps, x), ratio.lhs, ratio.rhs, AUDIT_TOLERANCE,
                    absolute=True, informational=not exact,
                )
            )
            rows.append(
                make_row(
                    (record.name, "product-routes", eps, x), product.rhs, product.rhs_scalar,
                    AUDIT_TOLERANCE, absolute=True,
                )
            )
    return VerificationReport(f"audit:{record.name}", AUDIT_TOLERANCE, rows)


def _audits_apply(family: CSFamily) -> bool:
    # Kernel ₁F₁(1; e0+1; ·) (or e^x at e0 = 0) under the matching linear spectrum
    return family.kind == Kind.BG and isinstance(family.spectrum, Linear) and (
        family.params.p == family.params.q == 0
        or (family.params.a == (1.0,) and family.params.b == (family.spectrum.e0 + 1.0,))
    )


def _is_plain_oscillator(family: CSFamily) -> bool:
    return (
        family.kind == Kind.BG
        and family.params.p == family.params.q == 0
        and family.spectrum == Linear(0.0)
    )


def build_suite(
    suite: str,
    registry: PresetRegistry,
    presets: Optional[Iterable[str]] = None,
    bloch_tolerance: float = BLOCH_TOLERANCE,
) -> SuiteRunner:
    """Register the checks of ``suite`` ('all' for every suite) for the selected presets."""
    if suite != "all" and suite not in SUITES:
        raise InvalidParameters(f"unknown suite '{suite}' (known: {', '.join(SUITES)}, all)")
    selected = [registry.get(name) for name in (presets or registry.names())]
    wanted = SUITES if suite == "all" else (suite,)
    runner = SuiteRunner()
    for record in selected:
        family = record.to_family()
        if "bloch" in wanted:
            runner.register(
                f"bloch:{record.name}", lambda r=record: bloch_report(r, bloch_tolerance)
            )
            runner.register(
                f"step-scaling:{record.name}", lambda r=record: step_scaling_report(r)
            )
            runner.register(f"boundary:{record.name}", lambda r=record: boundary_report(r))
            runner.register(f"partition:{record.name}", lambda r=record: partition_report(r))
            if _is_plain_oscillator(family):
                name = f"closed-form:{record.name}"
                runner.register(
                    name,
                    partial(
                        closed_form_solution_check,
                        BLOCH_EPS,
                        BLOCH_X,
                        tolerance=AUDIT_TOLERANCE,
                        name=name,
                    ),
                )
                runner.register(f"husimi:{record.name}", lambda r=record: husimi_report(r))
        if "identities" in wanted:
            name = f"duality:{record.name}"
            runner.register(name, partial(duality_check, family.params, DUALITY_ORDER, name=name))
            runner.register(f"recurrence:{record.name}", lambda r=record: recurrence_report(r))
            if family.kind == Kind.BG:
                runner.register(f"action:{record.name}", lambda r=record: action_report(r))
            if _audits_apply(family):
                runner.register(f"audit:{record.name}", lambda r=record: audit_report(r))
        if "moments" in wanted:
            weight = record.to_weight()
            if weight is None:
                logger.info("no weight registered for %s; moments skipped", record.name)
                continue
            name = f"moments:{record.name}"
            runner.register(name, partial(moment_check, weight, MOMENT_ORDER, name=name))
            name = f"doubling:{record.name}"
            runner.register(name, partial(node_doubling_check, weight, MOMENT_ORDER, name=name))
            name = f"unity:{record.name}"
            runner.register(
                name, partial(unity_reconstruction_check, family, weight, MOMENT_ORDER, name=name)
            )
    if "identities" in wanted:
        runner.register("closed-form:erf", erf_closed_form_check)
        runner.register("asymptotics", asymptotics_check)
    return runner
