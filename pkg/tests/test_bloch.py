import math

import pytest

from ghcs.auditors.bloch import (
    apply_hamiltonian_series,
    bloch_residual,
    bloch_row,
    closed_form_solution_check,
    step_scaling_row,
    telescoping_check,
)
from ghcs.core.errors import InvalidParameters
from ghcs.presets import builtin_registry
from ghcs.states.families import (
    GKLabel,
    harmonic_oscillator,
    pho_bg,
    pho_gk,
    pho_kp,
    quadratic,
)
from ghcs.thermal.density import ThermalQuery

EPS_GRID = (0.1, 0.5, 1.0)
X_GRID = (0.1, 0.5, 1.0)


def grid_labels(family, x):
    if family.name == "pho-gk":
        return GKLabel(x), GKLabel(x)
    return 1.0, x


def preset_grid():
    registry = builtin_registry()
    for record in registry:
        family = record.to_family()
        for eps in EPS_GRID:
            for x in sorted({min(x, 0.9 * family.radius) for x in X_GRID}):
                yield pytest.param(family, eps, x, id=f"{family.name}-{eps}-{x:g}")


@pytest.mark.parametrize("family,eps,x", list(preset_grid()))
def test_bloch_residual_on_presets(family, eps, x):
    z, zp = grid_labels(family, x)
    result = bloch_residual(family, ThermalQuery(eps, z, zp))
    assert result.rel_residual <= 1e-6
    assert result.fd_step == 1e-4


def builtin_families():
    return [pytest.param(record.to_family(), id=record.name) for record in builtin_registry()]


@pytest.mark.parametrize("family", builtin_families())
@pytest.mark.parametrize("eps", EPS_GRID)
def test_second_order_step_scaling(family, eps):
    z, zp = grid_labels(family, min(0.5, 0.9 * family.radius))
    row = step_scaling_row(family, ThermalQuery(eps, z, zp), fd_step=1e-4)
    assert row.passed, (row.lhs, row.rhs)


def test_step_scaling_ratio_on_kp_family():
    q = ThermalQuery(0.3, 1.0, 0.5)
    coarse = bloch_residual(pho_kp(1.0), q, fd_step=1e-4).rel_residual
    fine = bloch_residual(pho_kp(1.0), q, fd_step=5e-5).rel_residual
    assert coarse / fine >= 3.0
    row = step_scaling_row(pho_kp(1.0), q, fd_step=1e-4)
    assert row.measured == pytest.approx(fine / coarse)


@pytest.mark.parametrize(
    "family,z,zp",
    [
        (pho_kp(1.0), 0.3 + 0.2j, 0.5 - 0.1j),
        (harmonic_oscillator(0.5), 0.8 - 0.4j, 0.2 + 0.6j),
        (pho_bg(1.0), 1.0 + 0.5j, -0.3 + 0.7j),
        (pho_gk(1.0), GKLabel(0.7, 0.2), GKLabel(0.4, -0.1)),
    ],
    ids=["pho-kp", "ho-e0", "pho-bg", "pho-gk"],
)
def test_residual_is_self_adjoint(family, z, zp):
    q = ThermalQuery(0.5, z, zp)
    forward = bloch_residual(family, q)
    backward = bloch_residual(family, q.swapped())
    assert abs(forward.lhs - backward.lhs.conjugate()) <= 1e-13
    assert abs(forward.rhs - backward.rhs.conjugate()) <= 1e-13


def test_richardson_refinement():
    family = harmonic_oscillator(0.5)
    q = ThermalQuery(0.5, 1.0, 0.8)
    plain = bloch_residual(family, q, fd_step=1e-2).abs_residual
    refined = bloch_residual(family, q, fd_step=1e-2, richardson=True).abs_residual
    assert refined < plain / 10.0


def test_gk_with_unequal_angles():
    family = pho_gk(1.0)
    q = ThermalQuery(0.5, GKLabel(1.0, 0.2), GKLabel(0.5, 0.0))
    assert bloch_residual(family, q).rel_residual <= 1e-6


def test_eps_below_step_rejected():
    with pytest.raises(InvalidParameters):
        bloch_residual(harmonic_oscillator(), ThermalQuery(5e-5, 1.0, 1.0))
    with pytest.raises(InvalidParameters):
        bloch_residual(harmonic_oscillator(), ThermalQuery(0.5, 1.0, 1.0), fd_step=0.0)


def test_bloch_row_key_and_verdict():
    row = bloch_row(harmonic_oscillator(), ThermalQuery(0.5, 1.0, 0.5))
    assert row.key == ("ho", 0.5, 0.5 + 0j)
    assert row.passed
    failing = bloch_row(harmonic_oscillator(), ThermalQuery(0.5, 1.0, 0.5), tolerance=1e-30)
    assert not failing.passed


def test_hamiltonian_action_at_zero_temperature_parameter():
    # sum of n x^n / n! is x e^x
    value = apply_hamiltonian_series(harmonic_oscillator().spectrum, harmonic_oscillator(), 0.7)
    assert value == pytest.approx(0.7 * math.exp(0.7), rel=1e-14)


@pytest.mark.parametrize("family", [harmonic_oscillator(0.5), pho_bg(1.0), pho_bg(2.5)])
@pytest.mark.parametrize("eps", EPS_GRID)
def test_telescoping_identity(family, eps):
    assert telescoping_check(family, ThermalQuery(eps, 1.0, 0.8)).passed


def test_telescoping_needs_linear_bg_family():
    with pytest.raises(InvalidParameters):
        telescoping_check(quadratic(1.0), ThermalQuery(0.5, 1.0, 0.8))


def test_oscillator_closed_form_solution():
    report = closed_form_solution_check(EPS_GRID, X_GRID, tolerance=1e-12)
    assert report.passed
    assert len(report.rows) == 9
    single = closed_form_solution_check(0.3, 0.2 + 0.1j)
    assert single.passed
    assert single.name == "closed-form:ho"
    renamed = closed_form_solution_check(0.3, 0.2, name="closed-form:plain")
    assert renamed.name == "closed-form:plain"
