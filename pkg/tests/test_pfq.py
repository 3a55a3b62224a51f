import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import poch

from ghcs.core.config import NumericSettings, override_settings
from ghcs.core.errors import InvalidParameters, NotConverged, OutOfRadius, StructureOverflow
from ghcs.series.pfq import (
    HypergeometricParams,
    Kind,
    asymptotic_1f1,
    closed_form,
    convergence_radius,
    eval_pfq,
    log_pochhammer,
    ode_residual_coefficients,
    pfq_series,
    pochhammer,
    pochhammer_shift_check,
    structure_constant,
    structure_constant_log,
)
from ghcs.series.power_series import PowerSeries

KUMMER_ERF = HypergeometricParams.of((1.0,), (1.5,))


def erf_oracle(x: float) -> float:
    root = math.sqrt(x)
    return math.sqrt(math.pi) * math.exp(x) * math.erf(root) / (2.0 * root)


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


def test_params_reject_mismatched_lengths():
    with pytest.raises(InvalidParameters):
        HypergeometricParams(1, 1, (1.0,), ())


@pytest.mark.parametrize("b", [0.0, -1.0, -3.0])
def test_params_reject_vanishing_denominator(b):
    with pytest.raises(InvalidParameters):
        HypergeometricParams.of((), (b,))


def test_params_reject_zero_radius():
    with pytest.raises(InvalidParameters):
        HypergeometricParams.of((1.0, 1.0, 1.0), (2.0,))


def test_dual_swaps_lists():
    params = HypergeometricParams.of((1.0, 2.0), (3.0,))
    dual = params.dual()
    assert (dual.p, dual.q, dual.a, dual.b) == (1, 2, (3.0,), (1.0, 2.0))
    assert dual.dual() == params


def test_label_and_terminating_order():
    assert KUMMER_ERF.label() == "1F1(1;1.5)"
    assert HypergeometricParams.of((-3.0, 1.0), (2.0,)).terminating_order == 3
    assert KUMMER_ERF.terminating_order is None


# ---------------------------------------------------------------------------
# Pochhammer symbols and structure constants
# ---------------------------------------------------------------------------


def test_pochhammer_values():
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(0.5, 3) == pytest.approx(1.875, rel=1e-15)
    assert pochhammer(-2.0, 3) == 0.0


@pytest.mark.parametrize("x,n", [(0.5, 10), (3.0, 40), (-0.5, 3), (-2.5, 6)])
def test_log_pochhammer_matches_direct_product(x, n):
    assert log_pochhammer(x, n) == pytest.approx(math.log(abs(pochhammer(x, n))), rel=1e-13)


def test_log_pochhammer_of_vanishing_product():
    assert log_pochhammer(-2.0, 5) == -math.inf


@given(
    st.floats(min_value=0.1, max_value=10.0, allow_nan=False),
    st.integers(min_value=0, max_value=30),
)
@settings(max_examples=200, deadline=None)
def test_pochhammer_shift_identities(x, n):
    first, second = pochhammer_shift_check(x, n)
    assert first <= 1e-13
    assert second <= 1e-13


@given(
    st.floats(min_value=0.2, max_value=5.0),
    st.floats(min_value=0.2, max_value=5.0),
    st.integers(min_value=0, max_value=40),
)
@settings(max_examples=200, deadline=None)
def test_structure_constant_recurrence(a, b, n):
    params = HypergeometricParams.of((a,), (b,))
    ratio = structure_constant(params, Kind.BG, n + 1) / structure_constant(params, Kind.BG, n)
    assert ratio == pytest.approx((n + 1) * (b + n) / (a + n), rel=1e-12)


def test_structure_constants_of_kummer_kernel():
    params = HypergeometricParams.of((1.0,), (2.0,))
    for n in range(8):
        assert structure_constant(params, Kind.BG, n) == pytest.approx(math.factorial(n + 1))
        assert structure_constant(params, Kind.KP, n) == pytest.approx(math.factorial(n) / (n + 1))


def test_structure_constant_against_scipy_poch():
    params = HypergeometricParams.of((0.7,), (1.3, 2.1))
    for n in range(15):
        expected = math.factorial(n) * poch(1.3, n) * poch(2.1, n) / poch(0.7, n)
        assert structure_constant(params, Kind.BG, n) == pytest.approx(expected, rel=1e-12)


def test_terminating_series_has_infinite_structure_constant():
    params = HypergeometricParams.of((-2.0,), (1.0,))
    assert structure_constant(params, Kind.BG, 3) == math.inf


def test_structure_constant_overflow():
    with pytest.raises(StructureOverflow):
        structure_constant(HypergeometricParams(0, 0), Kind.BG, 171)


def test_structure_constant_past_factorial_range():
    # (;2) under KP: ρ(n) = n!/(n+1)! while both factorials leave the double range
    params = HypergeometricParams.of((), (2.0,))
    for n in (170, 171, 400):
        assert structure_constant(params, Kind.KP, n) == pytest.approx(1.0 / (n + 1), rel=1e-11)
    with pytest.raises(StructureOverflow):
        structure_constant(params, Kind.BG, 171)


def test_structure_constant_sign_survives_log_domain():
    params = HypergeometricParams.of((-2.5,), (1.0,))
    value = structure_constant(params, Kind.KP, 171)
    assert value < 0
    assert value == pytest.approx(pochhammer(-2.5, 171), rel=1e-11)


def test_structure_constant_log_beyond_double_range():
    params = HypergeometricParams(0, 0)
    assert structure_constant_log(params, Kind.BG, 500) == pytest.approx(math.lgamma(501))
    assert structure_constant_log(params, Kind.BG, 12) == pytest.approx(
        math.log(math.factorial(12)), rel=1e-14
    )


def test_gk_structure_constant_needs_family():
    with pytest.raises(InvalidParameters):
        structure_constant(KUMMER_ERF, Kind.GK, 2)


def test_convergence_radius():
    assert convergence_radius(HypergeometricParams(0, 0)) == math.inf
    assert convergence_radius(KUMMER_ERF) == math.inf
    assert convergence_radius(HypergeometricParams.of((2.0,), ())) == 1.0


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def test_exponential_kernel():
    result = eval_pfq(HypergeometricParams(0, 0), 1.0)
    assert result.value == pytest.approx(math.e, rel=1e-15)
    assert result.converged
    assert result.radius == math.inf


@pytest.mark.parametrize("x", [0.25, 1.0, 4.0])
def test_erf_reduction(x):
    assert eval_pfq(KUMMER_ERF, x).value == pytest.approx(erf_oracle(x), rel=1e-10)


def test_value_at_origin():
    result = eval_pfq(KUMMER_ERF, 0.0)
    assert result.value == 1.0


def test_binomial_inside_radius():
    value = eval_pfq(HypergeometricParams.of((2.0,), ()), 0.5).value
    assert value == pytest.approx(4.0, rel=1e-13)


def test_outside_radius():
    with pytest.raises(OutOfRadius) as info:
        eval_pfq(HypergeometricParams.of((2.0,), ()), 1.5)
    assert info.value.limit == pytest.approx(1.0 - 1e-6)


def test_terminating_series_skips_radius():
    # 2F1(-2, 1; 1; x) = (1 - x)^2
    params = HypergeometricParams.of((-2.0, 1.0), (1.0,))
    assert eval_pfq(params, 3.0).value == pytest.approx(4.0, rel=1e-15)


def test_complex_argument():
    value = eval_pfq(HypergeometricParams(0, 0), 1j).value
    assert value.real == pytest.approx(math.cos(1.0), rel=1e-14)
    assert value.imag == pytest.approx(math.sin(1.0), rel=1e-14)


def test_series_cap():
    override_settings(n_max=5)
    with pytest.raises(NotConverged):
        eval_pfq(HypergeometricParams(0, 0), 10.0)
    relaxed = eval_pfq(HypergeometricParams(0, 0), 10.0, strict=False)
    assert not relaxed.converged
    assert relaxed.terms_used == 6


@given(
    st.floats(min_value=0.2, max_value=5.0),
    st.floats(min_value=0.2, max_value=5.0),
    st.floats(min_value=0.0, max_value=8.0),
)
@settings(max_examples=100, deadline=None)
def test_raising_the_term_cap_never_lowers_the_sum(a, b, x):
    params = HypergeometricParams.of((a,), (b,))
    caps = (1, 2, 4, 8, 16, 32, 64, 128, 256)
    values = [
        eval_pfq(params, x, strict=False, settings=NumericSettings(n_max=cap)).value.real
        for cap in caps
    ]
    assert values == sorted(values)
    assert eval_pfq(params, x, settings=NumericSettings(n_max=512)).value.real == values[-1]


def test_pfq_series_coefficients():
    series = pfq_series(HypergeometricParams(0, 0), 6)
    for n in range(7):
        assert series[n] == pytest.approx(1.0 / math.factorial(n))
    kp = pfq_series(HypergeometricParams.of((), (2.0,)), 4, Kind.KP)
    assert list(kp.coefficients) == pytest.approx([1.0, 2.0, 3.0, 4.0, 5.0])


# ---------------------------------------------------------------------------
# Closed forms, differential equation, asymptotics
# ---------------------------------------------------------------------------


def test_closed_forms():
    assert closed_form(HypergeometricParams(0, 0), 0.3) == pytest.approx(math.exp(0.3))
    assert closed_form(HypergeometricParams.of((2.0,), ()), 0.5) == pytest.approx(4.0)
    assert closed_form(HypergeometricParams.of((1.7,), (1.7,)), 0.3) == pytest.approx(
        math.exp(0.3)
    )
    assert closed_form(KUMMER_ERF, 1.0) == pytest.approx(erf_oracle(1.0), rel=1e-14)
    assert closed_form(HypergeometricParams.of((1.0,), (2.0,)), 0.5) == pytest.approx(
        (math.exp(0.5) - 1.0) / 0.5, rel=1e-15
    )
    assert closed_form(HypergeometricParams.of((), (2.0,)), 1.0) is None


def test_closed_form_negative_argument_matches_series():
    assert closed_form(KUMMER_ERF, -1.0) == pytest.approx(
        eval_pfq(KUMMER_ERF, -1.0).value, rel=1e-12
    )


def test_closed_form_binomial_outside_radius():
    with pytest.raises(OutOfRadius):
        closed_form(HypergeometricParams.of((2.0,), ()), 1.0)


@pytest.mark.parametrize(
    "params",
    [
        HypergeometricParams(0, 0),
        KUMMER_ERF,
        HypergeometricParams.of((1.0,), (2.0,)),
        HypergeometricParams.of((2.0,), ()),
        HypergeometricParams.of((), (2.0,)),
        HypergeometricParams.of((0.5, 1.5), (2.5,)),
    ],
)
def test_differential_equation_recurrence(params):
    assert ode_residual_coefficients(params, 50) <= 1e-14


def test_differential_equation_checks_top_order(monkeypatch):
    def corrupted(params, order, kind=Kind.BG):
        coeffs = np.array(pfq_series(params, order, kind).coefficients)
        if order > 50:
            coeffs[51] *= 1.5
        return PowerSeries(coeffs)

    monkeypatch.setattr("ghcs.series.pfq.pfq_series", corrupted)
    assert ode_residual_coefficients(HypergeometricParams(0, 0), 50) > 0.1


def test_asymptotic_kummer():
    exact = eval_pfq(KUMMER_ERF, 30.0).value
    assert abs(asymptotic_1f1(1.0, 1.5, 30.0) / exact - 1.0) <= 0.02
