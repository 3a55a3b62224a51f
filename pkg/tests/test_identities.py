import logging
import math

import pytest

from ghcs.auditors.identities import (
    asymptotics_check,
    audit_product_identity,
    audit_ratio_identity,
    erf_closed_form_check,
)
from ghcs.core.errors import InvalidParameters

LN2 = math.log(2.0)


def kummer_half(x: float) -> float:
    # 1F1(1; 3/2; x) through erf
    root = math.sqrt(x)
    return math.sqrt(math.pi) * math.exp(x) * math.erf(root) / (2.0 * root)


@pytest.mark.parametrize("eps", [0.0, LN2, 1.0])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_identities_hold_without_zero_point(eps, x):
    product = audit_product_identity(0.0, eps, x)
    ratio = audit_ratio_identity(0.0, eps, x)
    assert product.exact_expected and ratio.exact_expected
    assert product.abs_diff <= 1e-12
    assert ratio.abs_diff <= 1e-12
    assert product.route_diff <= 1e-12


def test_product_discrepancy_with_zero_point(caplog):
    with caplog.at_level(logging.WARNING, logger="ghcs.identities"):
        audit = audit_product_identity(0.5, LN2, 1.0)
    shrink = 0.5
    expected = math.exp(-LN2 * 0.5) * abs(
        kummer_half(shrink) - kummer_half(1.0) * math.exp(shrink - 1.0)
    )
    assert not audit.exact_expected
    assert audit.abs_diff == pytest.approx(expected, abs=1e-10)
    assert 0.1 < audit.abs_diff < 0.3
    assert audit.route_diff <= 1e-12
    assert "informational" in caplog.text


def test_ratio_discrepancy_with_zero_point():
    audit = audit_ratio_identity(0.5, LN2, 1.0)
    expected = abs(kummer_half(0.5) / kummer_half(1.0) - math.exp(-0.5))
    assert audit.abs_diff == pytest.approx(expected, abs=1e-10)
    assert not audit.exact_expected


def test_identity_row_is_informational_for_zero_point():
    row = audit_product_identity(0.5, LN2, 1.0).to_row(("ho-e0", "product"), 1e-12)
    assert row.informational
    assert not row.passed
    exact = audit_product_identity(0.0, LN2, 1.0).to_row(("ho", "product"), 1e-12)
    assert exact.passed and not exact.informational


def test_zero_temperature_parameter_is_trivially_exact(caplog):
    with caplog.at_level(logging.WARNING, logger="ghcs.identities"):
        audit = audit_product_identity(0.5, 0.0, 1.0)
        ratio = audit_ratio_identity(0.5, 0.0, 1.0)
    assert audit.abs_diff <= 1e-12
    assert ratio.abs_diff <= 1e-12
    assert caplog.records == []


def test_negative_zero_point_rejected():
    with pytest.raises(InvalidParameters):
        audit_product_identity(-0.5, LN2, 1.0)


def test_erf_reduction_report():
    report = erf_closed_form_check()
    assert report.name == "closed-form:erf"
    assert [row.key[1] for row in report.rows] == [0.25, 1.0, 4.0]
    assert report.worst <= 1e-10
    for row in report.rows:
        assert row.rhs == pytest.approx(kummer_half(row.key[1]), rel=1e-15)
    with pytest.raises(InvalidParameters):
        erf_closed_form_check([0.0])


def test_asymptotics_report():
    report = asymptotics_check()
    assert report.passed
    kummer, element = report.sorted().rows
    assert kummer.key[1] == "kummer" and kummer.rel_error <= 0.02
    assert element.key[1] == "omega" and element.rel_error <= 0.03
