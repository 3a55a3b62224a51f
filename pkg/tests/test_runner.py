import pytest

from ghcs.auditors.runner import RunReport, SuiteRunner, build_suite
from ghcs.core.errors import InvalidParameters, UnknownPreset
from ghcs.core.models import VerificationReport, make_row
from ghcs.presets import builtin_registry, parse_registry


def names(reports):
    return [report.name for report in reports]


def test_unknown_suite():
    with pytest.raises(InvalidParameters):
        build_suite("everything", builtin_registry())


def test_unknown_preset_in_selection():
    with pytest.raises(UnknownPreset):
        build_suite("bloch", builtin_registry(), ["morse"])


def test_bloch_suite_on_oscillator():
    reports = build_suite("bloch", builtin_registry(), ["ho"]).execute()
    assert names(reports) == [
        "bloch:ho",
        "boundary:ho",
        "closed-form:ho",
        "husimi:ho",
        "partition:ho",
        "step-scaling:ho",
    ]
    assert all(report.passed for report in reports)


def test_report_names_match_registered_names():
    runner = build_suite("all", builtin_registry())
    registered = sorted(name for name, _ in runner.checks)
    reported = names(runner.execute())
    assert reported == registered
    assert len(set(reported)) == len(reported)
    assert {"duality:ho", "closed-form:ho", "closed-form:erf", "asymptotics"} <= set(reported)


def test_every_suite_passes_on_builtins():
    reports = build_suite("all", builtin_registry()).execute()
    failed = [report.name for report in reports if not report.passed]
    assert failed == []
    assert names(reports) == sorted(names(reports))


def test_custom_registry_names_every_report():
    registry = parse_registry(
        '{"plain": {"kind": "BG", "p": 0, "q": 0, "spectrum": {"variant": "linear"},'
        ' "weight": {"name": "ho"}}}'
    )
    reports = build_suite("all", registry).execute()
    shared = {"asymptotics", "closed-form:erf"}
    assert all(report.name.endswith(":plain") for report in reports if report.name not in shared)
    assert {"moments:plain", "doubling:plain", "unity:plain"} <= set(names(reports))
    assert all(report.passed for report in reports)


def test_moments_skip_presets_without_weight():
    reports = build_suite("moments", builtin_registry(), ["ho-e0", "pho-gk", "pho-kp"]).execute()
    assert names(reports) == ["doubling:pho-kp", "moments:pho-kp", "unity:pho-kp"]
    doubling = reports[0]
    assert [row.key[1] for row in doubling.rows] == [50, 100, 200]
    assert doubling.passed


def test_zero_point_audit_is_informational():
    reports = build_suite("identities", builtin_registry(), ["ho-e0"]).execute()
    audit = next(report for report in reports if report.name == "audit:ho-e0")
    assert audit.passed
    informational = [row for row in audit.rows if row.informational]
    assert informational
    assert all(row.key[2] > 0.0 for row in informational)
    assert not any(row.informational for row in audit.rows if row.key[1] == "product-routes")


def test_audits_only_for_matching_kernels():
    reports = build_suite("identities", builtin_registry(), ["pho-kp", "quadratic"]).execute()
    assert not any(name.startswith("audit:") for name in names(reports))
    assert "action:quadratic" in names(reports)
    assert "action:pho-kp" not in names(reports)


def test_recurrence_worst_is_the_judged_residual():
    reports = build_suite("identities", builtin_registry(), ["pho-bg"]).execute()
    recurrence = next(report for report in reports if report.name == "recurrence:pho-bg")
    assert recurrence.passed
    assert recurrence.worst <= 1e-14
    assert recurrence.rows[0].measured == recurrence.rows[0].abs_error


def test_identity_suite_carries_closed_form_and_asymptotics():
    reports = build_suite("identities", builtin_registry(), ["ho"]).execute()
    by_name = {report.name: report for report in reports}
    assert len(by_name["closed-form:erf"].rows) == 3
    assert by_name["closed-form:erf"].worst <= 1e-10
    assert len(by_name["asymptotics"].rows) == 2
    assert by_name["asymptotics"].passed


def test_serial_and_parallel_agree():
    registry = builtin_registry()
    serial = build_suite("identities", registry, ["ho", "pho-bg"]).execute(parallel=False)
    parallel = build_suite("identities", registry, ["ho", "pho-bg"]).execute(parallel=True)
    assert serial == parallel


def test_runner_orders_by_name():
    runner = SuiteRunner(max_workers=2)
    runner.register("b", lambda: VerificationReport("b", 1.0))
    runner.register("a", lambda: VerificationReport("a", 1.0))
    assert names(runner.execute()) == ["a", "b"]


def test_runner_propagates_errors():
    def broken():
        raise InvalidParameters("bad")

    runner = SuiteRunner()
    runner.register("ok", lambda: VerificationReport("ok", 1.0))
    runner.register("broken", broken)
    with pytest.raises(InvalidParameters):
        runner.execute()


def test_summary_lines():
    passing = VerificationReport(
        "audit:x",
        1e-12,
        [
            make_row(("x", 1), 1.0, 1.0, 1e-12),
            make_row(("x", 2), 1.0, 2.0, 1e-12, informational=True),
        ],
    )
    failing = VerificationReport("bloch:x", 1e-6, [make_row(("x", 0.1), 1.0, 1.1, 1e-6)])
    run = RunReport("verify all", [passing, failing])
    lines = run.summary_lines()
    assert lines[0] == "command: verify all"
    assert lines[1].startswith("audit:x: pass rows=2")
    assert lines[1].endswith("(1 informational)")
    assert lines[2].startswith("bloch:x: FAIL rows=1")
    assert lines[-1].startswith("overall: FAIL")
    assert not run.passed
    assert run.worst == pytest.approx(0.1 / 1.1)


def test_worst_is_judged_on_absolute_rows_too():
    row = make_row(("x", 50), 3e-16, 0.0, 1e-14, absolute=True)
    report = VerificationReport("recurrence:x", 1e-14, [row])
    assert row.rel_error == 1.0
    assert report.passed
    assert report.worst == 3e-16
    assert RunReport("verify identities", [report]).summary_lines()[-1] == (
        "overall: pass worst=3.000e-16"
    )
