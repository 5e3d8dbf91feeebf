"""Tests for the validation report renderers."""

from certann.ui import validation_renderers  # noqa: F401
from certann.validation import (
    BoundRow,
    FalsePositiveReport,
    PropertyCheck,
    PropertyReport,
    ValidationReport,
)


def test_validation_report_clamps_vacuous_bound(recording_ui):
    row = BoundRow(
        d=1,
        p="1",
        c_over_tau=0.25,
        distribution="rademacher",
        trials=10,
        rate=0.0,
        wilson_upper=0.3,
        bound=1.2130613194252668,
        passed=True,
    )
    report = ValidationReport(title="tightness", seed=9, workers=2, rows=[row])

    recording_ui.display(report)

    output = recording_ui.console.export_text()
    assert "1.21306" not in output
    assert "1/1 pass (seed 9, 2 workers)" in output


def test_false_positive_report(recording_ui):
    report = FalsePositiveReport(
        builds=30,
        queries=100,
        k=4,
        mean_far_candidates=2.5,
        margin=0.25,
        bound=10.0,
    )

    recording_ui.display(report)

    output = recording_ui.console.export_text()
    assert "30 builds x 100 queries (k=4)" in output
    assert "pass" in output


def test_property_report(recording_ui):
    report = PropertyReport(
        title="norms",
        checks=[
            PropertyCheck(name="l1", d=4, p="2", samples=5, violations=1),
        ],
    )

    recording_ui.display(report)

    assert "FAIL" in recording_ui.console.export_text()
