"""Custom assertion helpers for tests."""

from fractions import Fraction

from geocrystal.models import CheckRecord, SuiteReport


def assert_records_pass(records: list[CheckRecord]) -> None:
    """Every non-advisory record ran at least one sample and failed none.

    Advisory records are reported but never asserted on.
    """
    for record in records:
        if record.advisory:
            continue
        label = f"{record.suite}/{record.check}"
        assert record.failed == 0, f"{label} failed: {record.details}"
        assert record.passed > 0, f"{label} ran no samples (skipped={record.skipped})"


def assert_report_ok(report: SuiteReport) -> None:
    assert_records_pass(report.records)
    assert report.ok
    assert report.summary()["status"] == "ok"


def assert_exact(value: object, expected: Fraction | int, label: str = "value") -> None:
    """Exact rational equality; floats are rejected outright."""
    assert not isinstance(value, float), f"{label} must be exact, got float {value}"
    assert value == Fraction(expected), f"{label}: {value} != {expected}"
