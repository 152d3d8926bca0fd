"""Test helper utilities."""

from tests.helpers.assertion_helpers import assert_exact, assert_records_pass, assert_report_ok

__all__ = ["assert_exact", "assert_records_pass", "assert_report_ok"]
