"""
Tests for the verification-report runner.
"""

import pytest

from ssiwasawa.verify.suite import (
    DEFAULT_CHECKS,
    CheckItem,
    CheckStatus,
    VerificationReport,
    VerificationSuite,
    check_q_values,
    run_verification,
)


@pytest.fixture
def suite(settings):
    """An empty suite for the default test settings."""
    return VerificationSuite(settings)


def test_register_check(suite):
    """Test that checks are registered once and run in order."""
    suite.register_check("q_values", check_q_values)
    with pytest.raises(ValueError):
        suite.register_check("q_values", check_q_values)
    report = suite.run()
    assert [item.status for item in report.items] == [CheckStatus.PASS]
    assert not report.failed


def test_raising_check_is_a_failure(suite):
    def broken(_suite):
        raise RuntimeError("boom")

    suite.register_check("broken", broken)
    report = suite.run()
    assert report.failed
    assert report.items[0].name == "broken"
    assert "RuntimeError: boom" in report.items[0].detail


def test_report_render():
    report = VerificationReport(
        header=["ssiwasawa verify: p=3"],
        items=[
            CheckItem(name="a", status=CheckStatus.PASS, digits=6),
            CheckItem(name="b", status=CheckStatus.INFO, detail="note"),
        ],
    )
    lines = report.render().splitlines()
    assert lines[0] == "ssiwasawa verify: p=3"
    assert lines[1] == "PASS  a  digits=6"
    assert lines[2] == "INFO  b  digits=-  note"
    assert lines[-1] == "summary: 1 passed, 0 failed, 1 informational"
    assert report.counts() == {"PASS": 1, "FAIL": 0, "INFO": 1}
    assert not report.failed


def test_header_echoes_settings(suite, settings):
    settings.hypotheses.S = True
    header = suite.header()
    assert header[0].startswith("ssiwasawa verify: p=3 N=6 D=24")
    assert "e0=zero" in header[0]
    assert "(S)=yes" in header[1]
    assert "a_p=0 assumed" in header[1]


def test_default_checks_have_unique_names():
    names = [name for name, _ in DEFAULT_CHECKS]
    assert len(names) == len(set(names))


def test_default_run_has_no_failures(settings):
    """Test the full default suite at p = 3."""
    report = run_verification(settings)
    failures = [item.render() for item in report.items if item.status is CheckStatus.FAIL]
    assert failures == []
    assert report.counts()["PASS"] > 0
