import logging

from checks import CerfError, Check, CheckReport, find_failures, log_failures


def test_empty_report_is_ok():
    report = CheckReport()
    assert report.ok
    assert report.failures == []
    assert report.as_dict() == {"ok": True, "checks": []}


def test_failures_keep_input_order():
    checks = [Check("a", True), Check("b", False, "broken"), Check("c", False)]
    assert [c.name for c in find_failures(checks)] == ["b", "c"]
    report = CheckReport.from_checks(checks)
    assert not report.ok
    assert report.as_dict()["checks"][1] == {"name": "b", "passed": False, "detail": "broken"}


def test_merged_prefixes_names():
    first = CheckReport.from_checks([Check("x", True)])
    second = CheckReport.from_checks([Check("y", False)])
    merged = first.merged(second, prefix="alpha.")
    assert [c.name for c in merged.checks] == ["x", "alpha.y"]
    assert not merged.ok


def test_log_failures_one_line_per_failed_check(caplog):
    logger = logging.getLogger("cerf_forge.test")
    report = CheckReport.from_checks([Check("a", False, "why"), Check("b", True), Check("c", False)])
    with caplog.at_level(logging.WARNING, logger="cerf_forge.test"):
        assert log_failures(report, logger, "morse") is False
    messages = [r.getMessage() for r in caplog.records]
    assert messages == ["morse: check a failed (why)", "morse: check c failed"]


def test_error_code_override():
    assert CerfError("x").code == "CERF_ERROR"
    assert CerfError("x", code="DANGLING_ID").code == "DANGLING_ID"
