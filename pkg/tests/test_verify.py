import pytest

from carlitzq.padic_core import INF
from carlitzq.verify import SUITES, SweepConfig, VerificationReport, run_suite


def test_report_pass_rule():
    assert VerificationReport("x", {}, ("a", "b"), 8, 8).passed
    assert not VerificationReport("x", {}, ("a", "b"), 7, 8).passed
    assert VerificationReport("x", {}, ("a", "b"), INF, INF).passed
    assert VerificationReport("x", {}, ("a", "b"), INF, INF).to_dict()["agreement"] == "exact"


@pytest.mark.parametrize("suite", SUITES)
def test_quick_suites_pass(suite):
    reports = list(run_suite(suite, SweepConfig(quick=True)))
    assert reports
    failed = [r for r in reports if not r.passed]
    assert not failed, failed[:3]


def test_unknown_suite():
    with pytest.raises(KeyError):
        list(run_suite("nope"))


def test_low_level_cap_is_reported_not_raised():
    reports = list(run_suite("witt", SweepConfig(quick=True, max_level=2, target=10)))
    assert any(not r.passed and "PrecisionNotReached" in r.detail for r in reports)
