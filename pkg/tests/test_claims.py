"""The fixed checklist: registry integrity, failure capture, determinism."""

import pytest

from zerotrace.claims import CHECKS, CheckResult, run_checks
from zerotrace.errors import InvalidInputError


def test_full_registry_passes():
    results = run_checks()
    assert [r.name for r in results] == list(CHECKS)
    failed = [(r.name, r.error) for r in results if not r.passed]
    assert failed == []
    for r in results:
        assert r.error is None
        assert r.assertion == CHECKS[r.name][0]
        assert isinstance(r.details, dict) and r.details


def test_subset_selection_preserves_request_order():
    names = ["json_round_trips", "grid_membership_pattern"]
    results = run_checks(names)
    assert [r.name for r in results] == names
    assert all(r.passed for r in results)


def test_unknown_check_name_rejected():
    with pytest.raises(KeyError):
        run_checks(["no_such_check"])


def test_failing_check_is_captured_not_raised():
    def boom(ctx):
        raise AssertionError("designed failure")

    def invalid(ctx):
        raise InvalidInputError("designed invalid input")

    CHECKS["designed_failure"] = ("always fails", boom)
    CHECKS["designed_invalid"] = ("always invalid", invalid)
    try:
        results = run_checks(["designed_failure", "designed_invalid"])
    finally:
        del CHECKS["designed_failure"]
        del CHECKS["designed_invalid"]
    assert [r.passed for r in results] == [False, False]
    assert "AssertionError: designed failure" in results[0].error
    assert "InvalidInputError: designed invalid input" in results[1].error
    assert results[0].details == {}


def test_results_deterministic_across_fresh_contexts():
    names = ["grid_membership_pattern", "maximal_profile_counts", "line_cover_blocks"]
    first = run_checks(names)
    second = run_checks(names)
    assert [(r.name, r.passed, r.details) for r in first] == [
        (r.name, r.passed, r.details) for r in second
    ]


def test_check_result_is_frozen():
    r = CheckResult("x", "y", True, {})
    with pytest.raises(AttributeError):
        r.passed = False
