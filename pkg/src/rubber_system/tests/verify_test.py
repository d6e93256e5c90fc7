import pytest


def test_series_and_trees_suites():
    from rubber_system.api.verify import run_suites

    checks = run_suites(["series", "trees"], max_n=5, seed=1)
    assert {check.suite for check in checks} == {"series", "trees"}
    assert len(checks) == 9
    failed = [check for check in checks if not check.passed]
    assert not failed, failed


def test_oracle_suite():
    from rubber_system.api.verify import run_suites

    checks = run_suites("oracle", max_n=4)
    assert [check.check for check in checks] == [
        "types biject with partitions",
        "classes from types",
        "local calculation and stabilization",
        "ribbon tree sums",
        "decomposition identity",
    ]
    assert all(check.passed for check in checks), checks


def test_strata_suite():
    from rubber_system.api.verify import run_suites

    checks = run_suites("strata", max_n=5)
    assert all(check.passed for check in checks), checks


@pytest.mark.slow
def test_recursion_and_chamber_suites():
    from rubber_system.api.verify import run_suites

    checks = run_suites(["recursion", "chambers"], max_n=6)
    assert all(check.passed for check in checks), checks


def test_failing_check_is_reported():
    import mock

    from rubber_system.api import verify

    boom = RuntimeError("boom")
    with mock.patch.object(verify.oracle, "cake_check", side_effect=boom):
        checks = verify.run_suites("oracle", max_n=3)
    (cake,) = [check for check in checks if check.check == "decomposition identity"]
    assert not cake.passed
    assert cake.detail == "RuntimeError: boom"


def test_bad_arguments():
    from rubber_system.api.verify import run_suites
    from rubber_system.misc.exceptions import ValidationError

    with pytest.raises(ValidationError):
        run_suites("nonsense")
    with pytest.raises(ValidationError):
        run_suites(["series", "nonsense"])
    with pytest.raises(ValidationError):
        run_suites("series", max_n=2)


def test_user_layer_verify():
    import rubbermaps
    from rubber_system.misc.exceptions import VerificationFailure

    checks = rubbermaps.verify("series", max_n=4)
    assert all(check.passed for check in checks)
    table = rubbermaps.verify_report(checks)
    assert table.row_count == len(checks)
    with mock_failure():
        with pytest.raises(VerificationFailure) as error:
            rubbermaps.verify("series", max_n=4, strict=True)
    assert error.value.exit_code == 2
    assert error.value.details()["failed"] == ["series/exp of log1p"]


def mock_failure():
    import mock

    return mock.patch("rubber_system.api.series.exp", side_effect=ValueError("nope"))


@pytest.mark.slow
def test_wall_crossing_needs_a_pair():
    import mock

    from rubber_system.api import verify

    with mock.patch.object(verify.chambers, "sample_across_wall", return_value=None):
        checks = verify.run_suites("chambers", max_n=4, seed=3)
    (crossing,) = [c for c in checks if c.check == "restricted wall crossing"]
    assert not crossing.passed
    assert crossing.detail == "no pair across a wall was found"
