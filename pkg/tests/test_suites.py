import pytest

from flagdivisor.montecarlo import McConfig, Status
from flagdivisor.suites import (
    SUITES,
    BaseSuite,
    BlockDetSuite,
    TaskStatus,
    run_suite,
    suite_passed,
)

CFG = McConfig(seed=7)


@pytest.mark.parametrize(
    "name, max_n, rows",
    [
        ("gamma", 4, 2 * (1 + 3 + 7)),
        ("lemmared", 4, 3 * (1 + 3 + 7)),
        ("case5", 4, 1 * 1 + 3 * 2 + 7 * 3),
        ("irr", 3, 1 + 3),
    ],
)
def test_suites_pass(name, max_n, rows):
    result = run_suite(name, max_n, CFG)
    assert result["suite"] == name
    assert result["status"] == TaskStatus.SUCCESS.value
    assert result["error"] == ""
    assert len(result["results"]) == rows
    assert suite_passed(result)


def test_blockdet_suite_marks_screened_specs():
    result = run_suite("blockdet", 5, CFG)
    frame = result["results"]
    assert suite_passed(result)
    screened = frame[frame["check"] == "screen"]
    assert "M(1,1,3;3,1,1)" in set(screened["item"])
    assert set(frame["status"]) <= {"pass", "skipped", "not_applicable"}


def test_blockdet_cap():
    with pytest.raises(ValueError):
        BlockDetSuite(8)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("bogus")


def test_registry():
    assert sorted(SUITES) == ["blockdet", "case5", "gamma", "irr", "lemmared"]


class ExplodingSuite(BaseSuite):
    name = "exploding"

    def items(self):
        return [1, 2]

    def check(self, item):
        if item == 2:
            raise RuntimeError("boom")
        return [self.row("one", "noop", Status.PASS)]


def test_errors_are_recorded_and_the_sweep_continues():
    result = ExplodingSuite(3, CFG).run()
    assert result["status"] == TaskStatus.FAILED.value
    assert "boom" in result["error"]
    frame = result["results"]
    assert list(frame["check"]) == ["noop", "error"]
    assert not suite_passed(result)
