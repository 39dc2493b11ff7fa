import logging

import pytest

from flagdivisor.montecarlo import (
    MAX_SAMPLE_BOUND,
    McConfig,
    Status,
    Verdict,
    coprime_mc,
    exact_verdict,
    squarefree_mc,
    worst,
)
from flagdivisor.polyring import Polynomial, VarId
from flagdivisor.util import sample_integers, verdict_rng


def a(row, col):
    return Polynomial.var(VarId.entry(row, col))


CFG = McConfig(trials=8, seed=1)


class TestConfig:
    @pytest.mark.parametrize("kwargs", [{"trials": 0}, {"sample_bound": 0}, {"sample_bound": 2**63}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            McConfig(**kwargs)

    def test_trial_bound(self):
        assert McConfig(sample_bound=10).trial_bound(3) == 3 / 21

    def test_sample_bound_limit(self):
        assert McConfig(sample_bound=MAX_SAMPLE_BOUND).sample_bound == 2**62
        with pytest.raises(ValueError):
            McConfig(sample_bound=MAX_SAMPLE_BOUND + 1)

    def test_small_sample_bound_warns(self, caplog):
        caplog.set_level(logging.WARNING, logger="flagdivisor.montecarlo")
        f = a(1, 1) * a(1, 2) + a(2, 1)
        squarefree_mc(f, McConfig(seed=1, sample_bound=1), "small-bound")
        assert any("below 2 * degree" in r.getMessage() for r in caplog.records)
        caplog.clear()
        squarefree_mc(f, CFG, "default-bound")
        assert not any("below 2 * degree" in r.getMessage() for r in caplog.records)

    def test_rng_is_reproducible(self):
        first = sample_integers(verdict_rng(9, "x"), 100, 5)
        second = sample_integers(verdict_rng(9, "x"), 100, 5)
        other = sample_integers(verdict_rng(9, "y"), 100, 5)
        assert first == second
        assert first != other
        assert all(-100 <= v <= 100 for v in first)


class TestSquarefree:
    def test_repeated_monomial_factor_fails(self):
        f = (a(1, 1) * a(1, 2)) ** 2
        verdict = squarefree_mc(f, CFG)
        assert verdict.status is Status.FAIL
        assert "divides every term" in verdict.evidence

    def test_product_of_distinct_variables_passes(self):
        verdict = squarefree_mc(-a(1, 2) * a(2, 1), CFG)
        assert verdict.status is Status.PASS
        assert verdict.informative >= 1
        assert verdict.trial_bound == 2 / (2 * CFG.sample_bound + 1)

    def test_square_without_witness_is_suspect(self):
        line = a(1, 1) + a(1, 2)
        assert squarefree_mc(line * line, CFG).status is Status.SUSPECT
        assert squarefree_mc(line * line, CFG, candidates=[line]).status is Status.FAIL

    def test_zero_raises(self):
        with pytest.raises(ValueError):
            squarefree_mc(Polynomial(), CFG)

    def test_same_id_same_verdict(self):
        f = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)
        assert squarefree_mc(f, CFG, "det") == squarefree_mc(f, CFG, "det")


class TestCoprime:
    def test_same_polynomial_fails(self):
        f = a(1, 1) - a(1, 2)
        verdict = coprime_mc(f, f, CFG)
        assert verdict.status is Status.FAIL

    def test_distinct_variables_pass_without_sampling(self):
        verdict = coprime_mc(a(1, 1), a(2, 2), CFG)
        assert verdict.status is Status.PASS
        assert verdict.trials == 0

    def test_constant(self):
        assert coprime_mc(Polynomial.constant(3), a(1, 1), CFG).status is Status.PASS

    def test_shared_factor(self):
        line = a(1, 1) + a(1, 2)
        f, g = line * a(2, 1), line * a(2, 2)
        assert coprime_mc(f, g, CFG).status is Status.SUSPECT
        assert coprime_mc(f, g, CFG, candidates=[line]).status is Status.FAIL

    def test_overlapping_but_coprime(self):
        f = a(1, 1) * a(1, 2) + 1
        g = a(1, 1) + a(1, 2)
        assert coprime_mc(f, g, CFG).status is Status.PASS

    def test_zero_raises(self):
        with pytest.raises(ValueError):
            coprime_mc(Polynomial(), a(1, 1), CFG)


def test_worst():
    verdicts = [exact_verdict("a", True), Verdict(Status.SUSPECT, "b"), Verdict(Status.NOT_APPLICABLE, "c")]
    assert worst(verdicts) is Status.SUSPECT
    assert worst([Verdict(Status.NOT_APPLICABLE, "c")]) is Status.NOT_APPLICABLE
    assert not Verdict(Status.SUSPECT, "b").ok
