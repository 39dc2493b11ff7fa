"""Randomized square-freeness and coprimality tests by line restriction.

A multivariate f is restricted to random integer lines base + t * direction.
A trial is informative when the restriction keeps the total degree of f:
every factor of f then restricts to a factor of the same degree, so a
square-free (resp. coprime) informative restriction certifies square-freeness
(resp. coprimality) of f itself. Without such a certificate the verdict is
FAIL only if a structural witness is found, and SUSPECT otherwise.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from time import perf_counter
from typing import Any, Dict, List, Optional, Sequence, Tuple

from flagdivisor.polyring import (
    Polynomial,
    VarId,
    divides,
    monomial_content,
    univariate_gcd,
    univariate_squarefree,
)
from flagdivisor.util import sample_integers, verdict_rng

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 8
DEFAULT_SAMPLE_BOUND = 10**6
MAX_SAMPLE_BOUND = 2**62


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    SUSPECT = "suspect"
    SKIPPED = "skipped"
    NOT_APPLICABLE = "not_applicable"


OK_STATUSES = frozenset({Status.PASS, Status.SKIPPED, Status.NOT_APPLICABLE})


@dataclass(frozen=True)
class McConfig:
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    sample_bound: int = DEFAULT_SAMPLE_BOUND

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if not 1 <= self.sample_bound <= MAX_SAMPLE_BOUND:
            raise ValueError(f"sample_bound must lie in 1..2^62, got {self.sample_bound}")

    def trial_bound(self, degree: int) -> float:
        """Schwartz-Zippel bound for one trial at the given total degree."""
        return degree / (2 * self.sample_bound + 1)


@dataclass(frozen=True)
class Verdict:
    status: Status
    verdict_id: str
    seed: Optional[int] = None
    trials: int = 0
    informative: int = 0
    trial_bound: Optional[float] = None
    evidence: str = ""

    @property
    def ok(self) -> bool:
        return self.status in OK_STATUSES

    def to_json(self) -> Dict[str, Any]:
        return {
            "id": self.verdict_id,
            "status": self.status.value,
            "pass": self.status is Status.PASS,
            "trials": self.trials,
            "informative": self.informative,
            "seed": self.seed,
            "trial_bound": self.trial_bound,
            "evidence": self.evidence,
        }


def exact_verdict(verdict_id: str, holds: bool, evidence: str = "") -> Verdict:
    """Verdict of a deterministic check."""
    return Verdict(Status.PASS if holds else Status.FAIL, verdict_id, evidence=evidence)


def not_applicable(verdict_id: str, reason: str) -> Verdict:
    return Verdict(Status.NOT_APPLICABLE, verdict_id, evidence=reason)


def _random_line(
    variables: Sequence[VarId], rng, bound: int
) -> Tuple[Dict[VarId, int], Dict[VarId, int]]:
    values = sample_integers(rng, bound, 2 * len(variables))
    base = dict(zip(variables, values[: len(variables)]))
    direction = dict(zip(variables, values[len(variables):]))
    return base, direction


def _check_sample_bound(cfg: McConfig, degree: int, verdict_id: str) -> None:
    if cfg.sample_bound < 2 * degree:
        logger.warning(
            f"{verdict_id}: sample_bound {cfg.sample_bound} is below 2 * degree = {2 * degree}, "
            f"the per-trial bound {cfg.trial_bound(degree):.3g} is not meaningful"
        )


def _sorted_vars(*polys: Polynomial) -> List[VarId]:
    found = set()
    for poly in polys:
        found |= poly.variables()
    return sorted(found, key=lambda var: var.key)


def repeated_factor_witness(f: Polynomial, candidates: Sequence[Polynomial] = ()) -> str:
    """Describe an exact repeated factor of f, or return "" if none is found."""
    for var, exp in monomial_content(f).powers:
        if exp >= 2:
            return f"{var.name()}^{exp} divides every term"
    for candidate in candidates:
        if candidate.degree >= 1 and divides(candidate * candidate, f):
            return f"({candidate.to_text()})^2 divides f exactly"
    return ""


def common_factor_witness(
    f: Polynomial, g: Polynomial, candidates: Sequence[Polynomial] = ()
) -> str:
    """Describe an exact nonconstant common factor of f and g, or return ""."""
    if f.degree <= g.degree and divides(f, g):
        return "the first polynomial divides the second"
    if g.degree <= f.degree and divides(g, f):
        return "the second polynomial divides the first"
    shared = set(monomial_content(f).variables()) & set(monomial_content(g).variables())
    if shared:
        return f"{min(shared, key=lambda v: v.key).name()} divides both"
    for candidate in candidates:
        if candidate.degree >= 1 and divides(candidate, f) and divides(candidate, g):
            return f"{candidate.to_text()} divides both"
    return ""


def squarefree_mc(
    f: Polynomial,
    cfg: McConfig,
    verdict_id: str = "squarefree",
    candidates: Sequence[Polynomial] = (),
) -> Verdict:
    """Semidecide square-freeness of f by random line restriction.

    :param Polynomial f: nonzero polynomial
    :param McConfig cfg: trials, seed and sample bound
    :param str verdict_id: stable id; together with cfg.seed it fixes the random stream
    :param candidates: factors to test as repeated-factor witnesses

    :return Verdict: PASS on an informative square-free restriction, FAIL with
        an exact witness, SUSPECT otherwise
    """
    if f.is_zero:
        raise ValueError("square-freeness of the zero polynomial is undefined")
    start_ts = perf_counter()
    rng = verdict_rng(cfg.seed, verdict_id)
    _check_sample_bound(cfg, f.degree, verdict_id)
    variables = _sorted_vars(f)
    bound = cfg.trial_bound(f.degree)
    informative = 0
    for trial in range(1, cfg.trials + 1):
        base, direction = _random_line(variables, rng, cfg.sample_bound)
        restriction = f.restrict_to_line(base, direction)
        if restriction.degree != f.degree:
            continue
        informative += 1
        if univariate_squarefree(restriction):
            logger.debug(f"{verdict_id} passed on trial {trial} in {perf_counter() - start_ts:.4f} sec.")
            return Verdict(
                Status.PASS, verdict_id, cfg.seed, trial, informative, bound,
                f"square-free restriction of degree {f.degree} on trial {trial}",
            )
    witness = repeated_factor_witness(f, candidates)
    status = Status.FAIL if witness else Status.SUSPECT
    logger.warning(f"{verdict_id}: {status.value} after {cfg.trials} trials ({informative} informative)")
    return Verdict(
        status, verdict_id, cfg.seed, cfg.trials, informative, bound,
        witness or f"no square-free restriction in {informative} informative trials",
    )


def coprime_mc(
    f: Polynomial,
    g: Polynomial,
    cfg: McConfig,
    verdict_id: str = "coprime",
    candidates: Sequence[Polynomial] = (),
) -> Verdict:
    """Semidecide coprimality of f and g by restriction to common random lines.

    Constants and polynomials with disjoint variable supports are decided
    without sampling.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("coprimality with the zero polynomial is undefined")
    if f.is_constant or g.is_constant:
        return Verdict(Status.PASS, verdict_id, cfg.seed, 0, 0, 0.0, "a constant is coprime to everything")
    if not f.variables() & g.variables():
        return Verdict(Status.PASS, verdict_id, cfg.seed, 0, 0, 0.0, "disjoint variable supports")
    rng = verdict_rng(cfg.seed, verdict_id)
    _check_sample_bound(cfg, f.degree + g.degree, verdict_id)
    variables = _sorted_vars(f, g)
    bound = cfg.trial_bound(f.degree + g.degree)
    informative = 0
    for trial in range(1, cfg.trials + 1):
        base, direction = _random_line(variables, rng, cfg.sample_bound)
        p = f.restrict_to_line(base, direction)
        q = g.restrict_to_line(base, direction)
        if p.degree != f.degree or q.degree != g.degree:
            continue
        informative += 1
        if univariate_gcd(p, q).degree == 0:
            return Verdict(
                Status.PASS, verdict_id, cfg.seed, trial, informative, bound,
                f"coprime restrictions on trial {trial}",
            )
    witness = common_factor_witness(f, g, candidates)
    status = Status.FAIL if witness else Status.SUSPECT
    logger.warning(f"{verdict_id}: {status.value} after {cfg.trials} trials ({informative} informative)")
    return Verdict(
        status, verdict_id, cfg.seed, cfg.trials, informative, bound,
        witness or f"common root on all {informative} informative trials",
    )


def worst(verdicts: Sequence[Verdict]) -> Status:
    """Most severe status among verdicts (FAIL > SUSPECT > PASS > others)."""
    statuses = {v.status for v in verdicts}
    for status in (Status.FAIL, Status.SUSPECT, Status.PASS, Status.SKIPPED):
        if status in statuses:
            return status
    return Status.NOT_APPLICABLE
