import logging
from enum import Enum
from time import perf_counter
from typing import Any, Dict, Iterable, List, Type

import pandas as pd

from flagdivisor.blockdet import MAX_BLOCK_N, VERDICT_KEYS, block_specs, check_block_det
from flagdivisor.divisor import step_index, verify_component
from flagdivisor.montecarlo import OK_STATUSES, McConfig, Status
from flagdivisor.verify import check_irr, pi1_prediction, pi1_prediction_by_count
from flagdivisor.weyl import (
    FlagType,
    all_flags,
    boundary_p_elements,
    check_reduced_suffixes,
    closed_form_atoms,
    closed_form_coatoms,
    gamma,
    minimal_reps,
    top_element,
)

# =========================================================================================
# ======================================= suites ==========================================
# =========================================================================================
# exhaustive verification sweeps behind `verify --suite`
# =========================================================================================

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["item", "check", "status", "ok", "evidence"]


class TaskStatus(Enum):
    SUCCESS = "success"
    FAILED = "failed"


class BaseSuite:
    name = ""
    default_max_n = 5

    def __init__(self, max_n: int = None, cfg: McConfig = None):
        self.max_n = self.default_max_n if max_n is None else max_n
        self.cfg = cfg if cfg is not None else McConfig()
        if self.max_n < 2:
            raise ValueError(f"max_n must be at least 2, got {self.max_n}")

    def flags(self) -> List[FlagType]:
        return [flag for n in range(2, self.max_n + 1) for flag in all_flags(n)]

    def items(self) -> Iterable[Any]:
        raise NotImplementedError("items method is not implemented")

    def check(self, item: Any) -> List[Dict[str, Any]]:
        raise NotImplementedError("check method is not implemented")

    @staticmethod
    def row(item: str, check: str, status: Status, evidence: str = "") -> Dict[str, Any]:
        return {
            "item": item,
            "check": check,
            "status": status.value,
            "ok": status in OK_STATUSES,
            "evidence": evidence,
        }

    def run(self) -> Dict[str, Any]:
        start_ts = perf_counter()
        rows: List[Dict[str, Any]] = []
        errors = []
        for item in self.items():
            try:
                rows.extend(self.check(item))
            except Exception as e:
                logger.error(f"{self.name}: {item} raised {e!r}")
                errors.append(f"{item}: {e}")
                rows.append({
                    "item": str(item),
                    "check": "error",
                    "status": TaskStatus.FAILED.value,
                    "ok": False,
                    "evidence": str(e),
                })
        logger.info(f"Running suite {self.name} up to n={self.max_n} took {perf_counter() - start_ts:.3f} sec.")
        return {
            "suite": self.name,
            "status": (TaskStatus.FAILED if errors else TaskStatus.SUCCESS).value,
            "error": "; ".join(errors),
            "results": pd.DataFrame(rows, columns=RESULT_COLUMNS),
        }


class IrrSuite(BaseSuite):
    name = "irr"
    default_max_n = 5

    def items(self):
        return self.flags()

    def check(self, flag: FlagType):
        report = check_irr(flag, self.cfg)
        bad = [v.verdict_id for v in report.verdicts() if not v.ok]
        return [self.row(flag.label, "irr", report.status, ", ".join(bad))]


class Case5Suite(BaseSuite):
    """verify_component for every flag type and every simple root index."""

    name = "case5"
    default_max_n = 6

    def items(self):
        return [(flag, i) for flag in self.flags() for i in range(1, flag.n)]

    def check(self, item):
        flag, i = item
        case, _ = step_index(flag, i)
        holds = verify_component(flag, i)
        return [self.row(f"{flag.label} i={i}", f"case {case}", Status.PASS if holds else Status.FAIL)]


class BoundarySuite(BaseSuite):
    name = "lemmared"
    default_max_n = 5

    def items(self):
        return self.flags()

    def check(self, flag: FlagType):
        atoms, coatoms = boundary_p_elements(flag)
        expected_atoms, expected_coatoms = closed_form_atoms(flag), closed_form_coatoms(flag)
        rows = [
            self.row(
                flag.label, "atoms",
                Status.PASS if atoms == expected_atoms else Status.FAIL,
                f"{len(atoms)} found, {len(expected_atoms)} expected",
            ),
            self.row(
                flag.label, "coatoms",
                Status.PASS if coatoms == expected_coatoms else Status.FAIL,
                f"{len(coatoms)} found, {len(expected_coatoms)} expected",
            ),
        ]
        offenders = [str(w) for w in minimal_reps(flag) if not check_reduced_suffixes(w, flag)]
        rows.append(self.row(
            flag.label, "suffixes",
            Status.FAIL if offenders else Status.PASS,
            "; ".join(offenders),
        ))
        return rows


class GammaSuite(BaseSuite):
    name = "gamma"
    default_max_n = 7

    def items(self):
        return self.flags()

    def check(self, flag: FlagType):
        full = frozenset(range(1, flag.n))
        found = gamma(top_element(flag))
        by_gamma, by_count = pi1_prediction(flag), pi1_prediction_by_count(flag)
        return [
            self.row(flag.label, "gamma", Status.PASS if found == full else Status.FAIL,
                     f"missing {sorted(full - found)}" if found != full else ""),
            self.row(flag.label, "pi1", Status.PASS if by_gamma == by_count == flag.n - 1 else Status.FAIL,
                     f"gamma {by_gamma}, count {by_count}"),
        ]


class BlockDetSuite(BaseSuite):
    name = "blockdet"
    default_max_n = 6

    def __init__(self, max_n: int = None, cfg: McConfig = None):
        super().__init__(max_n, cfg)
        if self.max_n > MAX_BLOCK_N:
            raise ValueError(f"block matrices are only swept up to N={MAX_BLOCK_N}")

    def items(self):
        return [spec for size in range(1, self.max_n + 1) for spec in block_specs(size)]

    def check(self, spec):
        report = check_block_det(spec, self.cfg.trials, self.cfg.seed, self.cfg.sample_bound)
        if report.screened:
            return [self.row(f"M({spec})", "screen", Status.SKIPPED, report.top_snd_coprime.evidence)]
        return [
            self.row(f"M({spec})", check, v.status, v.evidence)
            for check, v in zip(VERDICT_KEYS, report.verdicts())
        ]


SUITES: Dict[str, Type[BaseSuite]] = {
    suite.name: suite for suite in (IrrSuite, Case5Suite, BoundarySuite, GammaSuite, BlockDetSuite)
}


def run_suite(name: str, max_n: int = None, cfg: McConfig = None) -> Dict[str, Any]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}, expected one of {sorted(SUITES)}")
    return SUITES[name](max_n, cfg).run()


def suite_passed(result: Dict[str, Any]) -> bool:
    return result["status"] == TaskStatus.SUCCESS.value and bool(result["results"]["ok"].all())
