"""Verification of the square-freeness and coprimality statements for the
divisor pieces f^(a), and the rank predictions for fundamental groups.
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from operator import mul
from time import perf_counter
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from flagdivisor.blockdet import BlockSpec, factor_top, recognize_block_spec
from flagdivisor.divisor import anticanonical_divisor, principal_minor, trimmed_principal
from flagdivisor.montecarlo import (
    DEFAULT_SAMPLE_BOUND,
    DEFAULT_TRIALS,
    McConfig,
    Status,
    Verdict,
    coprime_mc,
    exact_verdict,
    not_applicable,
    squarefree_mc,
    worst,
)
from flagdivisor.polyring import Polynomial, unit_equal
from flagdivisor.weyl import FlagType, all_permutations, gamma, minimal_reps, top_element, word_name

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_SAMPLE_BOUND",
    "DEFAULT_TRIALS",
    "IndexResult",
    "IrrReport",
    "McConfig",
    "Status",
    "Verdict",
    "check_irr",
    "coprime_mc",
    "pi1_prediction",
    "pi1_prediction_by_count",
    "pi1_table",
    "squarefree_mc",
]


@dataclass(frozen=True)
class IndexResult:
    a: int
    degree: int
    homogeneous: bool
    block_spec: Optional[BlockSpec]
    squarefree_top: Verdict
    snd_nonzero: Verdict
    top_snd_coprime: Verdict
    factor_check: Verdict

    def verdicts(self) -> List[Verdict]:
        return [self.squarefree_top, self.snd_nonzero, self.top_snd_coprime, self.factor_check]

    def to_json(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "degree": self.degree,
            "homogeneous": self.homogeneous,
            "block_spec": self.block_spec.to_json() if self.block_spec else None,
            "squarefree_top": self.squarefree_top.to_json(),
            "snd_nonzero": self.snd_nonzero.to_json(),
            "top_snd_coprime": self.top_snd_coprime.to_json(),
            "factor_check": self.factor_check.to_json(),
        }


@dataclass
class IrrReport:
    flag: FlagType
    cfg: McConfig
    per_index: Dict[int, IndexResult] = field(default_factory=dict)
    pairwise: Dict[Tuple[int, int], Verdict] = field(default_factory=dict)

    def verdicts(self) -> List[Verdict]:
        found = [v for a in sorted(self.per_index) for v in self.per_index[a].verdicts()]
        return found + [self.pairwise[key] for key in sorted(self.pairwise)]

    @property
    def status(self) -> Status:
        return worst(self.verdicts())

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts())

    def to_json(self) -> Dict[str, Any]:
        return {
            "flag": {"n": self.flag.n, "steps": list(self.flag.steps)},
            "trials": self.cfg.trials,
            "seed": self.cfg.seed,
            "sample_bound": self.cfg.sample_bound,
            "status": self.status.value,
            "per_index": [self.per_index[a].to_json() for a in sorted(self.per_index)],
            "pairwise": [
                {"a": a, "b": b, "coprime_tops": self.pairwise[(a, b)].to_json()}
                for a, b in sorted(self.pairwise)
            ],
        }

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "id": v.verdict_id,
                "status": v.status.value,
                "trials": v.trials,
                "informative": v.informative,
                "trial_bound": v.trial_bound,
            }
            for v in self.verdicts()
        ]
        return pd.DataFrame(rows, columns=["id", "status", "trials", "informative", "trial_bound"])


def _factor_structure(
    flag: FlagType, a: int, top: Polynomial
) -> Tuple[Optional[BlockSpec], Tuple[Polynomial, ...], Verdict]:
    """Read the block spec of the trimmed f^(a) and compare its top factors with top(f^(a))."""
    vid = f"irr:{flag}:factors:a={a}"
    try:
        trimmed = trimmed_principal(flag, a)
        spec = recognize_block_spec(trimmed)
        factors = tuple(factor_top(spec, trimmed))
    except (ValueError, ArithmeticError) as e:
        logger.warning(f"{vid}: {e}")
        return None, (), exact_verdict(vid, False, str(e))
    holds = unit_equal(reduce(mul, factors), top)
    return spec, factors, exact_verdict(vid, holds, f"M({spec}) with {len(factors)} top factor(s)")


def check_irr(flag: FlagType, cfg: McConfig) -> IrrReport:
    """Square-freeness of top(f^(a)), snd(f^(a)) != 0 and coprimality checks for one flag type."""
    start_ts = perf_counter()
    report = IrrReport(flag, cfg)
    tops: Dict[int, Polynomial] = {}
    candidates: Dict[int, Tuple[Polynomial, ...]] = {}
    for a in range(1, flag.n):
        f = principal_minor(flag, a)
        top = f.top()
        tops[a] = top
        spec, factors, factor_check = _factor_structure(flag, a, top)
        candidates[a] = factors
        squarefree = squarefree_mc(top, cfg, f"irr:{flag}:squarefree:a={a}", candidates=factors)
        homogeneous = f.is_homogeneous()
        if homogeneous:
            snd_nonzero = not_applicable(f"irr:{flag}:snd:a={a}", "f is homogeneous")
            coprime = not_applicable(f"irr:{flag}:topsnd:a={a}", "f is homogeneous")
        else:
            snd = f.snd()
            snd_nonzero = exact_verdict(f"irr:{flag}:snd:a={a}", not snd.is_zero, f"snd has {len(snd)} terms")
            if snd.is_zero:
                coprime = not_applicable(f"irr:{flag}:topsnd:a={a}", "snd is zero")
            else:
                coprime = coprime_mc(top, snd, cfg, f"irr:{flag}:topsnd:a={a}", candidates=factors)
        report.per_index[a] = IndexResult(
            a, f.degree, homogeneous, spec, squarefree, snd_nonzero, coprime, factor_check
        )
    for a in range(1, flag.n):
        for b in range(a + 1, flag.n):
            report.pairwise[(a, b)] = coprime_mc(
                tops[a], tops[b], cfg, f"irr:{flag}:coprime:a={a},b={b}",
                candidates=candidates[a] + candidates[b],
            )
    logger.info(f"Checking {flag.label} took {perf_counter() - start_ts:.3f} sec.")
    return report


def pi1_prediction(flag: FlagType) -> int:
    """Predicted rank of pi_1 of the open Richardson variety: |Gamma(w0 wP)|."""
    return len(gamma(top_element(flag)))


def pi1_prediction_by_count(flag: FlagType) -> int:
    """Divisor components minus the Picard rank r."""
    return len(anticanonical_divisor(flag)) - flag.r


def _gamma_text(indices) -> str:
    return "{" + ",".join(str(i) for i in sorted(indices)) + "}"


def pi1_table(n: int, flag: Optional[FlagType] = None) -> pd.DataFrame:
    """Gamma(v) and the predicted rank |Gamma(v)| for every v in S_n.

    With a flag type only the minimal coset representatives W^P are listed.
    """
    if flag is not None and flag.n != n:
        raise ValueError(f"{flag.label} does not live in S_{n}")
    perms = all_permutations(n)
    if flag is not None:
        keep = set(minimal_reps(flag))
        perms = [v for v in perms if v in keep]
    rows = []
    for v in perms:
        found = gamma(v)
        rows.append({
            "word": word_name(v),
            "window": "[" + str(v) + "]",
            "gamma": _gamma_text(found),
            "rank": len(found),
        })
    return pd.DataFrame(rows, columns=["word", "window", "gamma", "rank"])
