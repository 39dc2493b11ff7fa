"""Generic block matrices M(i; j) and the structure of their determinants.

For compositions i = (i_1..i_r) and j = (j_1..j_r) of the same N, M(i; j) is
the N x N matrix whose row block s (i_s rows) has fresh variables in the
first N - (j_1 + ... + j_{s-1}) columns, followed by the identity-like block
I_{i_s, j_{s-1}}, followed by zeros. The variables of row block s that sit in
the columns (N - J_s, N - J_{s-1}] form the anti-diagonal block A^s.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from operator import mul
from time import perf_counter
from typing import Any, Dict, List, Optional, Tuple

from flagdivisor.montecarlo import (
    DEFAULT_SAMPLE_BOUND,
    DEFAULT_TRIALS,
    McConfig,
    Status,
    Verdict,
    coprime_mc,
    exact_verdict,
    not_applicable,
)
from flagdivisor.polyring import (
    Cell,
    Polynomial,
    StructuredMatrix,
    VarId,
    determinant,
    unit_equal,
)
from flagdivisor.util import compositions

logger = logging.getLogger(__name__)

MAX_BLOCK_N = 7
# report keys, in the order of BlockDetReport.verdicts()
VERDICT_KEYS = ("product", "disjoint", "corvars", "cortop", "lemma3")


@dataclass(frozen=True)
class BlockSpec:
    row_sizes: Tuple[int, ...]
    col_sizes: Tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(k) for k in self.row_sizes)
        cols = tuple(int(k) for k in self.col_sizes)
        if not rows or len(rows) != len(cols):
            raise ValueError(f"block sequences {rows} and {cols} need the same positive length")
        if min(rows + cols) < 1:
            raise ValueError(f"block sizes must be positive, got {rows} and {cols}")
        if sum(rows) != sum(cols):
            raise ValueError(f"block sizes {rows} and {cols} do not give a square matrix")
        object.__setattr__(self, "row_sizes", rows)
        object.__setattr__(self, "col_sizes", cols)

    @classmethod
    def parse(cls, text: str) -> "BlockSpec":
        """Parse "1,2;2,1"."""
        try:
            rows, cols = text.split(";")
            return cls(tuple(int(k) for k in rows.split(",")), tuple(int(k) for k in cols.split(",")))
        except ValueError as e:
            raise ValueError(f"cannot parse block spec {text!r}: {e}") from e

    @property
    def r(self) -> int:
        return len(self.row_sizes)

    @property
    def size(self) -> int:
        return sum(self.row_sizes)

    @property
    def row_bounds(self) -> Tuple[int, ...]:
        """Partial sums (0, i_1, i_1 + i_2, ..., N)."""
        return _partial_sums(self.row_sizes)

    @property
    def col_bounds(self) -> Tuple[int, ...]:
        return _partial_sums(self.col_sizes)

    def to_json(self) -> Dict[str, Any]:
        return {"rows": list(self.row_sizes), "cols": list(self.col_sizes)}

    def __str__(self) -> str:
        return ",".join(map(str, self.row_sizes)) + ";" + ",".join(map(str, self.col_sizes))


def _partial_sums(sizes: Tuple[int, ...]) -> Tuple[int, ...]:
    sums = [0]
    for k in sizes:
        sums.append(sums[-1] + k)
    return tuple(sums)


def block_specs(size: int) -> List[BlockSpec]:
    """All specs of size N: pairs of equal-length compositions, ordered by (r, i, j)."""
    specs = []
    for r in range(1, size + 1):
        comps = list(compositions(size, r))
        specs.extend(BlockSpec(rows, cols) for rows in comps for cols in comps)
    return specs


def build_generic(spec: BlockSpec) -> StructuredMatrix:
    n = spec.size
    rb, cb = spec.row_bounds, spec.col_bounds
    grid = [[Cell.ZERO] * n for _ in range(n)]
    for s in range(1, spec.r + 1):
        var_cols = n - cb[s - 1]
        for p in range(1, spec.row_sizes[s - 1] + 1):
            row = rb[s - 1] + p
            for col in range(1, var_cols + 1):
                grid[row - 1][col - 1] = VarId.entry(row, col)
            if s > 1 and p <= spec.col_sizes[s - 2]:
                grid[row - 1][var_cols + p - 1] = Cell.ONE
    return StructuredMatrix(tuple(tuple(row) for row in grid))


def _instance(spec: BlockSpec, matrix: Optional[StructuredMatrix]) -> StructuredMatrix:
    if matrix is None:
        return build_generic(spec)
    if matrix.pattern() != build_generic(spec).pattern():
        raise ValueError(f"matrix does not have the block pattern of ({spec})")
    return matrix


def a_block_variables(spec: BlockSpec, matrix: Optional[StructuredMatrix] = None) -> List[List[VarId]]:
    """Variables of A^1, ..., A^r."""
    matrix = _instance(spec, matrix)
    n = spec.size
    rb, cb = spec.row_bounds, spec.col_bounds
    blocks = []
    for s in range(1, spec.r + 1):
        rows = range(rb[s - 1], rb[s])
        cols = range(n - cb[s], n - cb[s - 1])
        blocks.append([matrix[row, col] for row in rows for col in cols])
    return blocks


def upsilon(spec: BlockSpec) -> Tuple[int, ...]:
    """Indices s in [r-1] where the partial row and column sums agree."""
    rb, cb = spec.row_bounds, spec.col_bounds
    return tuple(s for s in range(1, spec.r) if rb[s] == cb[s])


def anti_diagonal_submatrix(
    spec: BlockSpec, t: int, matrix: Optional[StructuredMatrix] = None
) -> StructuredMatrix:
    """M_t: the square block between the t-th and (t+1)-th Upsilon indices."""
    cuts = upsilon(spec)
    if not cuts:
        raise ValueError(f"Upsilon({spec}) is empty, there are no anti-diagonal submatrices")
    if not 0 <= t <= len(cuts):
        raise ValueError(f"t={t} outside 0..{len(cuts)}")
    matrix = _instance(spec, matrix)
    bounds = (0,) + cuts + (spec.r,)
    lo, hi = bounds[t], bounds[t + 1]
    n = spec.size
    rb, cb = spec.row_bounds, spec.col_bounds
    return matrix.submatrix(range(rb[lo], rb[hi]), range(n - cb[hi], n - cb[lo]))


def factor_top(spec: BlockSpec, matrix: Optional[StructuredMatrix] = None) -> List[Polynomial]:
    """Structural factors of top(det M): top(det M_t) for every t, or top(det M).

    The product of the factors is checked against top(det M) up to sign.
    """
    matrix = _instance(spec, matrix)
    g = determinant(matrix)
    if g.is_zero:
        raise ArithmeticError(f"det M({spec}) is zero")
    cuts = upsilon(spec)
    if not cuts:
        return [g.top()]
    factors = [determinant(anti_diagonal_submatrix(spec, t, matrix)).top() for t in range(len(cuts) + 1)]
    if not unit_equal(reduce(mul, factors), g.top()):
        raise ArithmeticError(f"factors of top(det M({spec})) do not multiply back")
    return factors


def has_zero_block(matrix: StructuredMatrix) -> bool:
    """True iff some l rows share at least N - l all-Zero columns, 1 <= l < N."""
    n = matrix.rows
    zero_cols = [
        frozenset(c for c in range(matrix.cols) if matrix[r, c] is Cell.ZERO)
        for r in range(n)
    ]
    for l in range(1, n):
        for rows in combinations(range(n), l):
            if len(frozenset.intersection(*(zero_cols[r] for r in rows))) >= n - l:
                return True
    return False


def leading_variable_count(row: Tuple) -> int:
    count = 0
    for entry in row:
        if not isinstance(entry, VarId):
            break
        count += 1
    return count


def recognize_block_spec(matrix: StructuredMatrix) -> BlockSpec:
    """Read back the BlockSpec of a square matrix in block form.

    Row blocks are the maximal runs of rows with the same number of leading
    variables; that number is N - J_{s-1} in row block s.
    """
    n = matrix.rows
    if n == 0 or n != matrix.cols:
        raise ValueError(f"a block matrix is square and nonempty, got {matrix.shape}")
    runs: List[List[int]] = []
    for row in matrix.entries:
        width = leading_variable_count(row)
        if runs and runs[-1][0] == width:
            runs[-1][1] += 1
        else:
            runs.append([width, 1])
    widths = [width for width, _ in runs]
    if widths[0] != n or widths[-1] < 1 or any(a <= b for a, b in zip(widths, widths[1:])):
        raise ValueError(f"leading variable counts {widths} do not come from a block matrix")
    col_sizes = tuple(a - b for a, b in zip(widths, widths[1:])) + (widths[-1],)
    spec = BlockSpec(tuple(count for _, count in runs), col_sizes)
    if matrix.pattern() != build_generic(spec).pattern():
        raise ValueError(f"matrix is not of the form M({spec})")
    return spec


@dataclass(frozen=True)
class BlockDetReport:
    spec: BlockSpec
    upsilon: Tuple[int, ...]
    screened: bool
    factors: Tuple[Polynomial, ...]
    missing_variables: Tuple[VarId, ...]
    product: Verdict
    disjoint: Verdict
    all_variables: Verdict
    snd_nonzero: Verdict
    top_snd_coprime: Verdict

    def verdicts(self) -> List[Verdict]:
        return [self.product, self.disjoint, self.all_variables, self.snd_nonzero, self.top_snd_coprime]

    def to_json(self) -> Dict[str, Any]:
        return {
            "spec": self.spec.to_json(),
            "upsilon": list(self.upsilon),
            "screened": self.screened,
            "factors": [f.to_text() for f in self.factors],
            "missing_variables": [v.name() for v in self.missing_variables],
            "verdicts": {
                "product": self.product.ok,
                "disjoint": self.disjoint.ok,
                "corvars": self.all_variables.ok,
                "cortop": self.snd_nonzero.ok,
                "lemma3": {
                    "pass": self.top_snd_coprime.ok,
                    "status": self.top_snd_coprime.status.value,
                    "trials": self.top_snd_coprime.trials,
                    "seed": self.top_snd_coprime.seed,
                },
            },
        }


def _skipped_report(spec: BlockSpec, reason: str) -> BlockDetReport:
    verdict = Verdict(Status.SKIPPED, f"blockdet:{spec}", evidence=reason)
    return BlockDetReport(spec, upsilon(spec), True, (), (), verdict, verdict, verdict, verdict, verdict)


def check_block_det(
    spec: BlockSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    sample_bound: int = DEFAULT_SAMPLE_BOUND,
) -> BlockDetReport:
    """Check the top/second-component statements for det M(spec).

    Specs with an l x (N - l) zero block are skipped, as are zero determinants.
    Irreducibility of det M is assumed, not certified.
    """
    start_ts = perf_counter()
    matrix = build_generic(spec)
    if has_zero_block(matrix):
        return _skipped_report(spec, "zero block screen")
    g = determinant(matrix)
    if g.is_zero:
        return _skipped_report(spec, "zero determinant")
    vid = f"blockdet:{spec}"
    cuts = upsilon(spec)
    top_g = g.top()

    try:
        factors = tuple(factor_top(spec, matrix))
        product = exact_verdict(f"{vid}:product", True, f"{len(factors)} factor(s)")
    except ArithmeticError as e:
        factors = ()
        product = exact_verdict(f"{vid}:product", False, str(e))
    supports = [f.variables() for f in factors]
    overlapping = [(a, b) for a, b in combinations(range(len(supports)), 2) if supports[a] & supports[b]]
    disjoint = exact_verdict(f"{vid}:disjoint", not overlapping, f"overlapping factor pairs: {overlapping}")

    present = top_g.variables()
    missing = tuple(v for block in a_block_variables(spec, matrix) for v in block if v not in present)
    all_variables = exact_verdict(
        f"{vid}:all_variables", not missing, "missing: " + ", ".join(v.name() for v in missing)
    )

    homogeneous = g.is_homogeneous()
    if spec.r == 1:
        snd_nonzero = exact_verdict(f"{vid}:snd_nonzero", homogeneous, "r = 1, det is homogeneous")
    else:
        snd_nonzero = exact_verdict(f"{vid}:snd_nonzero", not g.snd().is_zero, f"r = {spec.r}, snd(det) != 0")

    if homogeneous:
        top_snd_coprime = not_applicable(f"{vid}:top_snd_coprime", "det is homogeneous")
    elif g.snd().is_zero:
        top_snd_coprime = not_applicable(f"{vid}:top_snd_coprime", "snd(det) is zero")
    else:
        cfg = McConfig(trials=trials, seed=seed, sample_bound=sample_bound)
        top_snd_coprime = coprime_mc(top_g, g.snd(), cfg, f"{vid}:top_snd_coprime", candidates=factors)

    logger.debug(f"Checking M({spec}) took {perf_counter() - start_ts:.4f} sec.")
    return BlockDetReport(
        spec, cuts, False, factors, missing, product, disjoint, all_variables, snd_nonzero, top_snd_coprime
    )
