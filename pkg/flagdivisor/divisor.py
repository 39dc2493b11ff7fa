"""Equations of the anti-canonical divisor of Fl(n_1, ..., n_r; n).

Points of the open Schubert cell are represented by the n_r x n matrix of
`cell_matrix`: the identity blocks I_{a_1}, ..., I_{a_r} step down from the
upper right corner, free coordinates fill everything to their left, and the
rest is zero. A Pluecker coordinate x_J of a step of size n_j is the minor on
the first n_j rows and the columns J.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from operator import mul
from time import perf_counter
from typing import Any, Dict, Iterable, List, Tuple

from flagdivisor.polyring import (
    ONE,
    Cell,
    Polynomial,
    StructuredMatrix,
    VarId,
    determinant,
    unit_equal,
)
from flagdivisor.weyl import FlagType

logger = logging.getLogger(__name__)

CASE_STEP_UNIT = 1
CASE_STEP = 2
CASE_BELOW_FIRST = 3
CASE_ABOVE_LAST = 4
CASE_BETWEEN = 5


def cell_matrix(flag: FlagType) -> StructuredMatrix:
    n = flag.n
    bounds = flag.bounds
    grid = []
    for t in range(1, flag.r + 1):
        width = n - bounds[t]
        for p in range(1, bounds[t] - bounds[t - 1] + 1):
            row = bounds[t - 1] + p
            entries = [VarId.entry(row, col) for col in range(1, width + 1)]
            entries += [Cell.ONE if q == p else Cell.ZERO for q in range(1, n - width + 1)]
            grid.append(tuple(entries))
    return StructuredMatrix(tuple(grid))


def augmented_matrix(flag: FlagType) -> StructuredMatrix:
    """cell_matrix completed to n x n by the rows (I_{a_{r+1}} 0)."""
    n = flag.n
    tail = tuple(
        tuple(Cell.ONE if col == p else Cell.ZERO for col in range(1, n + 1))
        for p in range(1, n - flag.steps[-1] + 1)
    )
    return cell_matrix(flag).vstack(StructuredMatrix(tail))


def _check_index(flag: FlagType, i: int, what: str = "i") -> None:
    if not 1 <= i <= flag.n - 1:
        raise ValueError(f"{what}={i} outside 1..{flag.n - 1} for {flag.label}")


def principal_minor(flag: FlagType, a: int) -> Polynomial:
    """f^(a): the leading a x a principal minor of the augmented matrix."""
    _check_index(flag, a, "a")
    return determinant(augmented_matrix(flag).principal(a))


def trimmed_principal(flag: FlagType, a: int) -> StructuredMatrix:
    """Principal a x a block of the augmented matrix with its unit lines removed.

    The determinant is unchanged up to sign and the result has the shape of a
    generic block matrix M(i; j).
    """
    _check_index(flag, a, "a")
    return augmented_matrix(flag).principal(a).strip_unit_lines()


def plucker_minor(flag: FlagType, index_set: Iterable[int]) -> Polynomial:
    columns = tuple(sorted(set(index_set)))
    if len(columns) not in flag.steps:
        raise ValueError(f"|J| = {len(columns)} is not a step of {flag.label}")
    if columns[0] < 1 or columns[-1] > flag.n:
        raise ValueError(f"J = {columns} is not a subset of 1..{flag.n}")
    matrix = cell_matrix(flag)
    return determinant(matrix.submatrix(range(len(columns)), [c - 1 for c in columns]))


def step_index(flag: FlagType, i: int) -> Tuple[int, int]:
    """(case, j) for the simple root index i.

    j is the position of i among the steps for case 2, 0 for case 3, r for
    case 4 and the j with n_j < i < n_{j+1} for case 5.
    """
    _check_index(flag, i)
    steps = flag.steps
    if i in steps:
        return CASE_STEP, steps.index(i) + 1
    if i < steps[0]:
        return CASE_BELOW_FIRST, 0
    if i > steps[-1]:
        return CASE_ABOVE_LAST, flag.r
    j = max(t for t in range(1, flag.r + 1) if steps[t - 1] < i)
    return CASE_BETWEEN, j


@dataclass(frozen=True)
class DivisorComponent:
    case: int
    i: int
    equation: Polynomial
    unit_on_cell: bool = False

    def text(self, n: int) -> str:
        return f"{self.equation.to_text(n)}  [case {self.case}, i={self.i}]"

    def to_json(self, n: int) -> Dict[str, Any]:
        return {
            "case": self.case,
            "i": self.i,
            "equation": self.equation.to_json(n),
            "unit_on_cell": self.unit_on_cell,
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "DivisorComponent":
        return cls(
            int(obj["case"]), int(obj["i"]),
            Polynomial.from_json(obj["equation"]), bool(obj.get("unit_on_cell", False)),
        )


def _x(indices: Iterable[int]) -> Polynomial:
    return Polynomial.var(VarId.plucker(indices))


def _interval(a: int, b: int) -> range:
    """(a, b] as a range of integers."""
    return range(a + 1, b + 1)


def _between_equation(flag: FlagType, i: int, j: int) -> Polynomial:
    n = flag.n
    lower, upper = flag.steps[j - 1], flag.steps[j]
    k = i - lower
    tail = tuple(_interval(n - upper + k, n))
    l = min(i, n - upper + k)
    terms = []
    for subset in combinations(range(1, l + 1), k):
        sign = -1 if sum(subset) % 2 else 1
        rest = [p for p in range(1, i + 1) if p not in subset]
        terms.append(sign * _x(rest) * _x(subset + tail))
    return reduce(lambda f, g: f + g, terms)


def theorem_equation(flag: FlagType, i: int) -> DivisorComponent:
    """The component of the divisor attached to the simple root index i."""
    case, j = step_index(flag, i)
    n = flag.n
    if case == CASE_STEP:
        equation = _x(range(1, i + 1))
    elif case == CASE_BELOW_FIRST:
        equation = _x(list(range(1, i + 1)) + list(_interval(n - flag.steps[0] + i, n)))
    elif case == CASE_ABOVE_LAST:
        equation = _x(_interval(i - flag.steps[-1], i))
    else:
        equation = _between_equation(flag, i, j)
    return DivisorComponent(case, i, equation.normalized())


def case_one(flag: FlagType) -> List[DivisorComponent]:
    """The Schubert divisors x_{(n - n_j, n]}, one per step."""
    return [
        DivisorComponent(CASE_STEP_UNIT, step, _x(_interval(flag.n - step, flag.n)), unit_on_cell=True)
        for step in flag.steps
    ]


def anticanonical_divisor(flag: FlagType) -> List[DivisorComponent]:
    components = case_one(flag) + [theorem_equation(flag, i) for i in range(1, flag.n)]
    return sorted(components, key=lambda c: (c.case, c.i))


def divisor_equation(flag: FlagType) -> Polynomial:
    """The product of all component equations."""
    return reduce(mul, (c.equation for c in anticanonical_divisor(flag)), ONE)


def component_on_cell(flag: FlagType, component: DivisorComponent) -> Polynomial:
    """The component equation with every x_J replaced by its minor of the cell matrix."""
    minors = {var: plucker_minor(flag, var.index) for var in component.equation.variables()}
    return component.equation.substitute(minors)


def verify_component(flag: FlagType, i: int) -> bool:
    """Check the equation for i against the principal minor f^(i) on the cell."""
    start_ts = perf_counter()
    on_cell = component_on_cell(flag, theorem_equation(flag, i))
    holds = unit_equal(on_cell, principal_minor(flag, i))
    if not holds:
        logger.warning(f"{flag.label}, i={i}: equation does not restrict to +-f^({i})")
    logger.debug(f"Verifying {flag.label}, i={i} took {perf_counter() - start_ts:.4f} sec.")
    return holds


def homogenize(f: Polynomial) -> Polynomial:
    """f_d + z f_{d-1} + ... + z^d f_0 for d = deg f."""
    z = VarId.homogenizer()
    if z in f.variables():
        raise ValueError("polynomial already contains the homogenizing variable z")
    if f.is_zero:
        return f
    zpoly = Polynomial.var(z)
    d = f.degree
    total = Polynomial()
    for k in range(d + 1):
        piece = f.homogeneous_component(k)
        if not piece.is_zero:
            total = total + piece * zpoly ** (d - k)
    return total


def homogenized_piece(flag: FlagType, a: int) -> Polynomial:
    """D_a in the projective compactification: homogenize(f^(a))."""
    return homogenize(principal_minor(flag, a))
