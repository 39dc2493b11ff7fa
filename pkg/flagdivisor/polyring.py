"""Exact sparse multivariate polynomials over the integers.

Polynomials are immutable maps from monomials to nonzero Python ints. Terms are
ordered graded-lexicographically over a fixed global variable order: matrix
entries by (row, col), then the homogenizer z, then Pluecker coordinates by
(size, index set). Determinants of structured matrices (entries Zero, One or
a variable) are computed by memoized Laplace expansion, with a fraction-free
elimination kept as an independent cross-check.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import reduce
from math import gcd
from time import perf_counter
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

PLUCKER_CONCAT_MAX_N = 9
SLOW_DETERMINANT_SIZE = 6


class VarKind(IntEnum):
    MATRIX_ENTRY = 0
    HOMOGENIZER = 1
    PLUCKER = 2


class VarId:
    """A named indeterminate.

    Matrix entries carry a 1-based (row, col), Pluecker coordinates a strictly
    increasing index set J, and the homogenizer carries nothing.

    Pluecker coordinates compare by |J| first and by J second, so x_{2} sorts
    before x_{134} and a product prints as x_{2}*x_{134}.
    """

    __slots__ = ("kind", "index", "key", "neg_key", "_hash")

    def __init__(self, kind: VarKind, index: Sequence[int] = ()):
        kind = VarKind(kind)
        index = tuple(int(k) for k in index)
        if kind is VarKind.MATRIX_ENTRY:
            if len(index) != 2 or min(index) < 1:
                raise ValueError(f"matrix entry needs a 1-based (row, col), got {index}")
            key = (int(kind),) + index
        elif kind is VarKind.HOMOGENIZER:
            if index:
                raise ValueError(f"the homogenizer takes no index, got {index}")
            key = (int(kind),)
        else:
            if not index or index[0] < 1 or any(a >= b for a, b in zip(index, index[1:])):
                raise ValueError(f"Pluecker index set must be strictly increasing and 1-based, got {index}")
            key = (int(kind), len(index)) + index
        self.kind = kind
        self.index = index
        self.key = key
        # lex comparison of sparse monomials runs on negated keys
        self.neg_key = tuple(-k for k in key)
        self._hash = hash(key)

    @classmethod
    def entry(cls, row: int, col: int) -> "VarId":
        return cls(VarKind.MATRIX_ENTRY, (row, col))

    @classmethod
    def homogenizer(cls) -> "VarId":
        return cls(VarKind.HOMOGENIZER)

    @classmethod
    def plucker(cls, index_set: Iterable[int]) -> "VarId":
        return cls(VarKind.PLUCKER, tuple(sorted(index_set)))

    def name(self, n: Optional[int] = None) -> str:
        """Text name: a{r,c}, z or x_{J}.

        Pluecker indices are concatenated when every index fits in one digit
        (n <= 9 when n is known) and comma-separated otherwise.
        """
        if self.kind is VarKind.MATRIX_ENTRY:
            return "a{%d,%d}" % self.index
        if self.kind is VarKind.HOMOGENIZER:
            return "z"
        bound = n if n is not None else max(self.index)
        if bound <= PLUCKER_CONCAT_MAX_N:
            return "x_{" + "".join(str(k) for k in self.index) + "}"
        return "x_{" + ",".join(str(k) for k in self.index) + "}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VarId) and self.key == other.key

    def __lt__(self, other: "VarId") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return self.name()


_VAR_PATTERN = re.compile(r"^(?:a\{(\d+),(\d+)\}|(z)|x_\{([\d,]+)\})$")


def parse_var(name: str) -> VarId:
    """Parse a variable name produced by VarId.name."""
    match = _VAR_PATTERN.match(name.strip())
    if match is None:
        raise ValueError(f"not a variable name: {name!r}")
    row, col, homog, plucker = match.groups()
    if row is not None:
        return VarId.entry(int(row), int(col))
    if homog is not None:
        return VarId.homogenizer()
    if "," in plucker:
        return VarId.plucker(int(k) for k in plucker.split(","))
    return VarId.plucker(int(k) for k in plucker)


def _var_key(item: Tuple[VarId, int]) -> Tuple[int, ...]:
    return item[0].key


class Monomial:
    """Product of variable powers, stored as (VarId, exponent) pairs sorted by variable."""

    __slots__ = ("powers", "degree", "order_key", "_hash")

    def __init__(self, powers: Iterable[Tuple[VarId, int]] = ()):
        merged: Dict[VarId, int] = {}
        for var, exp in powers:
            if exp < 0:
                raise ValueError(f"negative exponent {exp} for {var}")
            if exp:
                merged[var] = merged.get(var, 0) + exp
        self._set(tuple(sorted(merged.items(), key=_var_key)))

    def _set(self, powers: Tuple[Tuple[VarId, int], ...]) -> None:
        self.powers = powers
        self.degree = sum(exp for _, exp in powers)
        self.order_key = (self.degree, tuple((var.neg_key, exp) for var, exp in powers))
        self._hash = hash(powers)

    @classmethod
    def _sorted(cls, powers: Tuple[Tuple[VarId, int], ...]) -> "Monomial":
        mono = cls.__new__(cls)
        mono._set(powers)
        return mono

    @classmethod
    def of(cls, var: VarId, exp: int = 1) -> "Monomial":
        return cls._sorted(((var, exp),) if exp else ())

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other.powers:
            return self
        if not self.powers:
            return other
        merged = dict(self.powers)
        for var, exp in other.powers:
            merged[var] = merged.get(var, 0) + exp
        return Monomial._sorted(tuple(sorted(merged.items(), key=_var_key)))

    def divides(self, other: "Monomial") -> bool:
        theirs = dict(other.powers)
        return all(theirs.get(var, 0) >= exp for var, exp in self.powers)

    def quotient(self, divisor: "Monomial") -> "Monomial":
        remaining = dict(self.powers)
        for var, exp in divisor.powers:
            left = remaining.get(var, 0) - exp
            if left < 0:
                raise ArithmeticError(f"{divisor} does not divide {self}")
            if left:
                remaining[var] = left
            else:
                del remaining[var]
        return Monomial._sorted(tuple(sorted(remaining.items(), key=_var_key)))

    def variables(self) -> Tuple[VarId, ...]:
        return tuple(var for var, _ in self.powers)

    def text(self, n: Optional[int] = None) -> str:
        parts = []
        for var, exp in self.powers:
            parts.append(var.name(n) if exp == 1 else f"{var.name(n)}^{exp}")
        return "*".join(parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.powers == other.powers

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return self.text() or "1"


ONE_MONOMIAL = Monomial()

Scalar = Union[int, "Polynomial"]


class Polynomial:
    """Immutable sparse polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self._terms: Dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            if coeff:
                self._terms[mono] = self._terms.get(mono, 0) + int(coeff)
        self._terms = {mono: coeff for mono, coeff in self._terms.items() if coeff}

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, int]) -> "Polynomial":
        # caller guarantees no zero coefficients
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls._wrap({ONE_MONOMIAL: int(value)} if value else {})

    @classmethod
    def var(cls, var: VarId) -> "Polynomial":
        return cls._wrap({Monomial.of(var): 1})

    @classmethod
    def coerce(cls, value: Scalar) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a polynomial")

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not mono.powers for mono in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono.degree for mono in self._terms), default=-1)

    def __len__(self) -> int:
        return len(self._terms)

    def items(self) -> Iterable[Tuple[Monomial, int]]:
        return self._terms.items()

    def terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda term: term[0].order_key, reverse=True)

    def leading_term(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        mono = max(self._terms, key=lambda m: m.order_key)
        return mono, self._terms[mono]

    @property
    def leading_coefficient(self) -> int:
        return self.leading_term()[1] if self._terms else 0

    def variables(self) -> frozenset:
        return frozenset(var for mono in self._terms for var in mono.variables())

    def is_homogeneous(self) -> bool:
        return len({mono.degree for mono in self._terms}) <= 1

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Scalar) -> "Polynomial":
        other = Polynomial.coerce(other)
        terms = dict(self._terms)
        _accumulate(terms, other._terms)
        return Polynomial._wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Scalar) -> "Polynomial":
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other: Scalar) -> "Polynomial":
        other = Polynomial.coerce(other)
        if not self._terms or not other._terms:
            return Polynomial()
        if len(other._terms) < len(self._terms):
            small, large = other, self
        else:
            small, large = self, other
        terms: Dict[Monomial, int] = {}
        for mono_s, coeff_s in small._terms.items():
            for mono_l, coeff_l in large._terms.items():
                mono = mono_s * mono_l
                value = terms.get(mono, 0) + coeff_s * coeff_l
                if value:
                    terms[mono] = value
                else:
                    terms.pop(mono, None)
        return Polynomial._wrap(terms)

    __rmul__ = __mul__

    def __pow__(self, exp: int) -> "Polynomial":
        if exp < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            exp >>= 1
            if exp:
                base = base * base
        return result

    def times_var(self, var: VarId) -> "Polynomial":
        step = Monomial.of(var)
        return Polynomial._wrap({mono * step: coeff for mono, coeff in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- structure --------------------------------------------------------

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial._wrap({m: c for m, c in self._terms.items() if m.degree == d})

    def top(self) -> "Polynomial":
        return self.homogeneous_component(self.degree) if self._terms else Polynomial()

    def snd(self) -> "Polynomial":
        if self.degree < 1:
            return Polynomial()
        return self.homogeneous_component(self.degree - 1)

    def normalized(self) -> "Polynomial":
        """Sign representative with positive leading coefficient."""
        return -self if self.leading_coefficient < 0 else self

    def substitute(self, assignment: Mapping[VarId, Scalar]) -> "Polynomial":
        """Replace the assigned variables; unassigned ones stay symbolic."""
        values = {var: Polynomial.coerce(value) for var, value in assignment.items()}
        powers: Dict[Tuple[VarId, int], Polynomial] = {}
        terms: Dict[Monomial, int] = {}
        for mono, coeff in self._terms.items():
            kept = []
            product = Polynomial.constant(coeff)
            for var, exp in mono.powers:
                if var not in values:
                    kept.append((var, exp))
                    continue
                if (var, exp) not in powers:
                    powers[(var, exp)] = values[var] ** exp
                product = product * powers[(var, exp)]
            if kept:
                step = Monomial._sorted(tuple(kept))
                product = Polynomial._wrap({mono_p * step: c for mono_p, c in product._terms.items()})
            _accumulate(terms, product._terms)
        return Polynomial._wrap(terms)

    def evaluate(self, point: Mapping[VarId, int]) -> int:
        total = 0
        for mono, coeff in self._terms.items():
            value = coeff
            for var, exp in mono.powers:
                if var not in point:
                    raise ValueError(f"no value for {var}")
                value *= int(point[var]) ** exp
            total += value
        return total

    def restrict_to_line(self, base: Mapping[VarId, int], direction: Mapping[VarId, int]) -> "Univariate":
        """Expand f(base + t * direction) exactly as a polynomial in t."""
        powers: Dict[Tuple[VarId, int], Univariate] = {}
        total = Univariate(())
        for mono, coeff in self._terms.items():
            product = Univariate((coeff,))
            for var, exp in mono.powers:
                if var not in base or var not in direction:
                    raise ValueError(f"line does not assign {var}")
                if (var, exp) not in powers:
                    powers[(var, exp)] = Univariate((int(base[var]), int(direction[var]))) ** exp
                product = product * powers[(var, exp)]
            total = total + product
        return total

    # -- rendering --------------------------------------------------------

    def to_text(self, n: Optional[int] = None) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for position, (mono, coeff) in enumerate(self.terms()):
            body = mono.text(n)
            magnitude = abs(coeff)
            if not body:
                body = str(magnitude)
            elif magnitude != 1:
                body = f"{magnitude}*{body}"
            if position == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def to_json(self, n: Optional[int] = None) -> Dict[str, Any]:
        return {
            "terms": [
                {"coeff": str(coeff), "monomial": {var.name(n): exp for var, exp in mono.powers}}
                for mono, coeff in self.terms()
            ]
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Polynomial":
        terms: Dict[Monomial, int] = {}
        for term in obj["terms"]:
            mono = Monomial((parse_var(name), int(exp)) for name, exp in term["monomial"].items())
            _accumulate(terms, {mono: int(term["coeff"])})
        return cls._wrap(terms)

    def __repr__(self) -> str:
        return self.to_text()


def _accumulate(target: Dict[Monomial, int], source: Mapping[Monomial, int]) -> None:
    for mono, coeff in source.items():
        value = target.get(mono, 0) + coeff
        if value:
            target[mono] = value
        else:
            target.pop(mono, None)


ZERO = Polynomial()
ONE = Polynomial.constant(1)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def homogeneous_component(f: Polynomial, d: int) -> Polynomial:
    return f.homogeneous_component(d)


def top(f: Polynomial) -> Polynomial:
    return f.top()


def snd(f: Polynomial) -> Polynomial:
    return f.snd()


def substitute(f: Polynomial, assignment: Mapping[VarId, Scalar]) -> Polynomial:
    return f.substitute(assignment)


def restrict_to_line(f: Polynomial, base: Mapping[VarId, int], direction: Mapping[VarId, int]) -> "Univariate":
    return f.restrict_to_line(base, direction)


def unit_equal(f: Polynomial, g: Polynomial) -> bool:
    """True iff f = g or f = -g."""
    return f == g or f == -g


def monomial_content(f: Polynomial) -> Monomial:
    """Largest monomial dividing every term of f."""
    if f.is_zero:
        return ONE_MONOMIAL
    monos = [dict(mono.powers) for mono, _ in f.items()]
    common = {
        var: min(powers.get(var, 0) for powers in monos)
        for var in monos[0]
    }
    return Monomial((var, exp) for var, exp in common.items() if exp)


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient of f by g when g divides f exactly.

    Repeatedly cancels the leading term of the remainder against the leading
    term of g. Raises ArithmeticError as soon as that is impossible.
    """
    if g.is_zero:
        raise ArithmeticError("division by the zero polynomial")
    lead_mono, lead_coeff = g.leading_term()
    if len(g) == 1 and not lead_mono.powers:
        quotient = {}
        for mono, coeff in f.items():
            if coeff % lead_coeff:
                raise ArithmeticError(f"{lead_coeff} does not divide the coefficient {coeff}")
            quotient[mono] = coeff // lead_coeff
        return Polynomial._wrap(quotient)
    remainder = dict(f.items())
    quotient: Dict[Monomial, int] = {}
    while remainder:
        mono = max(remainder, key=lambda m: m.order_key)
        coeff = remainder[mono]
        if coeff % lead_coeff or not lead_mono.divides(mono):
            raise ArithmeticError(f"{g.to_text()} does not divide the dividend")
        q_mono = mono.quotient(lead_mono)
        q_coeff = coeff // lead_coeff
        quotient[q_mono] = q_coeff
        for g_mono, g_coeff in g.items():
            target = q_mono * g_mono
            value = remainder.get(target, 0) - q_coeff * g_coeff
            if value:
                remainder[target] = value
            else:
                remainder.pop(target, None)
    return Polynomial._wrap(quotient)


def divides(g: Polynomial, f: Polynomial) -> bool:
    try:
        divide_exact(f, g)
    except ArithmeticError:
        return False
    return True


# ---------------------------------------------------------------------------
# univariate polynomials in the line parameter t
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Univariate:
    """Dense integer polynomial in t, coefficients from low to high degree."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "Univariate") -> "Univariate":
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return Univariate(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "Univariate") -> "Univariate":
        if self.is_zero or other.is_zero:
            return Univariate(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Univariate(tuple(out))

    def __pow__(self, exp: int) -> "Univariate":
        result = Univariate((1,))
        for _ in range(exp):
            result = result * self
        return result

    def __call__(self, t: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * t + c
        return value

    def derivative(self) -> "Univariate":
        return Univariate(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "Univariate":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return Univariate(tuple(x // c for x in self.coeffs))


def _pseudo_remainder(a: Univariate, b: Univariate) -> Univariate:
    # remainder of lc(b)^k * a by b, without the final lc power
    remainder = list(a.coeffs)
    db = b.degree
    lb = b.leading
    while remainder and len(remainder) - 1 >= db:
        shift = len(remainder) - 1 - db
        lr = remainder[-1]
        remainder = [lb * c for c in remainder]
        for k, bc in enumerate(b.coeffs):
            remainder[k + shift] -= lr * bc
        while remainder and remainder[-1] == 0:
            remainder.pop()
    return Univariate(tuple(remainder))


def univariate_gcd(p: Univariate, q: Univariate) -> Univariate:
    """Primitive gcd over Z[t] via the primitive pseudo-remainder sequence."""
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        a, b = b, _pseudo_remainder(a, b).primitive()
    return a


def univariate_squarefree(p: Univariate) -> bool:
    if p.is_zero:
        raise ValueError("square-freeness of the zero polynomial is undefined")
    if p.degree <= 0:
        return True
    return univariate_gcd(p, p.derivative()).degree == 0


# ---------------------------------------------------------------------------
# structured matrices and determinants
# ---------------------------------------------------------------------------


class Cell(Enum):
    ZERO = "0"
    ONE = "1"


Entry = Union[Cell, VarId]


def entry_poly(entry: Entry) -> Polynomial:
    if entry is Cell.ZERO:
        return ZERO
    if entry is Cell.ONE:
        return ONE
    return Polynomial.var(entry)


@dataclass(frozen=True)
class StructuredMatrix:
    """Rectangular grid whose entries are Zero, One or a variable."""

    entries: Tuple[Tuple[Entry, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        widths = {len(row) for row in entries}
        if len(widths) > 1:
            raise ValueError(f"ragged matrix rows of widths {sorted(widths)}")
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, position: Tuple[int, int]) -> Entry:
        row, col = position
        return self.entries[row][col]

    def variables(self) -> List[VarId]:
        return [e for row in self.entries for e in row if isinstance(e, VarId)]

    def pattern(self) -> Tuple[str, ...]:
        """One string per row: '*' for variables, '0' and '1' otherwise."""
        return tuple(
            "".join("*" if isinstance(e, VarId) else e.value for e in row)
            for row in self.entries
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "StructuredMatrix":
        return StructuredMatrix(tuple(tuple(self.entries[r][c] for c in cols) for r in rows))

    def principal(self, size: int) -> "StructuredMatrix":
        return self.submatrix(range(size), range(size))

    def vstack(self, other: "StructuredMatrix") -> "StructuredMatrix":
        if self.entries and other.entries and self.cols != other.cols:
            raise ValueError(f"cannot stack {self.shape} on {other.shape}")
        return StructuredMatrix(self.entries + other.entries)

    def strip_unit_lines(self) -> "StructuredMatrix":
        """Remove, until none is left, every row or column whose only nonzero
        entry is a One, together with the line crossing it at that One.

        Expanding along such a line shows the determinant only changes sign.
        """
        rows = list(range(self.rows))
        cols = list(range(self.cols))
        changed = True
        while changed and rows and cols:
            changed = False
            for col in cols:
                nonzero = [r for r in rows if self.entries[r][col] is not Cell.ZERO]
                if len(nonzero) == 1 and self.entries[nonzero[0]][col] is Cell.ONE:
                    rows.remove(nonzero[0])
                    cols.remove(col)
                    changed = True
                    break
            if changed:
                continue
            for row in rows:
                nonzero = [c for c in cols if self.entries[row][c] is not Cell.ZERO]
                if len(nonzero) == 1 and self.entries[row][nonzero[0]] is Cell.ONE:
                    cols.remove(nonzero[0])
                    rows.remove(row)
                    changed = True
                    break
        return self.submatrix(rows, cols)

    def __str__(self) -> str:
        return "\n".join(
            " ".join(e.name() if isinstance(e, VarId) else e.value for e in row)
            for row in self.entries
        )


def determinant(matrix: StructuredMatrix) -> Polynomial:
    """Exact determinant by Laplace expansion with memoized minors.

    Each minor is expanded along the row or column of the current submatrix
    with the fewest nonzero entries (ties broken by fewest variables). Minors
    are keyed by their (row-set, column-set).
    """
    if matrix.rows != matrix.cols:
        raise ValueError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    start_ts = perf_counter()
    grid = matrix.entries
    memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Polynomial] = {}

    def line_cost(cells: List[Entry]) -> Tuple[int, int]:
        nonzero = sum(1 for e in cells if e is not Cell.ZERO)
        variables = sum(1 for e in cells if isinstance(e, VarId))
        return nonzero, variables

    def minor(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Polynomial:
        if not rows:
            return ONE
        cached = memo.get((rows, cols))
        if cached is not None:
            return cached
        best = None
        for p, r in enumerate(rows):
            cost = line_cost([grid[r][c] for c in cols])
            if best is None or cost < best[0]:
                best = (cost, False, p)
        for q, c in enumerate(cols):
            cost = line_cost([grid[r][c] for r in rows])
            if cost < best[0]:
                best = (cost, True, q)
        _, along_col, position = best
        terms: Dict[Monomial, int] = {}
        others = cols if not along_col else rows
        for k, other in enumerate(others):
            if along_col:
                r, c = other, cols[position]
                sign = -1 if (k + position) % 2 else 1
            else:
                r, c = rows[position], other
                sign = -1 if (position + k) % 2 else 1
            entry = grid[r][c]
            if entry is Cell.ZERO:
                continue
            sub = minor(
                tuple(x for x in rows if x != r),
                tuple(x for x in cols if x != c),
            )
            if sub.is_zero:
                continue
            piece = sub if entry is Cell.ONE else sub.times_var(entry)
            if sign < 0:
                piece = -piece
            _accumulate(terms, dict(piece.items()))
        result = Polynomial._wrap(terms)
        memo[(rows, cols)] = result
        return result

    result = minor(tuple(range(matrix.rows)), tuple(range(matrix.cols)))
    if matrix.rows >= SLOW_DETERMINANT_SIZE:
        logger.debug(
            "Laplace determinant of a %dx%d matrix (%d minors, %d terms) took %.4f sec.",
            matrix.rows, matrix.cols, len(memo), len(result), perf_counter() - start_ts,
        )
    return result


def determinant_bareiss(matrix: StructuredMatrix) -> Polynomial:
    """Exact determinant by fraction-free (Bareiss) elimination with row pivoting."""
    if matrix.rows != matrix.cols:
        raise ValueError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    if n == 0:
        return ONE
    a = [[entry_poly(e) for e in row] for row in matrix.entries]
    sign = 1
    previous = ONE
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = numerator if previous == ONE else divide_exact(numerator, previous)
        previous = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]
