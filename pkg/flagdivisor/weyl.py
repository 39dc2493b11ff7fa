"""Type-A Weyl group combinatorics on permutations in one-line notation.

Composition is (uv)(i) = u(v(i)) throughout, so w * s_i swaps the positions
i, i+1 of w's window and s_i * w swaps the values i, i+1.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import FrozenSet, List, Set, Tuple

logger = logging.getLogger(__name__)

REDUCED_WORD_CAP = 2000


@dataclass(frozen=True)
class Permutation:
    window: Tuple[int, ...]

    def __post_init__(self):
        window = tuple(int(k) for k in self.window)
        if sorted(window) != list(range(1, len(window) + 1)):
            raise ValueError(f"window {window} is not a permutation of 1..{len(window)}")
        object.__setattr__(self, "window", window)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError as e:
            raise ValueError(f"cannot parse permutation {text!r}: {e}") from e

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        return self.window[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        _same_group(self, other)
        return Permutation(tuple(self.window[k - 1] for k in other.window))

    def compose(self, other: "Permutation") -> "Permutation":
        """self * other, i.e. i -> self(other(i))."""
        return self * other

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for position, value in enumerate(self.window, start=1):
            inv[value - 1] = position
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(value == position for position, value in enumerate(self.window, start=1))

    def __str__(self) -> str:
        return ",".join(str(k) for k in self.window)


@dataclass(frozen=True)
class FlagType:
    """Fl(n_1 < ... < n_r; n)."""

    n: int
    steps: Tuple[int, ...]

    def __post_init__(self):
        steps = tuple(int(s) for s in self.steps)
        if not steps:
            raise ValueError("a flag type needs at least one step")
        if steps[0] < 1 or steps[-1] >= self.n:
            raise ValueError(f"steps {steps} must lie in 1..{self.n - 1}")
        if any(a >= b for a, b in zip(steps, steps[1:])):
            raise ValueError(f"steps {steps} must be strictly increasing")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def parse(cls, text: str) -> "FlagType":
        """Parse the serialized form "n=7;steps=3,6"."""
        try:
            fields = dict(part.split("=", 1) for part in text.replace(" ", "").split(";"))
            return cls(int(fields["n"]), tuple(int(s) for s in fields["steps"].split(",")))
        except (KeyError, ValueError) as e:
            raise ValueError(f"cannot parse flag type {text!r}: {e}") from e

    @property
    def r(self) -> int:
        return len(self.steps)

    @property
    def bounds(self) -> Tuple[int, ...]:
        """(n_0, n_1, ..., n_r, n_{r+1}) = (0, n_1, ..., n_r, n)."""
        return (0,) + self.steps + (self.n,)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        """(a_1, ..., a_{r+1})."""
        b = self.bounds
        return tuple(b[t + 1] - b[t] for t in range(self.r + 1))

    @property
    def blocks(self) -> List[range]:
        """Position blocks (n_s, n_{s+1}] as 1-based ranges."""
        b = self.bounds
        return [range(b[t] + 1, b[t + 1] + 1) for t in range(self.r + 1)]

    @property
    def parabolic_indices(self) -> FrozenSet[int]:
        """Delta_P as simple-root indices i not in n."""
        return frozenset(i for i in range(1, self.n) if i not in self.steps)

    @property
    def label(self) -> str:
        return "Fl(" + ",".join(str(s) for s in self.steps) + f";{self.n})"

    def __str__(self) -> str:
        return f"n={self.n};steps=" + ",".join(str(s) for s in self.steps)


def all_flags(n: int) -> List[FlagType]:
    """Every flag type of C^n, ordered by number of steps then steps."""
    return [
        FlagType(n, steps)
        for r in range(1, n)
        for steps in combinations(range(1, n), r)
    ]


def _same_group(u: Permutation, v: Permutation) -> None:
    if u.n != v.n:
        raise ValueError(f"permutations of S_{u.n} and S_{v.n} cannot be compared")


def simple_reflection(n: int, i: int) -> Permutation:
    if not 1 <= i < n:
        raise ValueError(f"s_{i} does not exist in S_{n}")
    window = list(range(1, n + 1))
    window[i - 1], window[i] = window[i], window[i - 1]
    return Permutation(tuple(window))


def length(w: Permutation) -> int:
    win = w.window
    return sum(1 for a in range(w.n) for b in range(a + 1, w.n) if win[a] > win[b])


def longest_elements(flag: FlagType) -> Tuple[Permutation, Permutation]:
    """(w0, wP): w0 reverses [n], wP reverses every position block."""
    w0 = Permutation(tuple(range(flag.n, 0, -1)))
    wp = []
    for block in flag.blocks:
        wp.extend(reversed(block))
    return w0, Permutation(tuple(wp))


def top_element(flag: FlagType) -> Permutation:
    """w0 * wP = pr_P(w0)."""
    w0, wp = longest_elements(flag)
    return w0 * wp


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated entrywise by those of v."""
    _same_group(u, v)
    for k in range(1, u.n):
        if any(a > b for a, b in zip(sorted(u.window[:k]), sorted(v.window[:k]))):
            return False
    return True


def upper_covers(w: Permutation) -> List[Permutation]:
    """All u with w covered by u: w * t_ab with length one more."""
    win = w.window
    covers = []
    for a in range(w.n):
        for b in range(a + 1, w.n):
            if win[a] < win[b] and not any(win[a] < win[c] < win[b] for c in range(a + 1, b)):
                swapped = list(win)
                swapped[a], swapped[b] = swapped[b], swapped[a]
                covers.append(Permutation(tuple(swapped)))
    return covers


def lower_covers(w: Permutation) -> List[Permutation]:
    win = w.window
    covers = []
    for a in range(w.n):
        for b in range(a + 1, w.n):
            if win[a] > win[b] and not any(win[b] < win[c] < win[a] for c in range(a + 1, b)):
                swapped = list(win)
                swapped[a], swapped[b] = swapped[b], swapped[a]
                covers.append(Permutation(tuple(swapped)))
    return covers


def reduced_words(w: Permutation, cap: int = REDUCED_WORD_CAP) -> List[Tuple[int, ...]]:
    """Reduced words of w (w = s_{i_1} ... s_{i_m}), at most `cap` of them."""
    words: List[Tuple[int, ...]] = []

    def extend(current: Permutation, suffix: Tuple[int, ...]) -> None:
        if len(words) >= cap:
            return
        if current.is_identity():
            words.append(suffix)
            return
        for i in range(1, current.n):
            if current.window[i - 1] > current.window[i]:
                extend(current * simple_reflection(current.n, i), (i,) + suffix)

    extend(w, ())
    return words


def lex_min_reduced_word(w: Permutation) -> Tuple[int, ...]:
    """Lexicographically smallest reduced word, peeling the smallest left descent."""
    word = []
    current = w
    while not current.is_identity():
        position = {value: p for p, value in enumerate(current.window)}
        i = next(i for i in range(1, current.n) if position[i] > position[i + 1])
        word.append(i)
        current = simple_reflection(current.n, i) * current
    return tuple(word)


def word_name(w: Permutation) -> str:
    word = lex_min_reduced_word(w)
    return "".join(f"s{i}" for i in word) if word else "id"


def all_permutations(n: int) -> List[Permutation]:
    """S_n ordered by length, then by lex-min reduced word."""
    perms = [Permutation(p) for p in permutations(range(1, n + 1))]
    return sorted(perms, key=lambda w: (length(w), lex_min_reduced_word(w)))


@lru_cache(maxsize=None)
def lower_interval(v: Permutation) -> FrozenSet[Permutation]:
    """[id, v] as the set of products of subwords of one reduced word of v.

    Any reduced word works, and non-reduced subword products already lie below v.
    """
    word = reduced_words(v, cap=1)[0]
    reached: Set[Permutation] = {Permutation.identity(v.n)}
    for letter in word:
        s = simple_reflection(v.n, letter)
        reached |= {x * s for x in reached}
    return frozenset(reached)


def bruhat_leq_subword(u: Permutation, v: Permutation) -> bool:
    """Subword-property oracle for bruhat_leq."""
    _same_group(u, v)
    return u in lower_interval(v)


def coset_rep(w: Permutation, flag: FlagType) -> Permutation:
    """pr_P(w): sort the window values inside each position block."""
    if w.n != flag.n:
        raise ValueError(f"{w} is not in S_{flag.n}")
    window: List[int] = []
    for block in flag.blocks:
        window.extend(sorted(w.window[p - 1] for p in block))
    return Permutation(tuple(window))


def is_minimal_rep(w: Permutation, flag: FlagType) -> bool:
    return coset_rep(w, flag) == w


def minimal_reps(flag: FlagType) -> List[Permutation]:
    return [w for w in all_permutations(flag.n) if is_minimal_rep(w, flag)]


def p_bruhat_leq(u: Permutation, v: Permutation, flag: FlagType) -> bool:
    """u <=_P v: a chain of covers from u to v along which pr_P strictly grows.

    Breadth-first search over covers inside the Bruhat interval [u, v].
    """
    _same_group(u, v)
    if u == v:
        return True
    if not bruhat_leq(u, v):
        return False
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        px = coset_rep(x, flag)
        for y in upper_covers(x):
            if y in seen or not bruhat_leq(y, v):
                continue
            py = coset_rep(y, flag)
            if py == px or not bruhat_leq(px, py):
                continue
            if y == v:
                return True
            seen.add(y)
            queue.append(y)
    return False


def gamma(v: Permutation) -> FrozenSet[int]:
    """Gamma(v) = {i : s_i <= v}, decided by v([i]) != [i]."""
    return frozenset(i for i in range(1, v.n) if max(v.window[:i]) > i)


def gamma_by_bruhat(v: Permutation) -> FrozenSet[int]:
    return frozenset(i for i in range(1, v.n) if bruhat_leq(simple_reflection(v.n, i), v))


def boundary_p_elements(flag: FlagType) -> Tuple[FrozenSet[Permutation], FrozenSet[Permutation]]:
    """(atoms, coatoms) of the P-Bruhat interval [id, w0 wP], by enumeration."""
    identity = Permutation.identity(flag.n)
    top = top_element(flag)
    atoms = frozenset(u for u in upper_covers(identity) if p_bruhat_leq(u, top, flag))
    coatoms = frozenset(v for v in lower_covers(top) if p_bruhat_leq(identity, v, flag))
    logger.debug("%s: %d atoms, %d coatoms", flag.label, len(atoms), len(coatoms))
    return atoms, coatoms


def closed_form_atoms(flag: FlagType) -> FrozenSet[Permutation]:
    return frozenset(simple_reflection(flag.n, i) for i in range(1, flag.n))


def closed_form_coatoms(flag: FlagType) -> FrozenSet[Permutation]:
    """{w0 s_i wP : i in n}."""
    w0, wp = longest_elements(flag)
    return frozenset(w0 * simple_reflection(flag.n, i) * wp for i in flag.steps)


def check_reduced_suffixes(w: Permutation, flag: FlagType, cap: int = REDUCED_WORD_CAP) -> bool:
    """Every suffix of every reduced word of w (up to `cap` words) stays in W^P."""
    if not is_minimal_rep(w, flag):
        raise ValueError(f"{w} is not a minimal coset representative for {flag.label}")
    for word in reduced_words(w, cap):
        suffix = Permutation.identity(w.n)
        for letter in reversed(word):
            suffix = simple_reflection(w.n, letter) * suffix
            if not is_minimal_rep(suffix, flag):
                return False
    return True
