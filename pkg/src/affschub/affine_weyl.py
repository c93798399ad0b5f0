"""The extended affine symmetric group in window notation.

An element is a bijection ``p`` of the integers with ``p(i + n) = p(i) + n``,
stored as its window ``[p(1), ..., p(n)]``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ArityError,
    GuardExceededError,
    LetterRangeError,
    NotABijectionError,
    ParseError,
    ShapeError,
)

BRUHAT_INTERVAL_MAX_LENGTH = 12


@dataclass(frozen=True)
class AffinePermutation:
    n: int
    window: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(int(x) for x in self.window))
        if self.n < 1:
            raise ArityError(f"period must be positive, got {self.n}")
        if len(self.window) != self.n:
            raise ArityError(f"window has {len(self.window)} entries, expected {self.n}")
        if len({x % self.n for x in self.window}) != self.n:
            raise NotABijectionError(f"{list(self.window)} is not a bijection of Z/{self.n}Z")

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        return compose(self, other)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.window) + "]"

    def inverse(self) -> "AffinePermutation":
        inv = [0] * self.n
        for i, v in enumerate(self.window, start=1):
            q, r = divmod(v - 1, self.n)
            inv[r] = i - q * self.n
        return AffinePermutation(self.n, inv)

    def image_set(self, i: int, bound: int) -> list[int]:
        """Sorted elements of p(Z_{>=i}) lying below ``bound``."""
        out = []
        for r in range(self.n):
            v = self(i + r)
            while v < bound:
                out.append(v)
                v += self.n
        return sorted(out)

    def count_below(self, i: int, j: int) -> int:
        """#(p(Z_{>=i}) \\ Z_{>=j})."""
        total = 0
        for r in range(self.n):
            v = self(i + r)
            if v < j:
                total += -((v - j) // self.n)
        return total


@dataclass(frozen=True)
class TranslationVector:
    n: int
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if len(self.c) != self.n:
            raise ArityError(f"translation vector has {len(self.c)} entries, expected {self.n}")

    def is_sum_zero(self) -> bool:
        return sum(self.c) == 0

    def element(self) -> AffinePermutation:
        return AffinePermutation(self.n, [i + 1 + self.n * ci for i, ci in enumerate(self.c)])


@dataclass(frozen=True)
class ReducedWord:
    """``sigma^sigma_power * s_{letters[0]} * ... * s_{letters[-1]}``."""

    n: int
    sigma_power: int = 0
    letters: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for a in self.letters:
            if not 0 <= a < self.n:
                raise LetterRangeError(f"letter {a} outside [0, {self.n - 1}]")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        head = f"sigma^{self.sigma_power} " if self.sigma_power else ""
        return head + (" ".join(f"s{a}" for a in self.letters) or "id")

    def is_reduced(self) -> bool:
        return len(self.letters) == length(evaluate_word(self))


# ------------------------------------------------------------- constructors

def parse_window(text: str, n: int) -> AffinePermutation:
    text = text.strip()
    if not re.fullmatch(r"\[\s*-?\d+(\s*,\s*-?\d+)*\s*\]", text):
        raise ParseError(f"expected a bracketed integer list, got {text!r}")
    vals = [int(x) for x in text[1:-1].split(",")]
    return AffinePermutation(n, vals)


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(n, range(1, n + 1))


def sigma(n: int, power: int = 1) -> AffinePermutation:
    return AffinePermutation(n, [i + power for i in range(1, n + 1)])


def simple_reflection(n: int, i: int) -> AffinePermutation:
    """s_i swaps i and i+1 (indices mod n); s_0 swaps 0 and 1."""
    if n < 2:
        raise LetterRangeError("simple reflections need n >= 2")
    i %= n
    w = list(range(1, n + 1))
    if i == 0:
        w[0], w[-1] = 0, n + 1
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return AffinePermutation(n, w)


def translation(c: Sequence[int]) -> AffinePermutation:
    return TranslationVector(len(c), c).element()


def from_parts(pbar: Sequence[int], c: Sequence[int]) -> AffinePermutation:
    """pbar * tau^c, with pbar a permutation of 1..n in one-line form."""
    n = len(pbar)
    return AffinePermutation(n, [pbar[i] + n * c[i] for i in range(n)])


# --------------------------------------------------------------- operations

def compose(p: AffinePermutation, q: AffinePermutation) -> AffinePermutation:
    if p.n != q.n:
        raise ShapeError(f"cannot compose periods {p.n} and {q.n}")
    return AffinePermutation(p.n, [p(v) for v in q.window])


def decompose(p: AffinePermutation) -> tuple[tuple[int, ...], TranslationVector]:
    n = p.n
    pbar, c = [], []
    for v in p.window:
        b = (v - 1) % n + 1
        pbar.append(b)
        c.append((v - b) // n)
    return tuple(pbar), TranslationVector(n, c)


def length(p: AffinePermutation) -> int:
    n, w = p.n, p.window
    return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))


def component_index(p: AffinePermutation) -> int:
    total = sum(v - i for i, v in enumerate(p.window, start=1))
    return total // p.n


def right_descents(p: AffinePermutation) -> list[int]:
    return [i for i in range(p.n) if p(i) > p(i + 1)]


def left_descents(p: AffinePermutation) -> list[int]:
    return right_descents(p.inverse())


def greedy_reduced_word(p: AffinePermutation) -> ReducedWord:
    peeled = []
    cur = p
    if p.n >= 2:
        while True:
            desc = right_descents(cur)
            if not desc:
                break
            i = desc[0]
            peeled.append(i)
            cur = compose(cur, simple_reflection(p.n, i))
    return ReducedWord(p.n, component_index(cur), tuple(reversed(peeled)))


def evaluate_word(w: ReducedWord) -> AffinePermutation:
    cur = sigma(w.n, w.sigma_power)
    for a in w.letters:
        cur = compose(cur, simple_reflection(w.n, a))
    return cur


def bruhat_leq(p: AffinePermutation, q: AffinePermutation) -> bool:
    if p.n != q.n:
        raise ShapeError(f"cannot compare periods {p.n} and {q.n}")
    if component_index(p) != component_index(q):
        return False
    n = p.n
    vals = p.window + q.window
    lo, hi = min(vals) - n, max(vals) + 2 * n
    return all(
        p.count_below(i, j) <= q.count_below(i, j)
        for i in range(1, n + 1)
        for j in range(lo, hi + 1)
    )


def bruhat_interval(p: AffinePermutation) -> set[AffinePermutation]:
    """{w : w <= p} via the subword property of one reduced word."""
    word = greedy_reduced_word(p)
    if len(word) > BRUHAT_INTERVAL_MAX_LENGTH:
        raise GuardExceededError(
            f"length {len(word)} exceeds the interval guard {BRUHAT_INTERVAL_MAX_LENGTH}"
        )
    gens = [simple_reflection(p.n, a) for a in word.letters] if p.n >= 2 else []
    # grow the set of subword products prefix by prefix
    current = {sigma(p.n, word.sigma_power)}
    for g in gens:
        current |= {compose(w, g) for w in current}
    return current


def elements_up_to_length(n: int, max_len: int, component: int = 0) -> set[AffinePermutation]:
    """Every element of W_component of length <= max_len, by breadth-first search."""
    start = sigma(n, component)
    seen = {start}
    frontier = [start]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for i in range(n):
                v = compose(w, simple_reflection(n, i))
                if v not in seen and length(v) <= max_len:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def random_element(n: int, rng, spread: int = 3) -> AffinePermutation:
    """Window entries within roughly +-spread*n."""
    pbar = list(range(1, n + 1))
    rng.shuffle(pbar)
    c = [rng.randint(-spread + 1, spread - 1) for _ in range(n)]
    return from_parts(pbar, c)


def all_finite_permutations(n: int) -> Iterable[tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))
