"""Bott-Samelson incidence diagrams for reduced words.

Start from the flag σ^j E_• (Λ_p = E_{p+j}). Letter s_i replaces the lattice
at flag position p = i+1 by any Λ with Λ_{p-1} ⊃ Λ ⊃ Λ_{p+1}, each step of
codimension one; positions are periodic with Λ_{p+n} = tΛ_p. Each choice is a
ℙ¹, so an ℓ-letter word gives an iterated ℙ¹-fibration with (q+1)^ℓ points
over F_q. Forgetting all but the final flag maps it onto X_π.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .affine_weyl import (
    AffinePermutation,
    ReducedWord,
    component_index,
    evaluate_word,
    sigma,
    simple_reflection,
)
from .errors import ConstraintViolationError, GuardExceededError, NotReducedError
from .field import Field
from .lattice import (
    LatticeFlag,
    LatticeWindow,
    complete_flag,
    coordinate_complement_dim,
    iter_between,
    shift,
    standard_lattice,
    t_mul,
)

BS_MAX_LETTERS = 8


@dataclass(frozen=True)
class Slot:
    name: str
    position: int   # flag position 1..n that this letter rewrites
    upper: str      # lattice it sits inside (codim 1)
    lower: str      # lattice it contains (codim 1)


@dataclass(frozen=True)
class BSDiagram:
    word: ReducedWord
    slots: tuple[Slot, ...]
    fixed: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def target(self) -> AffinePermutation:
        return evaluate_word(self.word)

    def edges(self) -> list[tuple[str, str]]:
        """(U, V) pairs meaning U ⊃ V with dim U/V = 1."""
        out = []
        for s in self.slots:
            out.append((s.upper, s.name))
            out.append((s.name, s.lower))
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sigma_power": self.word.sigma_power,
            "letters": list(self.word.letters),
            "slots": [s.name for s in self.slots],
            "fixed": list(self.fixed),
            "edges": [list(e) for e in self.edges()],
        }


def _position(letter: int) -> int:
    return letter + 1


def build_bs(w: ReducedWord) -> BSDiagram:
    if not w.is_reduced():
        raise NotReducedError(f"{w} is not reduced")
    n, j = w.n, w.sigma_power
    current = {p: f"E{p + j}" for p in range(1, n + 1)}
    fixed = set(current.values())
    positions = [_position(a) for a in w.letters]
    later = [positions[k + 1:].count(p) for k, p in enumerate(positions)]
    raw = []
    for k, p in enumerate(positions):
        name = f"L{p}" + "'" * later[k]
        up = current[p - 1] if p > 1 else "t^-1 " + current[n]
        low = current[p + 1] if p < n else "t " + current[1]
        for ref in (up, low):
            base = ref.split(" ")[-1]
            if base in fixed:
                fixed.add(ref)
        raw.append(Slot(name, p, up, low))
        current[p] = name
    return BSDiagram(w, tuple(raw), tuple(sorted(fixed)))


# ------------------------------------------------------------- enumeration

def bs_window(w: ReducedWord) -> tuple[int, int]:
    """A window holding every intermediate flag with room for t and t^{-1}."""
    n = w.n
    cur = sigma(n, w.sigma_power)
    vals = list(cur.window)
    for a in w.letters:
        cur = cur * simple_reflection(n, a)
        vals.extend(cur.window)
    lo = min(vals) - n
    hi = max(vals) + 2 * n
    lo -= (lo - 1) % n
    hi += (1 - hi) % n
    return lo, hi


def _start_flag(w: ReducedWord, lo: int, hi: int, F: Field) -> list[LatticeWindow]:
    return [standard_lattice(p + w.sigma_power, w.n, lo, hi, F) for p in range(1, w.n + 1)]


def _neighbors(flag: list[LatticeWindow], p: int) -> tuple[LatticeWindow, LatticeWindow]:
    n = len(flag)
    upper = flag[p - 2] if p > 1 else shift(flag[n - 1], -n)
    lower = flag[p] if p < n else t_mul(flag[0])
    return upper, lower


def iter_bs_points(
    d: BSDiagram, q: int, window: tuple[int, int] | None = None
) -> Iterator[tuple[tuple[LatticeWindow, ...], list[LatticeWindow]]]:
    """Yield (slot lattices in letter order, final flag) for every F_q-point."""
    if len(d.slots) > BS_MAX_LETTERS or q not in (2, 3):
        raise GuardExceededError(f"enumeration limited to {BS_MAX_LETTERS} letters and q in {{2,3}}")
    F = Field(q)
    lo, hi = window or bs_window(d.word)
    start = _start_flag(d.word, lo, hi, F)

    def rec(k, flag, chosen):
        if k == len(d.slots):
            yield tuple(chosen), flag
            return
        p = d.slots[k].position
        upper, lower = _neighbors(flag, p)
        if not lower <= upper or upper.dim - lower.dim != 2:
            raise ConstraintViolationError(
                f"slot {d.slots[k].name}: neighbors are not a codim-2 pair"
            )
        options = list(iter_between(lower, upper, lower.dim + 1))
        if len(options) != q + 1:
            raise ConstraintViolationError(
                f"slot {d.slots[k].name}: fiber has {len(options)} points, expected {q + 1}"
            )
        for L in options:
            nxt = list(flag)
            nxt[p - 1] = L
            yield from rec(k + 1, nxt, chosen + [L])

    yield from rec(0, start, [])


def _opposite_ok(flag: list[LatticeWindow], k: int, positions) -> bool:
    return all(coordinate_complement_dim(flag[p - 1], p + k) == 0 for p in positions)


def count_bs_points(
    d: BSDiagram, q: int, opposite: bool = False, positions=None
) -> int:
    """Number of F_q-points; with ``opposite`` only those whose retained
    lattices meet the opposite standard flag trivially."""
    k = component_index(d.target)
    positions = positions or range(1, d.n + 1)
    total = 0
    for _, flag in iter_bs_points(d, q):
        if not opposite or _opposite_ok(flag, k, positions):
            total += 1
    return total


def project_bs(point, d: BSDiagram, window: tuple[int, int] | None = None, d_parts=None) -> LatticeFlag:
    """Forget the superseded slots; keep the final flag (or a partial flag of
    composition ``d_parts``). Validates every incidence on the way."""
    point = tuple(point)
    if len(point) != len(d.slots):
        raise ConstraintViolationError(f"need {len(d.slots)} slot lattices, got {len(point)}")
    F = point[0].field if point else Field(2)
    lo, hi = (point[0].lo, point[0].hi) if point else (window or bs_window(d.word))
    flag = _start_flag(d.word, lo, hi, F)
    for slot, L in zip(d.slots, point):
        upper, lower = _neighbors(flag, slot.position)
        if not (lower <= L <= upper) or L.dim != lower.dim + 1 or upper.dim != L.dim + 1:
            raise ConstraintViolationError(f"slot {slot.name} violates its incidences")
        flag[slot.position - 1] = L
    full = complete_flag(flag)
    if not d_parts:
        return full
    keep, acc = [], 1
    for x in d_parts:
        keep.append(flag[acc - 1])
        acc += x
    return LatticeFlag(tuple(d_parts), tuple(keep))


def flag_key(f: LatticeFlag) -> tuple:
    return tuple(L.basis for L in f.lattices)
