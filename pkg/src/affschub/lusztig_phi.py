"""Lusztig's map from nilpotent matrices to lattices, N -> phi_N(E_1).

phi_N = t^{n-1} + t^{n-2} N + ... + N^{n-1}, so Φ(N) is the A-span of the
columns of the stacked matrix [N^{n-1}; ...; N; I] in rows 1..n^2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import field as fl
from .errors import NotNilpotentError, ShapeError, WindowError
from .field import Field
from .lattice import (
    LatticeWindow,
    coordinate_complement_dim,
    from_columns,
    rel_dim,
    standard_lattice,
)


@dataclass(frozen=True)
class NilpotentMatrix:
    entries: tuple
    field: Field = Field(0)

    def __post_init__(self):
        F = self.field
        m = fl.matrix(self.entries, F)
        object.__setattr__(self, "entries", m)
        if any(len(r) != len(m) for r in m):
            raise ShapeError("matrix must be square")
        if not fl.is_zero(fl.matpow(m, len(m), F)):
            raise NotNilpotentError("N^n != 0")

    @property
    def n(self) -> int:
        return len(self.entries)

    def conjugate(self, g) -> "NilpotentMatrix":
        F = self.field
        return NilpotentMatrix(fl.matmul(fl.matmul(g, self.entries, F), fl.inverse(g, F), F), F)


@dataclass(frozen=True)
class JordanType:
    b: tuple[int, ...]

    def __post_init__(self):
        b = tuple(self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        if sum(b) != n or any(x < y for x, y in zip(b, b[1:])) or (b and b[-1] < 0):
            raise ValueError(f"{b} is not a Jordan type of size {n}")

    @property
    def n(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class CellProfile:
    c: tuple[int, ...]
    cprime: tuple[int, ...]  # cprime[j-1] for j = 1..n


def rank_sequence(N: NilpotentMatrix) -> list[int]:
    """rank N^k for k = 0..n."""
    F = N.field
    out, P = [], fl.identity(N.n, F)
    for _ in range(N.n + 1):
        out.append(fl.rank(P, F))
        P = fl.matmul(P, N.entries, F)
    return out


def jordan_type(N: NilpotentMatrix) -> JordanType:
    r = rank_sequence(N)
    # blocks of size >= k: r[k-1] - r[k]
    at_least = [r[k - 1] - r[k] for k in range(1, N.n + 1)]
    b = [sum(1 for a in at_least if a >= i) for i in range(1, N.n + 1)]
    return JordanType(b)


def jordan_matrix(b, F: Field = Field(0)) -> NilpotentMatrix:
    """Block-diagonal nilpotent with Jordan blocks of the sizes in b."""
    n = sum(b)
    m = [[F(0)] * n for _ in range(n)]
    off = 0
    for size in b:
        for k in range(size - 1):
            m[off + k][off + k + 1] = F(1)
        off += size
    return NilpotentMatrix(m, F)


def jordan_types(n: int):
    """All partitions of n, padded to length n, in reverse lexicographic order."""
    def parts(rest, cap):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in parts(rest - k, k):
                yield (k,) + tail

    for p in parts(n, n):
        yield JordanType(p + (0,) * (n - len(p)))


def dominates(b1: JordanType, b2: JordanType) -> bool:
    """b1 >= b2 in dominance order (orbit of b2 lies in the closure of b1's)."""
    s1 = s2 = 0
    for x, y in zip(b1.b, b2.b):
        s1, s2 = s1 + x, s2 + y
        if s1 < s2:
            return False
    return True


def cell_profile(b: JordanType) -> CellProfile:
    n = b.n
    c = tuple(n - x for x in b.b)
    cprime = tuple(sum(max(j - ci, 0) for ci in c) for j in range(1, n + 1))
    return CellProfile(c, cprime)


def cprime_by_count(c, j: int) -> int:
    """The shortcut #{i : c_i <= j}; kept only for comparison."""
    return sum(1 for ci in c if ci <= j)


def default_phi_window(n: int) -> tuple[int, int]:
    return 1, n * n + n + 1


def stacked_matrix(N: NilpotentMatrix, lo: int, hi: int):
    n, F = N.n, N.field
    rows = [[F(0)] * n for _ in range(hi - lo)]
    P = fl.identity(n, F)
    for layer in range(n - 1, -1, -1):  # layer n-1 holds I, layer 0 holds N^{n-1}
        for i in range(n):
            for j in range(n):
                rows[layer * n + i + 1 - lo][j] = P[i][j]
        P = fl.matmul(N.entries, P, F)
    return rows


def phi(N: NilpotentMatrix, window: tuple[int, int] | None = None) -> LatticeWindow:
    n = N.n
    lo, hi = window or default_phi_window(n)
    if lo > 1 or hi < n * n + n + 1:
        raise WindowError(f"Φ needs the window to contain [1, {n * n + n}]")
    return from_columns(stacked_matrix(N, lo, hi), n, lo, hi, N.field)


def t_power_profile(L: LatticeWindow) -> tuple[int, ...]:
    """dim(L / L ∩ t^j E_1) for j = 1..n."""
    n = L.n
    return tuple(
        rel_dim(L, standard_lattice(n * j + 1, n, L.lo, L.hi, L.field)) for j in range(1, n + 1)
    )


def verify_phi_cell(N: NilpotentMatrix) -> bool:
    """Φ(N) lies in the opposite cell for its Jordan type.

    Checks the t^j E_1 profile against c', the sandwich E_1 ⊇ Φ(N) ⊇ t^n E_1,
    and Φ(N) ∩ t^{n-1} E'_1 = 0 (opposite-cell condition for vdim = n - n^2).
    """
    n, F = N.n, N.field
    lo, hi = default_phi_window(n)
    L = phi(N, (lo, hi))
    prof = cell_profile(jordan_type(N))
    E1 = standard_lattice(1, n, lo, hi, F)
    tnE1 = standard_lattice(n * n + 1, n, lo, hi, F)
    return (
        t_power_profile(L) == prof.cprime
        and tnE1 <= L <= E1
        and coordinate_complement_dim(L, n * n - n + 1) == 0
    )
