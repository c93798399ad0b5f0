"""Nilpotent representations of the cyclic quiver on h nodes.

A representation is a tuple (M_1, ..., M_h) with M_j : k^{d_j} -> k^{d_{j-1}}
(indices mod h, d_0 = d_h). The map Ψ sends it to a partial flag of lattices
Λ_1 ⊃ ... ⊃ Λ_h ⊃ tΛ_1 of composition d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from . import field as fl
from .affine_weyl import AffinePermutation
from .errors import (
    ConstraintViolationError,
    InconsistentRankTableError,
    NotNilpotentError,
    ShapeError,
    WindowError,
)
from .field import Field
from .lattice import (
    LatticeFlag,
    coordinate_complement_dim,
    from_columns,
    rel_dim,
    standard_lattice,
)


@dataclass(frozen=True)
class DimensionVector:
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if not self.d or any(x <= 0 for x in self.d):
            raise ConstraintViolationError(f"dimension vector {self.d} must be positive")

    @property
    def h(self) -> int:
        return len(self.d)

    @property
    def n(self) -> int:
        return sum(self.d)

    def __getitem__(self, j: int) -> int:
        """d_j with j taken mod h (1-based)."""
        return self.d[(j - 1) % self.h]

    def start(self, j: int) -> int:
        """Index where E_(j) begins, with E_(j + hk) = t^k E_(j)."""
        q, r = divmod(j - 1, self.h)
        return 1 + sum(self.d[:r]) + q * self.n

    def positions(self, lo: int, hi: int) -> list[int]:
        """All block starts E_(k) visible in [lo, hi]."""
        out = []
        k = (lo - 1) // self.n * self.h - self.h
        while True:
            s = self.start(k)
            if s > hi:
                return out
            if s >= lo:
                out.append(s)
            k += 1


@dataclass(frozen=True)
class QuiverRep:
    dims: DimensionVector
    mats: tuple
    field: Field = Field(0)

    def __post_init__(self):
        dims = self.dims if isinstance(self.dims, DimensionVector) else DimensionVector(self.dims)
        object.__setattr__(self, "dims", dims)
        if len(self.mats) != dims.h:
            raise ShapeError(f"need {dims.h} matrices, got {len(self.mats)}")
        mats = []
        for j, m in enumerate(self.mats, start=1):
            rows, cols = dims[j - 1], dims[j]
            m = fl.matrix(m, self.field)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ShapeError(f"M_{j} must be {rows}x{cols}")
            mats.append(m)
        object.__setattr__(self, "mats", tuple(mats))

    @property
    def h(self) -> int:
        return self.dims.h

    @property
    def n(self) -> int:
        return self.dims.n

    def mat(self, j: int):
        return self.mats[(j - 1) % self.h]

    def to_json(self) -> dict:
        F = self.field
        return {
            "d": list(self.dims.d),
            "mats": [[[F.to_int(x) for x in row] for row in m] for m in self.mats],
            "q": F.modulus,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuiverRep":
        return cls(DimensionVector(obj["d"]), tuple(obj["mats"]), Field(obj.get("q", 0)))


def path_product(M: QuiverRep, j: int, k: int):
    """M_j^{[k]} = M_{j-k+1} ... M_{j-1} M_j, a d_{j-k} x d_j matrix."""
    F = M.field
    out = fl.identity(M.dims[j], F)
    for i in range(j, j - k, -1):
        out = fl.matmul(M.mat(i), out, F, inner=M.dims[i])
    return out


def is_nilpotent(M: QuiverRep) -> bool:
    h = M.h
    return fl.is_zero(path_product(M, h, h * M.dims[h]))


def rotate(M: QuiverRep, step: int = 1) -> QuiverRep:
    """Relabel node j+step as node j."""
    h = M.h
    d = [M.dims[j + step] for j in range(1, h + 1)]
    mats = tuple(M.mat(j + step) for j in range(1, h + 1))
    return QuiverRep(DimensionVector(d), mats, M.field)


def act(M: QuiverRep, g) -> QuiverRep:
    """(g_j) · M: M_j -> g_{j-1} M_j g_j^{-1}."""
    F = M.field
    h = M.h
    mats = []
    for j in range(1, h + 1):
        left = g[(j - 2) % h]
        right = fl.inverse(g[j - 1], F)
        mats.append(fl.matmul(fl.matmul(left, M.mat(j), F), right, F))
    return QuiverRep(M.dims, tuple(mats), F)


def random_rep(d, F: Field, rng, density: float = 0.5, tries: int = 200) -> QuiverRep:
    """A random nilpotent rep; falls back to zeroing one arrow if needed."""
    dims = DimensionVector(d)
    h = dims.h
    for _ in range(tries):
        mats = tuple(
            fl.random_matrix(dims[j - 1], dims[j], F, rng, density) for j in range(1, h + 1)
        )
        M = QuiverRep(dims, mats, F)
        if is_nilpotent(M):
            return M
    mats = list(mats)
    k = rng.randrange(h)
    mats[k] = fl.zeros(dims[k], dims[k + 1], F)
    return QuiverRep(dims, tuple(mats), F)


def random_group_element(d, F: Field, rng) -> tuple:
    return tuple(fl.random_invertible(x, F, rng) for x in DimensionVector(d).d)


# -------------------------------------------------------------- rank tables

@dataclass(frozen=True)
class RankTable:
    """r_j^k for 1 <= j <= h and 0 <= k <= K; zero beyond K."""

    dims: DimensionVector
    r: dict

    @property
    def h(self) -> int:
        return self.dims.h

    @property
    def top(self) -> int:
        return (self.dims.n - 1) * self.h

    def __call__(self, j: int, k: int) -> int:
        if k < 0:
            raise ValueError("rank numbers need k >= 0")
        return self.r.get(((j - 1) % self.h + 1, k), 0)

    def multiplicities(self) -> dict:
        """m_j^k = r_j^k - r_j^{k+1} - r_{j+1}^{k+1} + r_{j+1}^{k+2}; raises if any is negative.

        m_j^k counts chains e_j -> ... -> e_{j-k} whose top sits at node j; a
        vector at node j fails to be a chain top exactly when node j+1 maps
        onto it, hence the j+1 terms.
        """
        m = {}
        for j in range(1, self.h + 1):
            for k in range(self.top + 1):
                v = self(j, k) - self(j, k + 1) - self(j + 1, k + 1) + self(j + 1, k + 2)
                if v < 0:
                    raise InconsistentRankTableError(f"m_{j}^{k} = {v} < 0")
                if v:
                    m[(j, k)] = v
        return m

    def to_json(self) -> dict:
        return {"d": list(self.dims.d), "r": {f"{j},{k}": v for (j, k), v in sorted(self.r.items())}}

    @classmethod
    def from_json(cls, obj: dict) -> "RankTable":
        dims = DimensionVector(obj["d"])
        r = {}
        for key, v in obj["r"].items():
            j, k = (int(x) for x in key.split(","))
            r[(j, k)] = int(v)
        for j in range(1, dims.h + 1):
            r.setdefault((j, 0), dims[j])
        return cls(dims, r)


def rank_table(M: QuiverRep) -> RankTable:
    if not is_nilpotent(M):
        raise NotNilpotentError("the cyclic product is not nilpotent")
    F = M.field
    top = (M.n - 1) * M.h
    r = {}
    for j in range(1, M.h + 1):
        P = fl.identity(M.dims[j], F)
        for k in range(top + 1):
            r[(j, k)] = fl.rank(P, F)
            P = fl.matmul(M.mat(j - k), P, F, inner=M.dims[j - k])
    table = RankTable(M.dims, r)
    table.multiplicities()
    return table


def ranks_from_multiplicities(dims, m: dict) -> RankTable:
    """Invert m -> r by summing the defining recurrence from the top down."""
    dims = dims if isinstance(dims, DimensionVector) else DimensionVector(dims)
    h = dims.h
    top = (dims.n - 1) * h
    r: dict = {}

    def get(j, k):
        return r.get(((j - 1) % h + 1, k), 0)

    for k in range(top, -1, -1):
        for j in range(1, h + 1):
            r[(j, k)] = m.get((j, k), 0) + get(j, k + 1) + get(j + 1, k + 1) - get(j + 1, k + 2)
    return RankTable(dims, r)


def indecomposable_dims(h: int, j: int, k: int) -> list[int]:
    """Dimension vector of I_j^k: one basis vector at each of nodes j, j-1, ..., j-k."""
    out = [0] * h
    for i in range(j - k, j + 1):
        out[(i - 1) % h] += 1
    return out


def from_multiplicities(h: int, m: dict, F: Field = Field(0)) -> QuiverRep:
    """Direct sum of m_j^k copies of each chain e_j -> e_{j-1} -> ... -> e_{j-k} -> 0."""
    node_basis: list[list] = [[] for _ in range(h)]  # labels (chain id, position)
    chains = []
    for (j, k), mult in sorted(m.items()):
        for _ in range(mult):
            cid = len(chains)
            chains.append((j, k))
            for i in range(j, j - k - 1, -1):
                node_basis[(i - 1) % h].append((cid, i))
    d = [len(b) for b in node_basis]
    if any(x == 0 for x in d):
        raise ConstraintViolationError(f"multiplicities give a zero entry in dimension vector {d}")
    index = [{lab: a for a, lab in enumerate(b)} for b in node_basis]
    one = F(1)
    mats = []
    for node in range(1, h + 1):
        src, dst = node - 1, (node - 2) % h
        mat = [[F(0)] * d[src] for _ in range(d[dst])]
        for col, (cid, i) in enumerate(node_basis[src]):
            j, k = chains[cid]
            if i - 1 >= j - k:
                mat[index[dst][(cid, i - 1)]][col] = one
        mats.append(mat)
    return QuiverRep(DimensionVector(d), tuple(mats), F)


# ------------------------------------------------------------------------ Ψ

def default_psi_window(dims: DimensionVector) -> tuple[int, int]:
    n = dims.n
    return 1, n * n + n + 1


def psi_matrix(M: QuiverRep, lo: int, hi: int):
    """The n columns v_1..v_n: column block j has I_j at row block nh-h+j and
    M_j^{[k]} at row block nh-h+j-k above it."""
    dims, F, n, h = M.dims, M.field, M.n, M.h
    rows = [[F(0)] * n for _ in range(hi - lo)]
    for j in range(1, h + 1):
        col0 = dims.start(j) - 1
        base = n * h - h + j
        for k in range(base):
            block = fl.identity(dims[j], F) if k == 0 else path_product(M, j, k)
            r0 = dims.start(base - k) - lo
            for a, row in enumerate(block):
                for b, x in enumerate(row):
                    rows[r0 + a][col0 + b] = x
    return rows


def psi(M: QuiverRep, window: tuple[int, int] | None = None) -> LatticeFlag:
    if not is_nilpotent(M):
        raise NotNilpotentError("Ψ is only defined on nilpotent representations")
    dims, F, n = M.dims, M.field, M.n
    lo, hi = window or default_psi_window(dims)
    if lo > 1 or hi < n * n + n + 1 or (hi - lo) % n:
        raise WindowError(f"Ψ needs a window [lo, hi) with lo <= 1, hi >= {n * n + n + 1}")
    cols = psi_matrix(M, lo, hi)
    lattices = []
    for j in range(1, M.h + 1):
        first = dims.start(j) - 1
        gens = []
        for c in range(n):
            v = [row[c] for row in cols]
            if c < first:  # columns of earlier blocks enter as t * v
                v = [F(0)] * n + v[:-n]
            gens.append(v)
        lattices.append(from_columns(fl.transpose(gens), n, lo, hi, F))
    return LatticeFlag(dims.d, lattices)


def psi_statistic(r: RankTable, j: int, k: int) -> int:
    """Predicted dim(Λ_j / Λ_j ∩ E_(k)) for Ψ of a rep with rank table r.

    r_j^e with e = nh - h + j - k + 1 while e >= 0; once E_(k) lies inside
    t^{n-1}E_(j+1) the quotient simply grows by the index gap.
    """
    dims = r.dims
    n, h = dims.n, dims.h
    e = n * h - h + j - k + 1
    if e >= 0:
        return r(j, e)
    return dims[j] + dims.start(k) - dims.start(n * h - h + j + 1)


def psi_image_conditions(f: LatticeFlag, dims: DimensionVector, r: RankTable | None = None) -> bool:
    """Membership test for the image of Ψ (and of one orbit, if r is given).

    Λ_j ⊇ t^{n-1}E_(j+1) with quotient of dimension d_j, and
    Λ_j ∩ t^{n-1}E'_(j) = 0, plus the flag steps checked by LatticeFlag.
    """
    n, h = dims.n, dims.h
    lo, hi = f.window
    if tuple(f.d) != dims.d:
        return False
    for j, L in enumerate(f.lattices, start=1):
        lower = standard_lattice(dims.start(j + 1) + n * (n - 1), n, lo, hi, L.field)
        if not lower <= L or L.dim - lower.dim != dims[j]:
            return False
        if coordinate_complement_dim(L, dims.start(j) + n * (n - 1)):
            return False
        if r is not None:
            for k in range(1, n * h + 2):
                E = standard_lattice(dims.start(k), n, lo, hi, L.field)
                if rel_dim(L, E) != psi_statistic(r, j, k):
                    return False
    return True


# ------------------------------------------------------------ permutations

def parabolic_leq(dims: DimensionVector, p: AffinePermutation, q: AffinePermutation) -> bool:
    """Bruhat order on W/W_d: compare #(pZ_(j) minus Z_{>=m}) for all j, m."""
    n = dims.n
    vals = p.window + q.window
    lo, hi = min(vals) - n, max(vals) + 2 * n
    for j in range(1, dims.h + 1):
        i = dims.start(j)
        for m in range(lo, hi + 1):
            if p.count_below(i, m) > q.count_below(i, m):
                return False
    return True


def image_candidates(dims) -> list[AffinePermutation]:
    """Every π mod W_d whose sets πZ_(j) satisfy the image constraints.

    The sets S_j = πZ_(j) must form a chain S_1 ⊃ ... ⊃ S_h ⊃ S_1 + n with
    steps d_j, and S_j ⊇ Z_{>=b_j} with exactly d_j extra elements, where
    Z_{>=b_j} corresponds to t^{n-1}E_(j+1).
    """
    dims = dims if isinstance(dims, DimensionVector) else DimensionVector(dims)
    n, h = dims.n, dims.h
    bounds = [dims.start(j + 1) + n * (n - 1) for j in range(1, h + 1)]
    b1 = bounds[0]
    out = []
    for extra in itertools.combinations(range(b1 - dims[1] * n, b1), dims[1]):
        ex = set(extra)
        if any(a + n < b1 and a + n not in ex for a in ex):
            continue
        S1 = frozenset(ex) | frozenset(range(b1, b1 + 2 * n))
        heads = sorted(x for x in S1 if x - n not in S1 and x < b1 + n)
        # choose which heads go into block j (j = 1..h), block j leaves after S_j
        for assign in _ordered_partitions(heads, dims.d):
            sets = []
            removed: set = set()
            for j in range(h):
                sets.append(frozenset(x for x in S1 if x not in removed))
                removed |= set(assign[j])
            ok = True
            for j in range(h):
                below = {x for x in sets[j] if x < bounds[j]}
                if len(below) != dims.d[j] or not all(
                    x in sets[j] for x in range(bounds[j], b1 + 2 * n)
                ):
                    ok = False
                    break
            if not ok:
                continue
            p = AffinePermutation(n, [x for block in assign for x in sorted(block)])
            out.append(p)
    return out


def _ordered_partitions(items, sizes) -> Iterator[tuple]:
    if not sizes:
        if not items:
            yield ()
        return
    for first in itertools.combinations(items, sizes[0]):
        rest = [x for x in items if x not in first]
        for tail in _ordered_partitions(rest, sizes[1:]):
            yield (first,) + tail


def component_permutations(dims) -> list[AffinePermutation]:
    """Bruhat-maximal image candidates: one per irreducible component of Ψ(all reps)."""
    dims = dims if isinstance(dims, DimensionVector) else DimensionVector(dims)
    cands = image_candidates(dims)
    maximal = [
        p for p in cands
        if not any(q != p and parabolic_leq(dims, p, q) for q in cands)
    ]
    return sorted(maximal, key=lambda p: p.window)


def orbit_permutation(r: RankTable) -> AffinePermutation:
    """π^r: fill each πZ_(j) with the smallest integers matching the Ψ statistics."""
    dims = r.dims
    n, h = dims.n, dims.h
    # inside [start(k), start(k+1)) the set πZ_(j) has count(j, k+1) - count(j, k) elements
    hi_k = n * h + 2
    sets = []
    for j in range(1, h + 1):
        S = set()
        for k in range(1, hi_k):
            a, b = dims.start(k), dims.start(k + 1)
            c = psi_statistic(r, j, k + 1) - psi_statistic(r, j, k)
            if c < 0 or c > b - a:
                raise InconsistentRankTableError(f"rank table gives {c} elements in [{a}, {b})")
            S.update(range(a, a + c))
        S.update(range(dims.start(hi_k), dims.start(hi_k) + 2 * n))
        sets.append(frozenset(S))
    # trim to a common tail so that S_h ⊃ S_1 + n is checked on a finite range
    tail = dims.start(hi_k) + n
    sets = [frozenset(x for x in S if x < tail) | frozenset(range(tail, tail + 2 * n)) for S in sets]
    heads = []
    for j in range(h):
        S = sets[j]
        nxt = sets[j + 1] if j + 1 < h else frozenset(x + n for x in sets[0])
        diff = sorted(x for x in S - nxt if x < tail)
        if len(diff) != dims.d[j]:
            raise InconsistentRankTableError(f"step {j + 1} has {len(diff)} elements, expected {dims.d[j]}")
        heads.extend(diff)
    if len({x % n for x in heads}) != n:
        raise InconsistentRankTableError("statistics do not come from a permutation")
    return AffinePermutation(n, heads)


def orbit_representative(r: RankTable, F: Field = Field(0)) -> QuiverRep:
    return from_multiplicities(r.h, r.multiplicities(), F)
