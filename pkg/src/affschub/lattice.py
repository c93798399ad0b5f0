"""Finite-window model of A-lattices in V = k((t))^n.

A lattice ``L`` with ``E_lo ⊇ L ⊇ E_hi`` is stored by the image of ``L`` in
``E_lo / E_hi``: vectors in coordinates ``e_lo, ..., e_{hi-1}``, with
``e_{i+n} = t e_i``. Everything containing ``E_hi`` is implicit.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import field as fl
from .affine_weyl import AffinePermutation, component_index, length, bruhat_interval
from .errors import ConstraintViolationError, GuardExceededError, ShapeError, WindowError
from .field import Field

ENUMERATION_MAX_LENGTH = 8


@dataclass(frozen=True)
class LatticeWindow:
    n: int
    lo: int
    hi: int
    field: Field
    basis: tuple  # canonical echelon basis vectors, length hi - lo each

    def __post_init__(self):
        if self.lo >= self.hi or (self.hi - self.lo) % self.n:
            raise WindowError(f"bad window [{self.lo}, {self.hi}) for n={self.n}")

    @property
    def width(self) -> int:
        return self.hi - self.lo

    @property
    def dim(self) -> int:
        """Dimension of L / E_hi."""
        return len(self.basis)

    def same_window(self, other: "LatticeWindow") -> None:
        if (self.n, self.lo, self.hi, self.field) != (other.n, other.lo, other.hi, other.field):
            raise ShapeError("lattices live in different windows")

    def __le__(self, other: "LatticeWindow") -> bool:
        self.same_window(other)
        return all(fl.in_span(v, other.basis, self.field) for v in self.basis)

    def __add__(self, other: "LatticeWindow") -> "LatticeWindow":
        self.same_window(other)
        return self._with(self.basis + other.basis)

    def _with(self, vecs) -> "LatticeWindow":
        return LatticeWindow(self.n, self.lo, self.hi, self.field, fl.echelon(vecs, self.field))

    def columns(self) -> tuple:
        """Basis as a (hi-lo) x dim matrix."""
        return fl.transpose(self.basis) if self.basis else tuple(() for _ in range(self.width))

    def to_json(self) -> dict:
        F = self.field
        return {
            "n": self.n, "lo": self.lo, "hi": self.hi, "q": F.modulus,
            "rows": [[F.to_int(x) for x in row] for row in self.columns()],
        }


def _shift_vec(vec: Sequence, s: int, zero) -> tuple:
    """e_i -> e_{i+s} inside the window, dropping what falls past hi."""
    w = len(vec)
    out = [zero] * w
    for i, x in enumerate(vec):
        if x != 0:
            j = i + s
            if j < 0:
                raise WindowError("shift leaves the window from below")
            if j < w:
                out[j] = x
    return tuple(out)


def t_closure(vecs, n: int, F: Field) -> tuple:
    """Echelon basis of the A-span of ``vecs`` inside the window."""
    basis = fl.echelon(vecs, F)
    z = F(0)
    while True:
        new = [_shift_vec(v, n, z) for v in basis]
        grown = fl.echelon(basis + tuple(new), F)
        if len(grown) == len(basis):
            return basis
        basis = grown


# ----------------------------------------------------------- construction

def standard_lattice(j: int, n: int, lo: int, hi: int, F: Field) -> LatticeWindow:
    if not lo <= j <= hi:
        raise WindowError(f"E_{j} is not visible in the window [{lo}, {hi})")
    w = hi - lo
    one, z = F(1), F(0)
    vecs = tuple(tuple(one if c == r else z for c in range(w)) for r in range(j - lo, w))
    return LatticeWindow(n, lo, hi, F, vecs)


def from_vectors(vecs, n: int, lo: int, hi: int, F: Field) -> LatticeWindow:
    w = hi - lo
    vecs = [tuple(F(x) for x in v) for v in vecs]
    for v in vecs:
        if len(v) != w:
            raise ShapeError(f"vector of length {len(v)} in a window of width {w}")
    return LatticeWindow(n, lo, hi, F, t_closure(vecs, n, F))


def from_columns(cols, n: int, lo: int, hi: int, F: Field) -> LatticeWindow:
    """A-span of the columns of a (hi-lo)-row matrix, plus E_hi."""
    cols = tuple(tuple(r) for r in cols)
    if cols and len(cols) != hi - lo:
        raise ShapeError(f"matrix has {len(cols)} rows, window has {hi - lo}")
    return from_vectors(fl.transpose(cols) if cols else (), n, lo, hi, F)


def from_indices(indices, n: int, lo: int, hi: int, F: Field) -> LatticeWindow:
    """span{e_i : i in indices} + E_hi (indices below hi must be >= lo)."""
    w = hi - lo
    one, z = F(1), F(0)
    vecs = []
    for i in indices:
        if i < lo:
            raise WindowError(f"e_{i} lies below the window [{lo}, {hi})")
        if i < hi:
            vecs.append(tuple(one if c == i - lo else z for c in range(w)))
    return from_vectors(vecs, n, lo, hi, F)


def shift(L: LatticeWindow, s: int) -> LatticeWindow:
    """sigma^s L + E_hi (e_i -> e_{i+s}); t^k is s = n*k.

    Exact when s <= 0, or when L ⊇ E_{hi-s}.
    """
    z = L.field(0)
    vecs = [_shift_vec(v, s, z) for v in L.basis]
    if s < 0:
        extra = from_indices(range(L.hi + s, L.hi), L.n, L.lo, L.hi, L.field)
        vecs.extend(extra.basis)
    return L._with(vecs)


def t_mul(L: LatticeWindow, k: int = 1) -> LatticeWindow:
    return shift(L, L.n * k)


def apply_constant(L: LatticeWindow, g, F: Field | None = None) -> LatticeWindow:
    """Action of a constant matrix g in GL_n(k), layer by layer."""
    n = L.n
    F = F or L.field
    if (L.lo - 1) % n:
        raise WindowError("constant action needs a window aligned to t-layers")
    out = []
    for v in L.basis:
        new = [F(0)] * L.width
        for layer in range(0, L.width, n):
            block = v[layer:layer + n]
            if any(x != 0 for x in block):
                img = fl.matmul(g, tuple((x,) for x in block), F)
                for k in range(n):
                    new[layer + k] = img[k][0]
        out.append(tuple(new))
    return L._with(out)


def apply_permutation(L: LatticeWindow, p: AffinePermutation) -> LatticeWindow:
    """Image under e_i -> e_{p(i)}; p(E_hi) must still contain E_hi."""
    z = L.field(0)
    vecs = []
    for v in L.basis:
        new = [z] * L.width
        for i, x in enumerate(v):
            if x != 0:
                j = p(L.lo + i) - L.lo
                if j < 0:
                    raise WindowError("permutation moves the lattice below the window")
                if j < L.width:
                    new[j] = x
        vecs.append(tuple(new))
    # p(E_hi) must contain E_hi, and whatever of it falls below hi is added
    if p.inverse().count_below(L.hi, L.hi):
        raise WindowError("permutation does not keep E_hi inside the image")
    extra = [v for v in p.image_set(L.hi, L.hi)]
    return L._with(vecs + list(from_indices(extra, L.n, L.lo, L.hi, L.field).basis))


def restrict(L: LatticeWindow, lo: int, hi: int) -> LatticeWindow:
    """Re-window L to E_lo / E_hi (requires L ⊂ E_lo, and hi <= L.hi or L ⊇ E_hi)."""
    if lo < L.lo:
        raise WindowError("cannot widen a window downward")
    off = lo - L.lo
    for v in L.basis:
        if any(x != 0 for x in v[:off]):
            raise WindowError(f"lattice is not contained in E_{lo}")
    if hi > L.hi:
        pad = (L.field(0),) * (hi - L.hi)
        vecs = [tuple(v[off:]) + pad for v in L.basis]
        vecs += list(from_indices(range(L.hi, hi), L.n, lo, hi, L.field).basis)
    else:
        vecs = [tuple(v[off:off + hi - lo]) for v in L.basis]
    return LatticeWindow(L.n, lo, hi, L.field, fl.echelon(vecs, L.field))


# --------------------------------------------------------------- statistics

def intersection_dim(L: LatticeWindow, M: LatticeWindow) -> int:
    L.same_window(M)
    return L.dim + M.dim - fl.rank(L.basis + M.basis, L.field)


def rel_dim(L: LatticeWindow, M: LatticeWindow) -> int:
    """dim(L / L ∩ M)."""
    L.same_window(M)
    return fl.rank(L.basis + M.basis, L.field) - M.dim


def leading_indices(L: LatticeWindow) -> list[int]:
    """Sorted lowest-index pivots of L; rel_dim(L, E_j) = #{x < j}."""
    rev = fl.echelon([v[::-1] for v in L.basis], L.field)
    return sorted(L.hi - 1 - fl.pivot_of(v) for v in rev)


def vdim(L: LatticeWindow) -> int:
    """dim(L / L∩E_1) - dim(E_1 / E_1∩L)."""
    if not L.lo <= 1 <= L.hi:
        raise WindowError("vdim needs E_1 inside the window")
    return L.dim - (L.hi - 1)


def coordinate_complement_dim(L: LatticeWindow, m: int) -> int:
    """dim(L ∩ E'_m), where E'_m = span{e_i : i < m}."""
    if m > L.hi:
        raise WindowError(f"E'_{m} is not determined by the window [{L.lo}, {L.hi})")
    k = max(0, m - L.lo)
    if k == 0:
        return 0
    # L ∩ span(e_lo..e_{m-1}) = vectors of L vanishing on coordinates >= m
    return sum(1 for v in L.basis if fl.pivot_of(v) < k)


# -------------------------------------------------------------------- flags

@dataclass(frozen=True)
class LatticeFlag:
    d: tuple[int, ...]
    lattices: tuple[LatticeWindow, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "lattices", tuple(self.lattices))
        if any(x <= 0 for x in self.d):
            raise ConstraintViolationError("composition parts must be positive")
        if len(self.d) != len(self.lattices):
            raise ShapeError("one lattice per composition part")
        first = self.lattices[0]
        if sum(self.d) != first.n:
            raise ShapeError(f"composition {self.d} does not sum to n={first.n}")
        for L in self.lattices:
            first.same_window(L)
        chain = list(self.lattices) + [t_mul(first)]
        dims = [L.dim for L in self.lattices] + [first.dim - first.n]
        for k, (U, W) in enumerate(zip(chain, chain[1:])):
            if not W <= U or dims[k] - dims[k + 1] != self.d[k]:
                raise ConstraintViolationError(f"step {k + 1} of the flag is not of size {self.d[k]}")

    @property
    def n(self) -> int:
        return self.lattices[0].n

    @property
    def window(self) -> tuple[int, int]:
        return self.lattices[0].lo, self.lattices[0].hi

    def starts(self) -> list[int]:
        """Indices i_j = 1 + d_1 + ... + d_{j-1}."""
        out, acc = [], 1
        for x in self.d:
            out.append(acc)
            acc += x
        return out

    def to_json(self) -> dict:
        return {"d": list(self.d), "lattices": [L.to_json() for L in self.lattices]}


def complete_flag(lattices) -> LatticeFlag:
    lattices = tuple(lattices)
    return LatticeFlag((1,) * len(lattices), lattices)


def default_window(p: AffinePermutation) -> tuple[int, int]:
    n = p.n
    lo = min(p.window)
    hi = max(p.window) + n
    lo = lo - ((lo - 1) % n)
    hi = hi + ((1 - hi) % n)
    return lo, hi


def permutation_flag(p: AffinePermutation, lo: int, hi: int, F: Field, d=None) -> LatticeFlag:
    """p · E_(•): Λ_j = span{e_{p(k)} : k >= i_j}."""
    n = p.n
    d = tuple(d) if d else (1,) * n
    starts, acc = [], 1
    for x in d:
        starts.append(acc)
        acc += x
    lats = []
    for i in starts:
        vals = p.image_set(i, hi)
        if vals and vals[0] < lo:
            raise WindowError(f"window [{lo}, {hi}) too small for {p}")
        lats.append(from_indices(vals, n, lo, hi, F))
    return LatticeFlag(d, lats)


def standard_flag(n: int, lo: int, hi: int, F: Field) -> LatticeFlag:
    return complete_flag(standard_lattice(i, n, lo, hi, F) for i in range(1, n + 1))


def _check_window_for(p: AffinePermutation, lo: int, hi: int) -> None:
    if min(p.window) < lo or max(p.window) >= hi:
        raise WindowError(f"window [{lo}, {hi}) too small for {p}")


def schubert_membership(
    f: LatticeFlag, p: AffinePermutation, mode: str = "cell", positions=None
) -> bool:
    """Schubert conditions dim(Λ_i/Λ_i∩E_j) vs #(pZ_{>=i} minus Z_{>=j}).

    ``positions`` restricts j to the given indices (e.g. the block starts of a
    partial flag and their t-translates, for parabolic cells); default is every
    j in the window.
    """
    if mode not in ("cell", "variety"):
        raise ValueError(f"mode must be 'cell' or 'variety', not {mode!r}")
    lo, hi = f.window
    _check_window_for(p, lo, hi)
    first = f.lattices[0]
    if vdim(first) != -component_index(p):  # vdim(σ^k E_1) = -k
        return False
    js = range(lo, hi + 1) if positions is None else [j for j in positions if lo <= j <= hi]
    for i, L in zip(f.starts(), f.lattices):
        leads = leading_indices(L)
        for j in js:
            got = bisect_left(leads, j)
            want = p.count_below(i, j)
            if got > want or (mode == "cell" and got != want):
                return False
    return True


def opposite_cell_test(f: LatticeFlag, k: int) -> bool:
    """Λ_i ∩ E'_{i+k} = 0 at every flag position."""
    lo, hi = f.window
    for i, L in zip(f.starts(), f.lattices):
        if i + k > hi or i + k - 1 < lo:
            raise WindowError(f"window [{lo}, {hi}) does not see E'_{i + k}")
        if coordinate_complement_dim(L, i + k):
            return False
    return True


# -------------------------------------------------------------- enumeration

def iter_between(lower: LatticeWindow, upper: LatticeWindow, dim: int) -> Iterator[LatticeWindow]:
    """Every subspace S with lower ⊆ S ⊆ upper and dim S = dim (finite fields)."""
    F = lower.field
    comp = []
    for v in upper.basis:
        r = fl.reduce_vector(v, lower.basis, F)
        if any(x != 0 for x in r):
            comp.append(r)
    comp = list(fl.echelon(comp, F))
    extra = dim - lower.dim
    if extra < 0 or extra > len(comp):
        return
    q = F.modulus
    for sub in fl.iter_subspaces(len(comp), extra, F):
        vecs = []
        for coeffs in sub:
            v = [F(0)] * lower.width
            for a, c in zip(coeffs, comp):
                if a:
                    for t, x in enumerate(c):
                        if x:
                            v[t] = (v[t] + a * x) % q
            vecs.append(tuple(v))
        yield lower._with(lower.basis + tuple(vecs))


def _bounds(p: AffinePermutation, i: int) -> tuple[int, int]:
    """a, b with Z_{>=a} ⊇ p Z_{>=i} ⊇ Z_{>=b}, both tight."""
    n = p.n
    a = min(p(i + r) for r in range(n))
    b = max(p(k) for k in range(i - n, i)) + 1
    # complement of p Z_{>=i} is p Z_{<i}; its max bounds b
    return a, b


def iter_flag_points(
    p: AffinePermutation,
    q: int,
    mode: str = "cell",
    opposite: bool = False,
    window: tuple[int, int] | None = None,
) -> Iterator[LatticeFlag]:
    """All t-stable complete flags over F_q in the Schubert cell/variety of p."""
    if length(p) > ENUMERATION_MAX_LENGTH or q not in (2, 3):
        raise GuardExceededError(f"enumeration limited to length <= {ENUMERATION_MAX_LENGTH}, q in {{2,3}}")
    if mode not in ("cell", "variety"):
        raise ValueError(f"mode must be 'cell' or 'variety', not {mode!r}")
    F = Field(q)
    n = p.n
    lo, hi = window or default_window(p)
    k = component_index(p)
    E = {j: standard_lattice(j, n, lo, hi, F) for j in range(lo, hi + 1)}
    bounds = [_bounds(p, i) for i in range(1, n + 1)]

    def ok(i: int, L: LatticeWindow) -> bool:
        leads = leading_indices(L)
        for j in range(lo, hi + 1):
            got = bisect_left(leads, j)
            want = p.count_below(i, j)
            if got > want or (mode == "cell" and got != want):
                return False
        if opposite and coordinate_complement_dim(L, i + k):
            return False
        return True

    a1, b1 = bounds[0]
    top_dim = hi - 1 - k  # vdim(Λ_1) = -k
    for L1 in iter_between(E[min(b1, hi)], E[max(a1, lo)], top_dim):
        tL1 = t_mul(L1)
        if not tL1 <= L1 or not ok(1, L1):
            continue
        yield from _extend([L1], tL1, bounds, E, ok, n, lo, hi)


def _extend(chain, tL1, bounds, E, ok, n, lo, hi):
    i = len(chain) + 1
    if i > n:
        yield complete_flag(chain)
        return
    a, b = bounds[i - 1]
    prev = chain[-1]
    lower = tL1 + E[min(b, hi)]
    upper_bound = E[max(a, lo)]
    if not lower <= prev:
        return
    for L in iter_between(lower, prev, prev.dim - 1):
        if L <= upper_bound and ok(i, L):
            yield from _extend(chain + [L], tL1, bounds, E, ok, n, lo, hi)


def enumerate_flag_points(p: AffinePermutation, q: int, mode: str = "cell", opposite: bool = False) -> int:
    return sum(1 for _ in iter_flag_points(p, q, mode, opposite))


def predicted_point_count(p: AffinePermutation, q: int, mode: str = "cell") -> int:
    """q^ℓ(p) for a cell; Σ_{w<=p} q^ℓ(w) for the variety."""
    if mode == "cell":
        return q ** length(p)
    return sum(q ** length(w) for w in bruhat_interval(p))
