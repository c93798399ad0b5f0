"""Exact arithmetic over Q or a prime field F_q.

Matrices are tuples of row tuples; subspaces are stored as canonical
echelon row bases. Nothing here ever touches floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ShapeError

Matrix = tuple  # tuple[tuple[elem, ...], ...]


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class Field:
    """``modulus == 0`` means the rationals, otherwise a prime field."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus != 0 and not _is_prime(self.modulus):
            raise ValueError(f"field modulus must be 0 or prime, got {self.modulus}")

    @property
    def is_finite(self) -> bool:
        return self.modulus != 0

    def __call__(self, x):
        if self.modulus:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.modulus)) % self.modulus
            return int(x) % self.modulus
        return Fraction(x)

    def inv(self, x):
        if self.modulus:
            return pow(x, -1, self.modulus)
        return 1 / x

    def elements(self) -> range:
        if not self.modulus:
            raise ValueError("the rationals are not enumerable")
        return range(self.modulus)

    def random(self, rng: random.Random, spread: int = 3):
        if self.modulus:
            return rng.randrange(self.modulus)
        return Fraction(rng.randint(-spread, spread))

    def to_int(self, x) -> int | str:
        """JSON-friendly view: ints in [0, q) or a fraction string."""
        if self.modulus:
            return int(x)
        x = Fraction(x)
        return int(x) if x.denominator == 1 else str(x)


# ---------------------------------------------------------------- matrices

def matrix(rows: Iterable[Iterable], F: Field) -> Matrix:
    return tuple(tuple(F(x) for x in row) for row in rows)


def zeros(r: int, c: int, F: Field) -> Matrix:
    z = F(0)
    return tuple((z,) * c for _ in range(r))


def identity(n: int, F: Field) -> Matrix:
    one, z = F(1), F(0)
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def shape(A: Matrix, cols: int | None = None) -> tuple[int, int]:
    r = len(A)
    c = len(A[0]) if r else (cols or 0)
    return r, c


def matmul(A: Matrix, B: Matrix, F: Field, inner: int | None = None) -> Matrix:
    """Product of an r x k and a k x c matrix; ``inner`` disambiguates k=0."""
    ra = len(A)
    ka = len(A[0]) if ra else (inner if inner is not None else len(B))
    if ka != len(B):
        raise ShapeError(f"cannot multiply {ra}x{ka} by {len(B)}x?")
    cb = len(B[0]) if B else 0
    if not B:
        return tuple(() for _ in range(ra)) if cb == 0 else zeros(ra, cb, F)
    q = F.modulus
    cols = list(zip(*B))
    out = []
    for row in A:
        if q:
            out.append(tuple(sum(a * b for a, b in zip(row, col)) % q for col in cols))
        else:
            out.append(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols))
    return tuple(out)


def matpow(A: Matrix, k: int, F: Field) -> Matrix:
    out = identity(len(A), F)
    for _ in range(k):
        out = matmul(out, A, F)
    return out


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def is_zero(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


def rank(rows: Sequence[Sequence], F: Field) -> int:
    return len(echelon(rows, F))


def inverse(A: Matrix, F: Field) -> Matrix:
    n = len(A)
    aug = [list(row) + list(e) for row, e in zip(A, identity(n, F))]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        _scale(aug[col], F.inv(aug[col][col]), F)
        for r in range(n):
            if r != col and aug[r][col] != 0:
                _axpy(aug[r], aug[col], aug[r][col], F)
    return tuple(tuple(row[n:]) for row in aug)


def random_matrix(r: int, c: int, F: Field, rng: random.Random, density: float = 1.0) -> Matrix:
    z = F(0)
    return tuple(
        tuple(F.random(rng) if rng.random() < density else z for _ in range(c))
        for _ in range(r)
    )


def random_invertible(n: int, F: Field, rng: random.Random) -> Matrix:
    while True:
        g = random_matrix(n, n, F, rng)
        if rank(g, F) == n:
            return g


def block_diag(blocks: Sequence[Matrix], F: Field) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[F(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in out)


def all_matrices(r: int, c: int, F: Field) -> Iterator[Matrix]:
    """Every r x c matrix over a finite field."""
    import itertools

    for flat in itertools.product(F.elements(), repeat=r * c):
        yield tuple(tuple(flat[i * c:(i + 1) * c]) for i in range(r))


# ------------------------------------------------------------- echelon forms

def _scale(row: list, s, F: Field) -> None:
    q = F.modulus
    for i, x in enumerate(row):
        row[i] = (x * s) % q if q else x * s


def _axpy(row: list, piv_row: list, s, F: Field) -> None:
    """row -= s * piv_row"""
    q = F.modulus
    if q:
        for i, x in enumerate(piv_row):
            if x:
                row[i] = (row[i] - s * x) % q
    else:
        for i, x in enumerate(piv_row):
            if x:
                row[i] = row[i] - s * x


def echelon(rows: Iterable[Sequence], F: Field) -> Matrix:
    """Canonical reduced echelon basis of the row span.

    Pivots sit at the *largest* nonzero coordinate of each basis vector and
    every pivot column is cleared elsewhere, so two spans are equal iff
    their echelon forms are equal. Rows come out sorted by pivot.
    """
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    if not work:
        return ()
    width = len(work[0])
    basis: list[list] = []
    pivots: list[int] = []
    for col in range(width - 1, -1, -1):
        piv = next((k for k, r in enumerate(work) if r[col] != 0), None)
        if piv is None:
            continue
        prow = work.pop(piv)
        _scale(prow, F.inv(prow[col]), F)
        for r in work:
            if r[col] != 0:
                _axpy(r, prow, r[col], F)
        for r in basis:
            if r[col] != 0:
                _axpy(r, prow, r[col], F)
        basis.append(prow)
        pivots.append(col)
        work = [r for r in work if any(x != 0 for x in r)]
        if not work:
            break
    order = sorted(range(len(basis)), key=lambda k: pivots[k])
    return tuple(tuple(basis[k]) for k in order)


def pivot_of(vec: Sequence) -> int:
    for i in range(len(vec) - 1, -1, -1):
        if vec[i] != 0:
            return i
    return -1


def reduce_vector(vec: Sequence, basis: Matrix, F: Field) -> tuple:
    """Reduce ``vec`` modulo the span of a canonical echelon basis."""
    v = list(vec)
    for b in basis:
        p = pivot_of(b)
        if v[p] != 0:
            _axpy(v, b, v[p], F)
    return tuple(v)


def in_span(vec: Sequence, basis: Matrix, F: Field) -> bool:
    return all(x == 0 for x in reduce_vector(vec, basis, F))


def complement_coords(basis: Matrix, width: int) -> list[int]:
    """Coordinates that are not pivots of ``basis``."""
    piv = {pivot_of(b) for b in basis}
    return [i for i in range(width) if i not in piv]


def iter_subspaces(width: int, dim: int, F: Field) -> Iterator[Matrix]:
    """All ``dim``-dimensional subspaces of F_q^width, each once, as echelon bases.

    Enumerates pivot sets and then the free entries of the reduced form
    (entries at coordinates below a pivot that are not themselves pivots).
    """
    import itertools

    if dim < 0 or dim > width:
        return
    elems = list(F.elements())
    z, one = F(0), F(1)
    for pivots in itertools.combinations(range(width), dim):
        pset = set(pivots)
        free = [(k, c) for k, p in enumerate(pivots) for c in range(p) if c not in pset]
        for vals in itertools.product(elems, repeat=len(free)):
            rows = [[z] * width for _ in range(dim)]
            for k, p in enumerate(pivots):
                rows[k][p] = one
            for (k, c), x in zip(free, vals):
                rows[k][c] = x
            yield tuple(tuple(r) for r in rows)
