"""Two-step circular complexes X: k^a -> k^b, Y: k^b -> k^a with XY = 0 = YX.

The open orbits are indexed by c = rank X with rank Y = a - c; their closures
map under Ψ onto opposite cells of the affine Schubert varieties of π_c.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import field as fl
from .affine_weyl import AffinePermutation, ReducedWord, evaluate_word, length, simple_reflection
from .errors import ConstraintViolationError, ParameterRangeError, ShapeError, WindowError
from .field import Field
from .lattice import LatticeFlag, coordinate_complement_dim, from_columns, rel_dim, standard_lattice


@dataclass(frozen=True)
class OrbitSignature:
    rank_X: int
    rank_Y: int

    def is_open(self, a: int) -> bool:
        return self.rank_X + self.rank_Y == a

    def leq(self, other: "OrbitSignature") -> bool:
        """Coordinate-wise order, used as the (conjectural) orbit closure order."""
        return self.rank_X <= other.rank_X and self.rank_Y <= other.rank_Y


@dataclass(frozen=True)
class CircularComplex:
    a: int
    b: int
    X: tuple  # b x a
    Y: tuple  # a x b
    field: Field = Field(0)

    def __post_init__(self):
        a, b, F = self.a, self.b, self.field
        if not 1 <= a <= b:
            raise ParameterRangeError(f"need 1 <= a <= b, got a={a}, b={b}")
        X, Y = fl.matrix(self.X, F), fl.matrix(self.Y, F)
        if len(X) != b or any(len(r) != a for r in X):
            raise ShapeError(f"X must be {b}x{a}")
        if len(Y) != a or any(len(r) != b for r in Y):
            raise ShapeError(f"Y must be {a}x{b}")
        if not fl.is_zero(fl.matmul(X, Y, F)) or not fl.is_zero(fl.matmul(Y, X, F)):
            raise ConstraintViolationError("XY and YX must both vanish")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return self.a + self.b

    def act(self, ga, gb) -> "CircularComplex":
        """(g_a, g_b) · (X, Y) = (g_b X g_a^{-1}, g_a Y g_b^{-1})."""
        F = self.field
        X = fl.matmul(fl.matmul(gb, self.X, F), fl.inverse(ga, F), F)
        Y = fl.matmul(fl.matmul(ga, self.Y, F), fl.inverse(gb, F), F)
        return CircularComplex(self.a, self.b, X, Y, F)

    def to_json(self) -> dict:
        F = self.field
        return {
            "a": self.a, "b": self.b,
            "X": [[F.to_int(x) for x in r] for r in self.X],
            "Y": [[F.to_int(x) for x in r] for r in self.Y],
            "q": F.modulus,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CircularComplex":
        return cls(obj["a"], obj["b"], obj["X"], obj["Y"], Field(obj.get("q", 0)))


def orbit_ranks(L: CircularComplex) -> OrbitSignature:
    return OrbitSignature(fl.rank(L.X, L.field), fl.rank(L.Y, L.field))


def normal_form(a: int, b: int, rx: int, ry: int, F: Field = Field(0)) -> CircularComplex:
    """X = e_i -> f_i for i <= rx; Y = f_{rx+i} -> e_{rx+i} for i <= ry."""
    if rx < 0 or ry < 0 or rx + ry > a:
        raise ParameterRangeError(f"ranks ({rx}, {ry}) impossible for a={a}")
    X = [[F(0)] * a for _ in range(b)]
    Y = [[F(0)] * b for _ in range(a)]
    for i in range(rx):
        X[i][i] = F(1)
    for i in range(rx, rx + ry):
        Y[i][i] = F(1)
    return CircularComplex(a, b, X, Y, F)


def random_point(a: int, b: int, rx: int, ry: int, F: Field, rng) -> CircularComplex:
    """A random point of the GL_{a,b}-orbit with the given ranks."""
    ga = fl.random_invertible(a, F, rng)
    gb = fl.random_invertible(b, F, rng)
    return normal_form(a, b, rx, ry, F).act(ga, gb)


def random_open_point(a: int, b: int, c: int, F: Field, rng) -> CircularComplex:
    return random_point(a, b, c, a - c, F, rng)


# ---------------------------------------------------------------------- Ψ

def block_starts(a: int, b: int) -> list[int]:
    """E_(1), ..., E_(5) begin at 1, a+1, a+b+1, 2a+b+1, 2a+2b+1."""
    n = a + b
    return [1, a + 1, n + 1, n + a + 1, 2 * n + 1]


def default_window(a: int, b: int) -> tuple[int, int]:
    n = a + b
    return 1, 3 * n + 1


def psi_circular(L: CircularComplex, window: tuple[int, int] | None = None) -> LatticeFlag:
    a, b, n, F = L.a, L.b, L.n, L.field
    lo, hi = window or default_window(a, b)
    if lo > 1 or hi < 2 * n + a + 1 or (hi - lo) % n:
        raise WindowError(f"Ψ needs a window [lo, hi) with lo <= 1 and hi >= {2 * n + a + 1}")
    z, one = F(0), F(1)

    def col(entries):
        v = [z] * (hi - lo)
        for idx, x in entries:
            v[idx - lo] = x
        return v

    # Λ_1: columns [X; I_a] (rows a+1..n+a) and [Y; I_b] (rows n+1..2n)
    first = []
    for i in range(a):
        ent = [(a + 1 + r, L.X[r][i]) for r in range(b)] + [(n + 1 + i, one)]
        first.append(col(ent))
    second = []
    for i in range(b):
        ent = [(n + 1 + r, L.Y[r][i]) for r in range(a)] + [(n + a + 1 + i, one)]
        second.append(col(ent))
    shifted = [[z] * n + v[:-n] for v in first]
    lam1 = from_columns(fl.transpose(first + second), n, lo, hi, F)
    lam2 = from_columns(fl.transpose(second + shifted), n, lo, hi, F)
    return LatticeFlag((a, b), (lam1, lam2))


def image_statistics(f: LatticeFlag, a: int, b: int) -> tuple[int, int]:
    """(dim Λ_1/Λ_1∩E_(3), dim Λ_2/Λ_2∩E_(4))."""
    n = a + b
    lo, hi = f.window
    F = f.lattices[0].field
    E = block_starts(a, b)
    return (
        rel_dim(f.lattices[0], standard_lattice(E[2], n, lo, hi, F)),
        rel_dim(f.lattices[1], standard_lattice(E[3], n, lo, hi, F)),
    )


def image_conditions(f: LatticeFlag, a: int, b: int, c: int | None = None) -> bool:
    """Sandwiches E_(2) ⊃ Λ_1 ⊃ E_(4), E_(3) ⊃ Λ_2 ⊃ E_(5) with the right
    codimensions, Λ_1∩E'_(3) = Λ_2∩E'_(4) = 0, and (if c is given) the two
    rank statistics bounded by c and a - c."""
    n = a + b
    lo, hi = f.window
    F = f.lattices[0].field
    E = [standard_lattice(s, n, lo, hi, F) for s in block_starts(a, b)]
    L1, L2 = f.lattices
    checks = [
        L1 <= E[1] and E[1].dim - L1.dim == b,
        E[3] <= L1 and L1.dim - E[3].dim == a,
        L2 <= E[2] and E[2].dim - L2.dim == a,
        E[4] <= L2 and L2.dim - E[4].dim == b,
        coordinate_complement_dim(L1, n + 1) == 0,
        coordinate_complement_dim(L2, n + a + 1) == 0,
    ]
    if c is not None:
        s1, s2 = image_statistics(f, a, b)
        checks += [s1 <= c, s2 <= a - c]
    return all(checks)


def finite_flag_conditions(L: CircularComplex, c: int | None = None) -> bool:
    """The same image read in the finite space E_(2)/E_(5) of dimension a+2b.

    Checks U_1 ⊃ Ē_(4), U_2 ⊂ Ē_(3), dim U_1∩Ē_(3) >= a+b-c,
    dim U_2∩Ē_(4) >= b-a+c, U_1∩Ē'_(3) = U_2∩Ē'_(4) = 0 and U_2 ⊃ t̄ U_1.
    """
    a, b, n, F = L.a, L.b, L.n, L.field
    if c is None:
        c = orbit_ranks(L).rank_X
    f = psi_circular(L)
    lo = f.window[0]
    first, last = a + 1, 2 * n  # ē_{a+1} .. ē_{2a+2b}
    m = last - first + 1

    def cut(L_):
        return fl.echelon([v[first - lo:last - lo + 1] for v in L_.basis], F)

    U1, U2 = cut(f.lattices[0]), cut(f.lattices[1])
    if len(U1) != a + b or len(U2) != b:
        return False

    def span_from(k):  # Ē_k inside the quotient
        one, z = F(1), F(0)
        return tuple(tuple(one if c_ == r else z for c_ in range(m)) for r in range(k - first, m))

    def contains(big, small):
        return all(fl.in_span(v, big, F) for v in small)

    def inter_dim(U, W):
        return len(U) + len(W) - fl.rank(U + W, F)

    def low_part_dim(U, k):  # dim U ∩ Ē'_k
        return sum(1 for v in U if fl.pivot_of(v) < k - first)

    E3, E4 = span_from(n + 1), span_from(n + a + 1)
    tU1 = [tuple([F(0)] * n + list(v[:-n])) for v in U1]
    return (
        contains(U1, E4)
        and contains(E3, U2)
        and inter_dim(U1, E3) >= a + b - c
        and inter_dim(U2, E4) >= b - a + c
        and low_part_dim(U1, n + 1) == 0
        and low_part_dim(U2, n + a + 1) == 0
        and contains(U2, tU1)
    )


# ----------------------------------------------------------- permutations

def _check_abc(a: int, b: int, c: int) -> None:
    if not (1 <= a <= b and 0 <= c <= a):
        raise ParameterRangeError(f"need 1 <= a <= b and 0 <= c <= a, got ({a}, {b}, {c})")


def pi_c(a: int, b: int, c: int) -> AffinePermutation:
    _check_abc(a, b, c)
    blocks = [
        range(a + 1, a + c + 1),
        range(a + 2 * b + c + 1, 2 * a + 2 * b + 1),
        range(a + b + 1, 2 * a + b - c + 1),
        range(2 * a + b + c + 1, a + 2 * b + c + 1),
        range(3 * a + 2 * b - c + 1, 3 * a + 2 * b + 1),
    ]
    return AffinePermutation(a + b, [x for blk in blocks for x in blk])


def block_swap_letters(i: int, j: int, k: int) -> list[int]:
    """Letters of s_{i+1}^{[j,k]}: a k-block at i+1.. crosses a j-block after it.

    The A-wire that is a-th from the interface meets the b-th B-wire at
    position i+k-a+b; crossings are grouped by anti-diagonal m = a+b-1, each
    group being mutually commuting letters two apart.
    """
    out = []
    for m in range(1, j + k):
        for a in range(max(1, m + 1 - j), min(k, m) + 1):
            out.append(i + k + m + 1 - 2 * a)
    return out


def cable_factors(a: int, b: int, c: int) -> list[tuple[int, int, int]]:
    """(first index, j, k) for the six cable crossings, left to right.

    The first crossing sends a c-wire cable under an (a-c)-wire cable, so it
    is s_1^{[c, a-c]} in the k-block-first reading used here.
    """
    return [
        (1, c, a - c),
        (a + 1, b - a, c),
        (b + 1, a - c, c),
        (a + 1, a - c, b - a),
        (b + a - c + 1, c, c),
        (c + 1, a - c, a - c),
    ]


def cable_word(a: int, b: int, c: int) -> ReducedWord:
    _check_abc(a, b, c)
    n = a + b
    letters = []
    for start, j, k in cable_factors(a, b, c):
        letters.extend(x % n for x in block_swap_letters(start - 1, j, k))
    return ReducedWord(n, n, tuple(letters))


def parabolic_generators(a: int, b: int) -> list[int]:
    """Simple reflections of W_(a,b): every s_i with i not in {0, a}."""
    return [i for i in range(1, a + b) if i != a]


def normalization_holds(a: int, b: int, c: int) -> bool:
    """π_c is shortest in π_c·W_(a,b), and longest in W_(a,b)·π_c up to that coset.

    For every generator s: ℓ(π s) > ℓ(π), and either ℓ(s π) < ℓ(π) or s π
    lies in π·W_(a,b) (s only permutes wires inside one cable).
    """
    p = pi_c(a, b, c)
    n = a + b
    ell = length(p)
    gens = parabolic_generators(a, b)
    for i in gens:
        s = simple_reflection(n, i)
        if not length(p * s) > ell:
            return False
        if not length(s * p) < ell and not _in_parabolic(p.inverse() * s * p, a):
            return False
    return True


def _in_parabolic(w: AffinePermutation, a: int) -> bool:
    """w maps {1..a} and {a+1..n} to themselves."""
    return sorted(w.window[:a]) == list(range(1, a + 1))


def left_max_strict(a: int, b: int, c: int) -> list[int]:
    """Generators s with ℓ(s π_c) > ℓ(π_c), i.e. where strict left-maximality fails."""
    p = pi_c(a, b, c)
    ell = length(p)
    return [i for i in parabolic_generators(a, b) if length(simple_reflection(a + b, i) * p) > ell]


def is_fully_commutative(letters, n: int) -> bool:
    """Reduced, and no word in the commutation class has a braid s_i s_{i±1} s_i.

    Heap criterion for simply-laced types: between two consecutive
    occurrences of s_i there must be at least two letters not commuting with
    it. For n = 2 there are no braid relations at all.
    """
    letters = [x % n for x in letters]
    if len(letters) != length(evaluate_word(ReducedWord(n, 0, letters))):
        return False
    if n == 2:
        return True
    last: dict[int, int] = {}
    for pos, x in enumerate(letters):
        if x in last:
            between = letters[last[x] + 1:pos]
            if sum(1 for y in between if (y - x) % n in (1, n - 1)) < 2:
                return False
        last[x] = pos
    return True
