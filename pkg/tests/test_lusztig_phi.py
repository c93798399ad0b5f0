import itertools
import random

import pytest

from affschub import field as fl
from affschub.errors import NotNilpotentError, ShapeError, WindowError
from affschub.field import Field
from affschub.lattice import apply_constant, from_vectors, rel_dim, standard_lattice, t_mul
from affschub.lusztig_phi import (
    JordanType,
    NilpotentMatrix,
    cell_profile,
    cprime_by_count,
    default_phi_window,
    dominates,
    jordan_matrix,
    jordan_type,
    jordan_types,
    phi,
    t_power_profile,
    verify_phi_cell,
)


def random_nilpotent(n, F, rng):
    """Conjugate of a random strictly upper triangular matrix."""
    U = [[F.random(rng) if j > i else F(0) for j in range(n)] for i in range(n)]
    g = fl.random_invertible(n, F, rng)
    return NilpotentMatrix(U, F).conjugate(g)


def all_nilpotents(n, F):
    for m in fl.all_matrices(n, n, F):
        if fl.is_zero(fl.matpow(m, n, F)):
            yield NilpotentMatrix(m, F)


def test_jordan_type_examples():
    F = Field(0)
    assert jordan_type(NilpotentMatrix([[0] * 3] * 3, F)).b == (1, 1, 1)
    assert jordan_type(jordan_matrix([3], F)).b == (3, 0, 0)
    assert jordan_type(jordan_matrix([2, 1], F)).b == (2, 1, 0)


@pytest.mark.parametrize("q", [0, 2, 3])
def test_jordan_type_reconstructs_ranks(q, rng):
    F = Field(q)
    for n in (2, 3, 4):
        for _ in range(20):
            N = random_nilpotent(n, F, rng)
            b = jordan_type(N)
            J = jordan_matrix([x for x in b.b if x], F)
            for k in range(n + 1):
                assert fl.rank(fl.matpow(N.entries, k, F), F) == fl.rank(fl.matpow(J.entries, k, F), F)


def test_phi_of_zero():
    for n in (2, 3, 4):
        F = Field(0)
        lo, hi = default_phi_window(n)
        L = phi(NilpotentMatrix([[0] * n] * n, F))
        assert L == t_mul(standard_lattice(1, n, lo, hi, F), n - 1)


def test_phi_of_2x2_block():
    F = Field(0)
    lo, hi = default_phi_window(2)
    L = phi(NilpotentMatrix([[0, 0], [1, 0]], F))  # N e1 = e2
    # te1 + e2 and te2 in window coordinates e_1..e_6
    want = from_vectors([(0, 1, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0)], 2, lo, hi, F)
    assert L == want
    assert rel_dim(L, t_mul(standard_lattice(1, 2, lo, hi, F))) == 1


@pytest.mark.parametrize("q", [0, 2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_phi_equivariant_and_sandwiched(q, n):
    rng = random.Random(1000 * n + q)
    F = Field(q)
    lo, hi = default_phi_window(n)
    E1 = standard_lattice(1, n, lo, hi, F)
    tnE1 = t_mul(E1, n)
    for _ in range(25):
        N = random_nilpotent(n, F, rng)
        g = fl.random_invertible(n, F, rng)
        L = phi(N)
        assert phi(N.conjugate(g)) == apply_constant(L, g)
        assert tnE1 <= L <= E1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_jordan_type_lands_in_its_cell(n):
    for q in (0, 2):
        for b in jordan_types(n):
            N = jordan_matrix([x for x in b.b if x], Field(q))
            assert verify_phi_cell(N)


@pytest.mark.parametrize("n", [2, 3])
def test_orbit_separation_exhaustive_f2(n):
    F = Field(2)
    by_type, by_profile = {}, {}
    for N in all_nilpotents(n, F):
        b = jordan_type(N).b
        prof = t_power_profile(phi(N))
        by_type.setdefault(b, set()).add(prof)
        by_profile.setdefault(prof, set()).add(b)
    assert all(len(v) == 1 for v in by_type.values())
    assert all(len(v) == 1 for v in by_profile.values())
    assert len(by_type) == len(list(jordan_types(n)))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_profile_monotone_under_degeneration(n):
    types = list(jordan_types(n))
    for b1, b2 in itertools.product(types, repeat=2):
        if dominates(b1, b2):
            p1, p2 = cell_profile(b1).cprime, cell_profile(b2).cprime
            assert all(x >= y for x, y in zip(p1, p2))


def test_cell_profile_examples():
    assert cell_profile(JordanType((2, 1, 0))).c == (1, 2, 3)
    prof = cell_profile(JordanType((1, 1, 1)))
    assert prof.c == (2, 2, 2)
    assert prof.cprime == (0, 0, 3)
    # the counting shortcut disagrees at j = n-1
    assert cprime_by_count(prof.c, 2) == 3 != prof.cprime[1]


def test_rejections():
    with pytest.raises(NotNilpotentError):
        NilpotentMatrix([[1]], Field(0))
    with pytest.raises(ShapeError):
        NilpotentMatrix([[0, 0]], Field(0))
    with pytest.raises(ValueError):
        JordanType((1, 2, 0))
    with pytest.raises(WindowError):
        phi(jordan_matrix([2], Field(0)), (1, 5))
