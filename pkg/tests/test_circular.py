import itertools
import random

import pytest

from affschub import field as fl
from affschub.affine_weyl import evaluate_word, length, simple_reflection
from affschub.circular import (
    CircularComplex,
    OrbitSignature,
    block_starts,
    block_swap_letters,
    cable_factors,
    cable_word,
    finite_flag_conditions,
    image_conditions,
    image_statistics,
    is_fully_commutative,
    left_max_strict,
    normal_form,
    normalization_holds,
    orbit_ranks,
    parabolic_generators,
    pi_c,
    psi_circular,
    random_open_point,
    random_point,
)
from affschub.cyclic_quiver import DimensionVector
from affschub.errors import ConstraintViolationError, ParameterRangeError, ShapeError, WindowError
from affschub.field import Field
from affschub.lattice import apply_constant, rel_dim, schubert_membership, standard_lattice, t_mul

Q, F3 = Field(0), Field(3)
TRIPLES = [(a, b, c) for b in range(1, 7) for a in range(1, b + 1) for c in range(a + 1)]


def block_stats(L):
    f = psi_circular(L)
    lo, hi = f.window
    js = DimensionVector((L.a, L.b)).positions(lo, hi)
    return tuple(rel_dim(M, standard_lattice(j, L.n, lo, hi, L.field)) for M in f.lattices for j in js)


def test_orbit_ranks_examples():
    assert orbit_ranks(normal_form(2, 3, 0, 0)) == OrbitSignature(0, 0)
    assert not OrbitSignature(0, 0).is_open(1)
    L = CircularComplex(1, 1, [[1]], [[0]], Q)
    assert orbit_ranks(L) == OrbitSignature(1, 0) and orbit_ranks(L).is_open(1)
    X = [[1, 0], [0, 0], [0, 0]]
    Y = [[0, 0, 0], [0, 1, 0]]
    assert orbit_ranks(CircularComplex(2, 3, X, Y, Q)) == OrbitSignature(1, 1)


def test_complex_validation():
    with pytest.raises(ConstraintViolationError):
        CircularComplex(1, 1, [[1]], [[1]], Q)
    with pytest.raises(ShapeError):
        CircularComplex(1, 2, [[1, 0]], [[0, 0]], Q)
    with pytest.raises(ParameterRangeError):
        CircularComplex(2, 1, [[0, 0]], [[0], [0]], Q)


def test_psi_of_zero():
    for a, b in [(1, 1), (2, 3)]:
        f = psi_circular(normal_form(a, b, 0, 0))
        lo, hi = f.window
        E = [standard_lattice(s, a + b, lo, hi, Q) for s in block_starts(a, b)]
        assert f.lattices == (t_mul(E[0]), t_mul(E[1]))
        assert finite_flag_conditions(normal_form(a, b, 0, 0))


@pytest.mark.parametrize("a, b", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_psi_equivariant(a, b):
    rng = random.Random(a * 10 + b)
    for F in (Q, F3):
        for _ in range(6):
            L = random_point(a, b, rng.randint(0, a), 0, F, rng)
            ga, gb = fl.random_invertible(a, F, rng), fl.random_invertible(b, F, rng)
            G = fl.block_diag([ga, gb], F)
            want = tuple(apply_constant(M, G) for M in psi_circular(L).lattices)
            assert psi_circular(L.act(ga, gb)).lattices == want


@pytest.mark.parametrize("a, b", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)])
def test_image_statistics_are_ranks(a, b):
    rng = random.Random(b * 7 + a)
    for rx in range(a + 1):
        for ry in range(a + 1 - rx):
            L = random_point(a, b, rx, ry, F3, rng)
            f = psi_circular(L)
            assert image_statistics(f, a, b) == (rx, ry)
            assert image_conditions(f, a, b)
            assert finite_flag_conditions(L, rx)


@pytest.mark.parametrize("a, b", [(1, 2), (2, 2), (2, 3), (3, 4)])
def test_open_points_in_cell_of_pi_c(a, b):
    rng = random.Random(5)
    for c in range(a + 1):
        for _ in range(3):
            L = random_open_point(a, b, c, F3, rng)
            f = psi_circular(L, (1, 3 * (a + b) + 1))
            p = pi_c(a, b, c)
            pos = DimensionVector((a, b)).positions(*f.window)
            assert schubert_membership(f, p, "variety", positions=pos)
            assert image_conditions(f, a, b, c)


@pytest.mark.parametrize("a, b", [(1, 1), (2, 2), (2, 3), (3, 4)])
def test_closure_order_matches_statistics(a, b):
    rng = random.Random(11)
    sigs = [(x, y) for x in range(a + 1) for y in range(a + 1 - x)]
    st = {s: block_stats(random_point(a, b, *s, F3, rng)) for s in sigs}
    for s, t in itertools.product(sigs, repeat=2):
        le = OrbitSignature(*s).leq(OrbitSignature(*t))
        assert le == all(x <= y for x, y in zip(st[s], st[t]))


def test_window_too_small():
    with pytest.raises(WindowError):
        psi_circular(normal_form(2, 3, 0, 0), (1, 11))


def test_pi_c_example():
    p = pi_c(2, 3, 1)
    assert p.window == (3, 10, 6, 9, 12)
    assert length(p) == 6


@pytest.mark.parametrize("a, b, c", TRIPLES)
def test_pi_c_and_cable_word(a, b, c):
    p = pi_c(a, b, c)
    w = cable_word(a, b, c)
    assert length(p) == a * b
    assert len(w) == a * b
    assert w.sigma_power == a + b
    assert evaluate_word(w) == p
    assert normalization_holds(a, b, c)


@pytest.mark.parametrize("a, b, c", TRIPLES)
def test_cable_factors_fully_commutative(a, b, c):
    n = a + b
    for start, j, k in cable_factors(a, b, c):
        letters = block_swap_letters(start - 1, j, k)
        assert len(letters) == j * k
        assert is_fully_commutative(letters, n)


def test_small_cable_words():
    assert len(cable_word(1, 1, 1)) == 1
    assert len(cable_word(2, 3, 0)) == 6
    assert cable_word(2, 3, 1).letters == (1, 3, 4, 3, 0, 2)


def test_fully_commutative_rejects_braids():
    assert not is_fully_commutative([1, 2, 1], 4)
    assert not is_fully_commutative([1, 1], 4)
    assert is_fully_commutative([1, 3, 2], 4)


def test_right_minimal_and_left_coset():
    for a, b, c in TRIPLES:
        p = pi_c(a, b, c)
        for i in parabolic_generators(a, b):
            assert length(p * simple_reflection(a + b, i)) > length(p)
    # strict left maximality only fails where a cable has two or more wires
    assert left_max_strict(1, 1, 1) == []
    assert left_max_strict(2, 3, 1) == []
    assert left_max_strict(2, 3, 0) != []


def test_parameter_range():
    for bad in [(0, 1, 0), (3, 2, 1), (2, 3, 3), (2, 3, -1)]:
        with pytest.raises(ParameterRangeError):
            pi_c(*bad)


def test_json_round_trip(rng):
    L = random_open_point(2, 3, 1, F3, rng)
    assert CircularComplex.from_json(L.to_json()) == L
