import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affschub import field as fl
from affschub.field import Field


def image_size(A, F):
    """|{A x}| by brute force over F_q^cols."""
    cols = len(A[0])
    seen = set()
    for x in itertools.product(F.elements(), repeat=cols):
        seen.add(tuple(sum(a * b for a, b in zip(row, x)) % F.modulus for row in A))
    return len(seen)


def gaussian_binomial(m, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@settings(max_examples=60)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_rank_matches_image_size(q, r, c, seed):
    F = Field(q)
    A = fl.random_matrix(r, c, F, random.Random(seed))
    assert q ** fl.rank(A, F) == image_size(A, F)


@pytest.mark.parametrize("q", [0, 2, 3, 5])
def test_inverse(q, rng):
    F = Field(q)
    for n in range(1, 5):
        g = fl.random_invertible(n, F, rng)
        assert fl.matmul(g, fl.inverse(g, F), F) == fl.identity(n, F)


def test_singular_inverse_raises():
    with pytest.raises(ValueError):
        fl.inverse(((1, 1), (1, 1)), Field(2))


def test_rationals_are_exact():
    F = Field(0)
    A = fl.matrix([[1, 2], [3, 4]], F)
    inv = fl.inverse(A, F)
    assert inv == ((Fraction(-2), Fraction(1)), (Fraction(3, 2), Fraction(-1, 2)))


@pytest.mark.parametrize("q, m", [(2, 4), (3, 3)])
def test_subspace_count_is_gaussian_binomial(q, m):
    F = Field(q)
    for k in range(m + 1):
        subs = list(fl.iter_subspaces(m, k, F))
        assert len(subs) == gaussian_binomial(m, k, q)
        assert len(set(subs)) == len(subs)
        assert all(fl.echelon(s, F) == s for s in subs)


def test_echelon_is_canonical(rng):
    F = Field(3)
    for _ in range(50):
        A = fl.random_matrix(3, 5, F, rng)
        g = fl.random_invertible(3, F, rng)
        assert fl.echelon(A, F) == fl.echelon(fl.matmul(g, A, F), F)


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        Field(4)
