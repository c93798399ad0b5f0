import itertools

import pytest
from hypothesis import assume, given

from affschub.affine_weyl import (
    AffinePermutation,
    ReducedWord,
    bruhat_interval,
    bruhat_leq,
    component_index,
    compose,
    decompose,
    elements_up_to_length,
    evaluate_word,
    from_parts,
    greedy_reduced_word,
    identity,
    left_descents,
    length,
    parse_window,
    right_descents,
    sigma,
    simple_reflection,
    translation,
)
from affschub.errors import ArityError, LetterRangeError, NotABijectionError, ParseError

from conftest import affine_perms, perm_pairs


def inversions(p: AffinePermutation) -> int:
    """#{(i, j) : 1 <= i <= n, i < j, p(i) > p(j)} by direct scan."""
    n = p.n
    span = max(abs(v) for v in p.window) + 2 * n
    return sum(1 for i in range(1, n + 1) for j in range(i + 1, i + 4 * span) if p(i) > p(j))


def test_known_length():
    assert length(parse_window("[-2,2,6]", 3)) == 4
    assert length(identity(4)) == 0
    assert length(sigma(4, 3)) == 0


@given(affine_perms())
def test_length_is_inversion_count(p):
    assert length(p) == inversions(p)


@given(affine_perms())
def test_greedy_word_round_trip(p):
    w = greedy_reduced_word(p)
    assert evaluate_word(w) == p
    assert len(w) == length(p)
    assert w.is_reduced()
    assert w.sigma_power == component_index(p)


@given(perm_pairs())
def test_composition_is_function_composition(pq):
    p, q = pq
    r = compose(p, q)
    for i in range(-2 * p.n, 2 * p.n):
        assert r(i) == p(q(i))


@given(affine_perms())
def test_inverse(p):
    assert compose(p, p.inverse()) == identity(p.n)
    assert length(p.inverse()) == length(p)


@given(perm_pairs())
def test_component_index_is_additive(pq):
    p, q = pq
    assert component_index(compose(p, q)) == component_index(p) + component_index(q)


@given(affine_perms())
def test_decompose_round_trip(p):
    pbar, c = decompose(p)
    assert from_parts(pbar, c.c) == p
    assert sorted(pbar) == list(range(1, p.n + 1))


@given(affine_perms(max_n=5))
def test_descents_lower_length(p):
    n = p.n
    assume(n >= 2)
    for i in range(n):
        s = simple_reflection(n, i)
        down = length(compose(p, s)) < length(p)
        assert down == (i in right_descents(p))
        assert (length(compose(s, p)) < length(p)) == (i in left_descents(p))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_coxeter_relations(n):
    e = identity(n)
    s = [simple_reflection(n, i) for i in range(n)]
    for i in range(n):
        assert compose(s[i], s[i]) == e
        j = (i + 1) % n
        assert compose(s[i], compose(s[j], s[i])) == compose(s[j], compose(s[i], s[j]))
        for k in range(n):
            if (k - i) % n not in (0, 1, n - 1):
                assert compose(s[i], s[k]) == compose(s[k], s[i])
        # σ s_i σ^{-1} = s_{i+1}
        assert compose(sigma(n), compose(s[i], sigma(n, -1))) == s[j]


@pytest.mark.parametrize("n", [2, 3])
def test_bruhat_matches_subword_interval(n):
    elems = sorted(elements_up_to_length(n, 4), key=lambda w: w.window)
    for p in elems:
        below = bruhat_interval(p)
        for w in elems:
            assert bruhat_leq(w, p) == (w in below), (w, p)


def test_bruhat_across_components():
    assert not bruhat_leq(identity(3), sigma(3))


def test_translation_length_matches_pair_sum():
    for c in itertools.product(range(-2, 3), repeat=3):
        t = translation(c)
        assert length(t) == sum(abs(a - b) for a, b in itertools.combinations(c, 2))


def test_word_2120_evaluates():
    assert evaluate_word(ReducedWord(3, 0, (2, 1, 2, 0))) == parse_window("[-2,2,6]", 3)


@pytest.mark.parametrize(
    "text, n, err",
    [
        ("[1,2", 2, ParseError),
        ("1,2", 2, ParseError),
        ("[1,2,3]", 2, ArityError),
        ("[1,1,3]", 3, NotABijectionError),
        ("[1,4,3]", 3, NotABijectionError),
    ],
)
def test_parse_errors(text, n, err):
    with pytest.raises(err):
        parse_window(text, n)


def test_letter_range():
    with pytest.raises(LetterRangeError):
        ReducedWord(3, 0, (3,))
    with pytest.raises(LetterRangeError):
        ReducedWord(3, 0, (-1,))


def test_non_reduced_word_detected():
    assert not ReducedWord(3, 0, (1, 1)).is_reduced()
