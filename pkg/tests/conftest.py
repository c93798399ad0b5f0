import random

import pytest
from hypothesis import strategies as st

from affschub.affine_weyl import from_parts


@pytest.fixture
def rng():
    return random.Random(20240611)


@st.composite
def affine_perms(draw, max_n=5, spread=3):
    n = draw(st.integers(1, max_n))
    pbar = draw(st.permutations(range(1, n + 1)))
    c = draw(st.lists(st.integers(-spread, spread), min_size=n, max_size=n))
    return from_parts(pbar, c)


@st.composite
def perm_pairs(draw, max_n=5, spread=3):
    n = draw(st.integers(1, max_n))
    out = []
    for _ in range(2):
        pbar = draw(st.permutations(range(1, n + 1)))
        c = draw(st.lists(st.integers(-spread, spread), min_size=n, max_size=n))
        out.append(from_parts(pbar, c))
    return tuple(out)
