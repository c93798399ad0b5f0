import pytest
from hypothesis import given

from affschub.affine_weyl import (
    ReducedWord,
    decompose,
    greedy_reduced_word,
    length,
    parse_window,
)
from affschub.wiring import build_diagram, count_geometric_crossings, parse_svg_heights, render

from conftest import affine_perms


@given(affine_perms(max_n=5))
def test_crossings_equal_length(p):
    d = build_diagram(p)
    assert d.crossing_count == length(p)
    assert count_geometric_crossings(d.heights, p.n) == length(p)


@given(affine_perms(max_n=5))
def test_diagram_realises_permutation(p):
    d = build_diagram(p)
    assert d.heights[0] == p.window
    assert d.heights[-1] == tuple(range(1, p.n + 1))
    pbar, c = decompose(p)
    assert [w.end for w in d.wires] == list(pbar)
    assert [w.winding for w in d.wires] == list(c.c)


@given(affine_perms(max_n=4))
def test_crossing_letters_form_the_word(p):
    d = build_diagram(p)
    assert d.word_letters() == list(greedy_reduced_word(p).letters)


def test_word_2120_diagram():
    p = parse_window("[-2,2,6]", 3)
    d = build_diagram(p, ReducedWord(3, 0, (2, 1, 2, 0)))
    assert d.word_letters() == [2, 1, 2, 0]
    assert [e.margin for e in d.events] == [False, False, False, True]


def test_ascii_render_is_stable():
    p = parse_window("[-2,2,6]", 3)
    a = render(build_diagram(p), "ascii")
    assert a == render(build_diagram(p), "ascii")
    assert a.count("X") == 4
    assert "3(+1)" in a and "1(-1)" in a


@given(affine_perms(max_n=4))
def test_svg_round_trips_heights(p):
    d = build_diagram(p)
    assert parse_svg_heights(render(d, "svg"), p.n) == [tuple(h) for h in d.heights]


def test_unknown_format():
    with pytest.raises(ValueError):
        render(build_diagram(parse_window("[2,1]", 2)), "png")
