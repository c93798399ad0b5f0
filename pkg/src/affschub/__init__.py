"""Affine Schubert calculus toolkit: affine permutations, lattice flags and
the maps from nilpotent and quiver data into affine flag varieties."""

from .affine_weyl import (
    AffinePermutation,
    ReducedWord,
    bruhat_leq,
    component_index,
    evaluate_word,
    greedy_reduced_word,
    length,
    parse_window,
)
from .errors import AffSchubError
from .field import Field

__all__ = [
    "AffinePermutation",
    "AffSchubError",
    "Field",
    "ReducedWord",
    "bruhat_leq",
    "component_index",
    "evaluate_word",
    "greedy_reduced_word",
    "length",
    "parse_window",
]
