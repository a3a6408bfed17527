"""Codes, pattern counting, genericity, and homogenisation."""

from fractions import Fraction
from itertools import product

import pytest

from qmgraph.codes import (code, code_qm, count_disjoint, homogenise,
                           is_generic, theta, weighted_code_qm,
                           weighted_theta, weighted_z_code)
from qmgraph.graphs import expand, parse_graph
from qmgraph.words import NormalWord, WordError, parse_word

from conftest import edgeless


@pytest.fixture
def z5b():
    """Z/5 * Z/3 with the torsion side A = {a}."""
    g = expand(parse_graph("vertex a Z/5\nvertex b Z/3"))
    return g, (frozenset({0}), frozenset({1}))


def test_worked_example_codes(z5b):
    g, part = z5b
    word = "a^4 b a^2 b a^2 b a^3 b a b a b a^3 b a b a b a^2 b a^2 b a^2 b"
    x = parse_word(g, word)
    assert code(x, part, "A") == (1, 2, 1, 2, 1, 2, 3)
    assert code(x.inverse(), part, "A") == (3, 2, 1, 2, 1, 2, 1)

    assert theta(x, part, "A", (1, 2, 1)) == 1
    assert theta(x.inverse(), part, "A", (1, 2, 1)) == 1
    assert code_qm(x, part, "A", (1, 2, 1)) == 0

    assert theta(x, part, "A", (1, 2, 3)) == 1
    assert theta(x.inverse(), part, "A", (1, 2, 3)) == 0
    assert code_qm(x, part, "A", (1, 2, 3)) == 1

    for n in range(1, 33):
        assert code_qm(x ** n, part, "A", (1, 2, 3)) == n

    h = homogenise(lambda w: code_qm(w, part, "A", (1, 2, 3)), x,
                   max_n=32, max_period=4)
    assert h.exact and h.value == 1


def test_weighted_code_example():
    g = expand(parse_graph("vertex a Z\nvertex b Z/3"))
    part = (frozenset({0}), frozenset({1}))
    exps = (8, -4, -4, -1, 7, 2, -3)
    letters = []
    for e in exps:
        letters.append((0, e))
        letters.append((1, 1))
    x = NormalWord(g, letters[:-1])  # trailing Z letter omitted; code is equal
    assert weighted_z_code(x, part) == (8, 9, 9, 3)


def test_weighted_code_requires_z_side():
    g = expand(parse_graph("vertex a Z/5\nvertex b Z/3"))
    part = (frozenset({0}), frozenset({1}))
    with pytest.raises(WordError):
        weighted_z_code(NormalWord.identity(g), part)


def test_weighted_qm_on_alternating_word():
    g = expand(parse_graph("vertex a Z\nvertex b Z/3"))
    part = (frozenset({0}), frozenset({1}))
    # runs 1, 2, 3 with alternating signs stay separate in the weighted code
    x = parse_word(g, "a b a^-2 b a^3 b")
    assert weighted_z_code(x, part) == (1, 2, 3)
    assert weighted_theta(x, part, (1, 2, 3)) == 1
    assert weighted_code_qm(x, part, (1, 2, 3)) == 1


def test_genericity_basics():
    assert is_generic((1, 2, 3))
    assert is_generic((1, 3, 2))
    assert is_generic((1, 2, 4))
    assert not is_generic((1, 1, 2))
    assert not is_generic((1, 2, 1))
    assert not is_generic((2, 2, 2))


def test_short_tuples_never_generic():
    for k in (1, 2):
        for z in product(range(1, 5), repeat=k):
            assert not is_generic(z)


def _reverse_occurs_oracle(z):
    z = tuple(z)
    rev = z[::-1]
    k = len(z)
    doubled = z + z
    return any(doubled[i:i + k] == rev for i in range(len(doubled) - k + 1))


def test_genericity_exhaustive_against_oracle():
    for k in range(1, 6):
        for z in product(range(1, 5), repeat=k):
            assert is_generic(z) == (not _reverse_occurs_oracle(z))


def test_count_disjoint_greedy():
    assert count_disjoint((1, 2, 1, 2, 1), (1, 2, 1)) == 1
    assert count_disjoint((1, 2, 1, 1, 2, 1), (1, 2, 1)) == 2
    assert count_disjoint((), (1,)) == 0
    with pytest.raises(ValueError):
        count_disjoint((1, 2), ())


def test_code_of_identity_and_letters(z5b):
    g, part = z5b
    assert code(NormalWord.identity(g), part, "A") == ()
    assert code(NormalWord.letter(g, 0), part, "A") == (1,)
    assert code(NormalWord.letter(g, 1), part, "A") == ()


def test_code_side_validation(z5b):
    g, part = z5b
    with pytest.raises(WordError):
        code(NormalWord.identity(g), part, "C")


def test_homogenise_conjugacy_invariance(z5b):
    g, part = z5b
    f = lambda w: code_qm(w, part, "A", (1, 2, 3))
    x = parse_word(g, "a b a^2 b a^3 b")
    y = parse_word(g, "b a^2")
    hx = homogenise(f, x, max_n=24, max_period=6)
    hy = homogenise(f, x.conjugate_by(y), max_n=24, max_period=6)
    assert hx.exact and hy.exact
    assert hx.value == hy.value


def test_homogenise_torsion_vanishes(z5b):
    g, part = z5b
    f = lambda w: code_qm(w, part, "A", (1, 2, 3))
    h = homogenise(f, NormalWord.letter(g, 0), max_n=16, max_period=4)
    assert h.exact and h.value == 0


def test_homogenise_inexact_reports_bound(z5b):
    g, part = z5b
    f = lambda w: code_qm(w, part, "A", (1, 2, 3))
    x = parse_word(g, "a b a^2 b a^3 b")
    h = homogenise(f, x, max_n=3, max_period=8, defect_estimate=2)
    if not h.exact:
        assert h.error_bound is not None and h.error_bound > 0


def test_empirical_defect_bounded(z5b):
    g, part = z5b
    from qmgraph.words import random_word
    f = lambda w: code_qm(w, part, "A", (1, 2, 3))
    worst = 0
    for s in range(100):
        x = random_word(g, 6, seed=2 * s)
        y = random_word(g, 6, seed=2 * s + 1)
        worst = max(worst, abs(f(x) + f(y) - f(x * y)))
    assert worst <= 6
