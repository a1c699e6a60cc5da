"""Word algebra: free reduction, the usual operators, and the text format."""

import pytest
from hypothesis import given, strategies as st

from m4kit.words import (
    IDENTITY,
    Word,
    WordSyntaxError,
    commutator,
    conjugate,
    cyclic_reduce,
    cyclic_rotations,
    cyclically_equal,
    format_word,
    gen,
    parse_word,
    rotate,
    substitute,
)

a, b, c = gen("a"), gen("b"), gen("c")


# -- strategies ---------------------------------------------------------------

names = st.sampled_from(["a", "b", "c", "d"])
letters = st.tuples(names, st.sampled_from([1, -1]))
words = st.builds(lambda ls: Word(tuple(ls)), st.lists(letters, max_size=12))


# -- construction and reduction ----------------------------------------------

def test_auto_reduction_on_construction():
    w = Word((("a", 1), ("b", 1), ("b", -1), ("a", 1)))
    assert w.letters == (("a", 1), ("a", 1))


def test_reduction_cascades():
    # a b c c^-1 b^-1 a  ->  a a
    w = Word((("a", 1), ("b", 1), ("c", 1), ("c", -1), ("b", -1), ("a", 1)))
    assert w == a * a


def test_identity_is_empty():
    assert len(IDENTITY) == 0
    assert a * a.inverse() == IDENTITY
    assert not IDENTITY


def test_bad_letter_rejected():
    with pytest.raises(AssertionError):
        Word((("a", 2),))
    with pytest.raises(AssertionError):
        Word((("", 1),))


@given(words)
def test_double_inverse(w):
    assert w.inverse().inverse() == w


@given(words)
def test_word_times_inverse_is_identity(w):
    assert w * w.inverse() == IDENTITY
    assert w.inverse() * w == IDENTITY


@given(words, words, words)
def test_multiplication_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(words, words)
def test_inverse_antihomomorphism(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()


# -- counters ------------------------------------------------------------------

def test_exponent_sum_and_occurrences():
    w = parse_word("a b a^-1 b a^2")
    assert w.exponent_sum("a") == 2
    assert w.occurrences("a") == 4
    assert w.exponent_sum("b") == 2
    assert w.exponent_sum("c") == 0
    assert w.names() == frozenset({"a", "b"})


@given(words)
def test_commutator_has_zero_exponent_sums(w):
    k = commutator(w, b * c)
    for n in k.names():
        assert k.exponent_sum(n) == 0


# -- operators -----------------------------------------------------------------

def test_commutator_definition():
    assert commutator(a, b) == parse_word("a b a^-1 b^-1")


def test_conjugate_definition():
    assert conjugate(a, b) == parse_word("b a b^-1")


@given(words, words)
def test_conjugation_is_homomorphism(u, v):
    t = gen("d")
    assert conjugate(u * v, t) == conjugate(u, t) * conjugate(v, t)


def test_substitute_replaces_and_inverts():
    w = parse_word("x y^-1 x")
    out = substitute(w, {"x": a * b, "y": c})
    assert out == parse_word("a b c^-1 a b")


def test_substitute_leaves_unmapped_names():
    w = parse_word("x z")
    assert substitute(w, {"x": a}) == parse_word("a z")


# -- cyclic structure -----------------------------------------------------------

def test_cyclic_reduce_strips_conjugating_frame():
    w = conjugate(commutator(a, b), c * a)
    assert cyclic_reduce(w) == commutator(a, b)


@given(words)
def test_cyclic_reduce_idempotent(w):
    r = cyclic_reduce(w)
    assert cyclic_reduce(r) == r


@given(words, st.integers(min_value=-6, max_value=6))
def test_rotation_preserves_cyclic_class(w, k):
    r = cyclic_reduce(w)
    assert cyclically_equal(r, rotate(r, k))


def test_cyclically_equal_covers_rotation_and_inversion():
    u = parse_word("a b a^-1 b^-1")
    assert cyclically_equal(u, parse_word("b a^-1 b^-1 a"))
    assert cyclically_equal(u, u.inverse())  # relators are unoriented
    assert not cyclically_equal(u, parse_word("a b a b"))
    assert not cyclically_equal(u, parse_word("a b"))


def test_cyclic_rotations_count():
    w = parse_word("a b c")
    assert len(cyclic_rotations(w)) == 3
    assert cyclic_rotations(IDENTITY) == [IDENTITY]


# -- text form -------------------------------------------------------------------

def test_format_uses_powers():
    assert format_word(parse_word("a a a b^-1 b^-1")) == "a^3 b^-2"
    assert format_word(IDENTITY) == "1"


def test_parse_supports_brackets_and_commutators():
    assert parse_word("[a, b]") == commutator(a, b)
    assert parse_word("(a b)^-1") == (a * b).inverse()
    assert parse_word("[a, b]^2") == commutator(a, b) * commutator(a, b)
    assert parse_word("1") == IDENTITY


def test_parse_nested_commutator():
    assert parse_word("[[a, b], c]") == commutator(commutator(a, b), c)


@pytest.mark.parametrize("bad", ["a^", "a^x", "[a b]", "(a", "a)", "^2", "a,"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(WordSyntaxError):
        parse_word(bad)


@given(words)
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w


def test_str_matches_format():
    w = parse_word("a^2 b^-1")
    assert str(w) == format_word(w)
