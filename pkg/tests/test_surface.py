import random

import pytest
from hypothesis import given, settings, strategies as st

from vtlink.errors import GenusMismatch, LiteralError
from vtlink.surface import (
    Conjugacy,
    H1Class,
    SurfaceBase,
    SurfaceWord,
    abelianize,
    canonical_rotation,
    conjugate_in_F,
    cyclic_dehn_reduce,
    dehn_reduce,
    free_reduce,
    generator_index,
    generator_name,
    intersection_number,
    invert_letters,
    is_trivial,
    letters_trivial,
    parse_h1,
    parse_word,
    relator_cycles,
)

from helpers import random_letters


def W(text, genus=2):
    return parse_word(text, genus)


# --- frozen values ----------------------------------------------------------


def test_generator_names():
    assert [generator_name(i) for i in range(4)] == ["A1", "B1", "A2", "B2"]
    assert generator_index("B3") == 5


def test_relator_genus2():
    r = SurfaceBase(2).relator()
    assert str(r) == "A1 B1 A1^-1 B1^-1 A2 B2 A2^-1 B2^-1"
    assert is_trivial(r)


def test_relator_cycles_count():
    assert len(relator_cycles(2)) == 16
    assert len(relator_cycles(3)) == 24


def test_word_parse_and_print():
    w = W("A1 B1 A1^-1 B2^3")
    assert w.letters == (1, 2, -1, 4, 4, 4)
    assert str(w) == "A1 B1 A1^-1 B2^3"
    assert W("1").letters == ()
    assert W("A1 A1^-1").letters == ()


def test_word_literal_errors():
    with pytest.raises(LiteralError):
        W("C1")
    with pytest.raises(GenusMismatch):
        W("A3")


def test_h1_literals():
    assert parse_h1("2*A1 - 3*B2", 2).coords == (2, 0, 0, -3)
    assert str(H1Class((2, 0, 0, -3))) == "2*A1 - 3*B2"
    assert parse_h1("-B1 + A2", 2).coords == (0, -1, 1, 0)
    assert parse_h1("0", 2).is_zero()
    with pytest.raises(LiteralError):
        parse_h1("2*A1 3*B2", 2)


def test_intersection_form():
    A1, B1, A2, B2 = (H1Class.basis(2, n) for n in ("A1", "B1", "A2", "B2"))
    assert intersection_number(A1, B1) == 1
    assert intersection_number(B1, A1) == -1
    assert intersection_number(A2, B2) == 1
    assert intersection_number(A1, B2) == 0
    assert intersection_number(A1, A1) == 0


def test_h1_content():
    assert H1Class((4, 0, -6, 0)).content() == 2
    assert H1Class.zero(2).content() == 0


def test_abelianize():
    assert abelianize(W("A1 B1 A1^-1 B1^-1")).is_zero()
    assert abelianize(W("A1^2 B2^-1")).coords == (2, 0, 0, -1)


def test_dehn_examples():
    # five of the eight relator letters are replaced by the inverse of the other three
    assert dehn_reduce((1, 2, -1, -2, 3), 2) == (4, 3, -4)
    assert dehn_reduce((1, 2, -1, -2, 3, 4, -3, -4), 2) == ()
    assert dehn_reduce((1, 2, -1), 2) == (1, 2, -1)


def test_trivial_examples():
    assert is_trivial(W(""))
    assert not is_trivial(W("A1"))
    assert not is_trivial(W("A1 B1 A1^-1 B1^-1"))
    assert is_trivial(W("B1 A1^-1 B1^-1 A2 B2 A2^-1 B2^-1 A1"))
    assert is_trivial(W("A1 B1 A1^-1 B1^-1", 1))


def test_conjugacy_examples():
    assert conjugate_in_F(W("A1 B1"), W("B1 A1")) is Conjugacy.YES
    assert conjugate_in_F(W("A1"), W("B1")) is Conjugacy.NO
    assert conjugate_in_F(W("A1"), W("A1^-1")) is Conjugacy.NO
    assert conjugate_in_F(W("A1 B1 A1^-1 B1^-1"), W("B2 A2 B2^-1 A2^-1")) is Conjugacy.YES
    assert conjugate_in_F(W("A1 B1 A1^-1 B1^-1"), W("B1 A1 B1^-1 A1^-1")) is Conjugacy.NO


def test_conjugacy_through_relator():
    u = W("A1 B1 A1^-1 B1^-1")
    g = W("A2 B1")
    assert conjugate_in_F(u, g * u * ~g) is Conjugacy.YES


def test_conjugacy_unknown_beyond_bound():
    u = W("A1 B2 " * 6)
    v = W("A1 A1 B2 B2 " + "A1 B2 " * 4)
    assert conjugate_in_F(u, v, max_length=10) is Conjugacy.UNKNOWN
    assert conjugate_in_F(u, v) is Conjugacy.NO
    assert conjugate_in_F(u, W("A1"), max_length=10) is Conjugacy.NO  # abelian certificate first


def test_hyperbolic_requirement():
    with pytest.raises(GenusMismatch):
        SurfaceBase(1).require_hyperbolic("Dehn's algorithm")


# --- oracle: exhaustive genus-2 words up to length 6 --------------------------


def _closure(genus, bound):
    seen, frontier = {()}, [()]
    cycles = relator_cycles(genus)
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(len(w) + 1):
                for r in cycles:
                    v = free_reduce(w[:i] + r + w[i:])
                    if len(v) <= bound and v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return seen


def _reduced_words(genus, n):
    alphabet = [s * i for i in range(1, 2 * genus + 1) for s in (1, -1)]
    level = [()]
    yield ()
    for _ in range(n):
        level = [w + (a,) for w in level for a in alphabet if not w or w[-1] != -a]
        yield from level


def test_triviality_matches_insertion_oracle_short_words():
    trivial = {w for w in _closure(2, 12) if len(w) <= 6}
    for w in _reduced_words(2, 6):
        assert is_trivial(SurfaceWord(2, w)) == (w in trivial), w


# --- properties --------------------------------------------------------------

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=24)


@given(letters, letters)
def test_dehn_respects_group_structure(u, v):
    # u and u with a relator inserted are equal in the group
    r = relator_cycles(2)[len(u) % 16]
    i = len(v) % (len(u) + 1)
    assert letters_trivial(tuple(u) + invert_letters(free_reduce(u[:i] + list(r) + u[i:])), 2)


@given(letters)
def test_dehn_output_is_shorter_and_equal(w):
    d = dehn_reduce(w, 2)
    assert len(d) <= len(free_reduce(w))
    assert letters_trivial(tuple(w) + invert_letters(d), 2)


@given(letters, letters)
def test_conjugates_detected(u, c):
    g = 2
    uw, cw = SurfaceWord(g, u), SurfaceWord(g, c)
    assert conjugate_in_F(uw, cw * uw * ~cw) is Conjugacy.YES


@settings(deadline=None)  # the full search on long non-conjugate pairs can take a few hundred ms
@given(letters, letters)
def test_conjugacy_symmetric_and_abelian_certificate(u, v):
    a, b = SurfaceWord(2, u), SurfaceWord(2, v)
    r1, r2 = conjugate_in_F(a, b), conjugate_in_F(b, a)
    assert r1 is r2
    if abelianize(a) != abelianize(b):
        assert r1 is Conjugacy.NO


@given(letters)
def test_cyclic_reduction_is_conjugate(w):
    a = SurfaceWord(2, w)
    b = SurfaceWord(2, cyclic_dehn_reduce(w, 2))
    assert conjugate_in_F(a, b) is Conjugacy.YES


@given(letters)
def test_canonical_rotation_invariant(w):
    w = tuple(w)
    for i in range(len(w)):
        assert canonical_rotation(w[i:] + w[:i]) == canonical_rotation(w)


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_conjugate_pairs_never_no(seed):
    rng = random.Random(seed)
    g = rng.choice((2, 3))
    u = random_letters(rng, g, rng.randint(1, 12))
    c = random_letters(rng, g, rng.randint(0, 6))
    v = list(c + u + invert_letters(c))
    for _ in range(rng.randint(0, 2)):
        i = rng.randrange(len(v) + 1)
        v[i:i] = rng.choice(relator_cycles(g))
    assert conjugate_in_F(SurfaceWord(g, u), SurfaceWord(g, v)) is Conjugacy.YES
