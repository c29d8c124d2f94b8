import math
import random

import pytest
from hypothesis import given, strategies as st

from vtlink.errors import GenusMismatch, MalformedLoop, UnsupportedBundleArithmetic
from vtlink.extension import (
    IDENTITY,
    BundleData,
    Drag,
    EVFiberElement,
    Fib,
    FieldData,
    Pi1MElement,
    Rot,
    central_fiber,
    conj_act,
    euler_eval_torus,
    fiber_order_check,
    h_V,
    shift_set_contains,
)
from vtlink.surface import H1Class, SurfaceBase, SurfaceWord, parse_h1, parse_word

A2 = H1Class.basis(2, "A2")
B2 = H1Class.basis(2, "B2")
A1 = H1Class.basis(2, "A1")
V1 = FieldData(1, A2)


def elt(word, fiber=0, genus=2):
    return Pi1MElement(parse_word(word, genus), fiber)


def test_euler_eval_examples():
    assert euler_eval_torus(V1, Drag(B2)) == 2
    assert euler_eval_torus(V1, Drag(A1)) == 0
    assert euler_eval_torus(V1, Rot(7)) == 0
    assert euler_eval_torus(FieldData(3, A2), Fib(B2, 2)) == 12


def test_h_v_examples():
    assert h_V(V1, [Rot(1)] * 3) == 0
    assert h_V(V1, [Drag(B2)]) == 1
    assert h_V(V1, [Drag(B2), Rot(5)]) == 1
    assert h_V(V1, [Drag(-B2)]) == -1
    assert h_V(FieldData(2, A2), [Drag(B2, fiber_power=3)]) == 6


def test_h_v_rejects_non_generators():
    with pytest.raises(MalformedLoop):
        h_V(V1, ["rot"])


def test_conj_act_examples():
    bundle = BundleData(SurfaceBase(2))
    assert conj_act(V1, bundle.identity(), EVFiberElement(1, 0)) == EVFiberElement(1, 0)
    assert conj_act(V1, elt("B2"), EVFiberElement(1, 0)) == EVFiberElement(1, 2)
    assert conj_act(V1, elt("A1 B2 A1^-1"), EVFiberElement(3, 1)) == EVFiberElement(3, 7)
    assert conj_act(V1, elt("B2 A1"), EVFiberElement(0, 5)) == EVFiberElement(0, 5)


def test_fiber_order():
    assert fiber_order_check(V1)
    assert central_fiber(1) != IDENTITY
    assert central_fiber(0) == IDENTITY
    assert not central_fiber(-7).is_identity()


def test_ev_element_group():
    x, y = EVFiberElement(2, -3), EVFiberElement(-1, 4)
    assert x * y == EVFiberElement(1, 1)
    assert (x * x.inverse()).is_identity()
    assert str(x) == "(+2,-3)"


def test_shift_set():
    assert V1.shift_generator() == 2
    assert FieldData(1, parse_h1("2*A2", 2)).shift_generator() == 4
    assert FieldData(-3, A2).shift_generator() == 6
    assert FieldData(0, A2).shift_generator() == 0
    assert shift_set_contains(FieldData(0, A2), 0)
    assert not shift_set_contains(FieldData(0, A2), 2)
    assert shift_set_contains(V1, -4)
    assert not shift_set_contains(V1, 3)


def test_product_bundle_arithmetic():
    b = BundleData(SurfaceBase(2))
    x = b.multiply(elt("A1", 1), elt("A1^-1 B2", 2))
    assert x == elt("B2", 3)
    assert b.invert(x) == elt("B2^-1", -3)
    assert b.fiber_power(elt("A1 B1 A1^-1 B1^-1 A2 B2 A2^-1 B2^-1", 2)) == 2
    assert b.fiber_power(elt("A1")) is None


def test_nonproduct_bundle_refuses_products():
    b = BundleData(SurfaceBase(2), euler=3)
    with pytest.raises(UnsupportedBundleArithmetic):
        b.multiply(elt("A1"), elt("B1"))
    with pytest.raises(UnsupportedBundleArithmetic):
        b.fiber_power(elt("A1 B1 A1^-1 B1^-1 A2 B2 A2^-1 B2^-1"))
    assert b.fiber_power(b.fiber(2)) == 2
    # the abelian computations still work
    assert euler_eval_torus(V1, Drag(B2)) == 2


def test_field_genus_check():
    with pytest.raises(GenusMismatch):
        FieldData(1, H1Class.basis(3, "A3")).check_base(SurfaceBase(2))


def test_pi1m_str():
    assert str(elt("A1", 2)) == "A1 f^2"
    assert str(elt("", 1)) == "f"
    assert str(elt("")) == "1"


# --- properties --------------------------------------------------------------

h1 = st.lists(st.integers(-4, 4), min_size=4, max_size=4).map(lambda c: H1Class(tuple(c)))
fields = st.builds(FieldData, st.integers(-3, 3), h1)
words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=12).map(
    lambda w: Pi1MElement(SurfaceWord(2, w), 0)
)
ev = st.builds(EVFiberElement, st.integers(-5, 5), st.integers(-20, 20))
torus = st.one_of(
    st.builds(Drag, h1, st.integers(-3, 3)),
    st.builds(Fib, h1, st.integers(-3, 3)),
    st.builds(Rot, st.integers(-3, 3)),
)


@given(fields, words, words, ev)
def test_conj_act_is_an_action(field, g1, g2, x):
    b = BundleData(SurfaceBase(2))
    assert conj_act(field, b.multiply(g1, g2), x) == conj_act(field, g1, conj_act(field, g2, x))


@given(fields, words, ev, ev)
def test_conj_act_is_a_homomorphism(field, g, x, y):
    assert conj_act(field, g, x * y) == conj_act(field, g, x) * conj_act(field, g, y)


@given(fields, st.lists(torus, max_size=6), st.lists(torus, max_size=6))
def test_h_v_additive(field, u, v):
    assert h_V(field, u + v) == h_V(field, u) + h_V(field, v)


@given(fields, torus)
def test_euler_eval_even(field, t):
    assert euler_eval_torus(field, t) % 2 == 0


def _inverse(t):
    if isinstance(t, Drag):
        return Drag(-t.rho, t.fiber_power)
    if isinstance(t, Fib):
        return Fib(t.curve_class, -t.n)
    return Rot(-t.n)


@given(fields, st.lists(torus, max_size=6))
def test_h_v_negates_under_reversal(field, loop):
    assert h_V(field, [_inverse(t) for t in reversed(loop)]) == -h_V(field, loop)


def test_shift_set_matches_enumeration():
    # central shifts of (1,0) over all basis words of length <= 3 generate s*Z
    rng = random.Random(3)
    alphabet = [1, -1, 2, -2, 3, -3, 4, -4]
    level, words_ = [()], [()]
    for _ in range(3):
        level = [w + (a,) for w in level for a in alphabet]
        words_ += level
    for _ in range(20):
        field = FieldData(rng.choice((0, 1, 2, -1)), H1Class(tuple(rng.randint(-2, 2) for _ in range(4))))
        shifts = {conj_act(field, Pi1MElement(SurfaceWord(2, w)), EVFiberElement(1, 0)).central for w in words_}
        s = field.shift_generator()
        assert all(shift_set_contains(field, m) for m in shifts)
        assert math.gcd(*shifts) == s
