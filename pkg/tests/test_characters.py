import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from soergelring.characters import B, Rw, UngradedCharacter, convolve, uch_of_class, uch_of_generator, uch_of_word
from soergelring.coxeter import a2, a3, b2
from soergelring.grotring import Letter, RingElement

G = a2()
E = G.identity
T1, T2, T3 = G.named_reflections


def delta(g, x):
    return UngradedCharacter.delta(g, x)


def test_generator_characters():
    g = b2()
    tst = g.parse_element("tst")
    assert uch_of_generator(g, Letter("B", tst)) == delta(g, g.identity) + delta(g, tst)
    assert uch_of_generator(g, Letter("R", g.identity)) == delta(g, g.identity)
    assert uch_of_word(g, [B(g, "t")]).mass() == 2
    with pytest.raises(ValueError):
        uch_of_generator(g, Letter("B", g.parse_element("st")))


def test_b2_word_has_full_support():
    g = b2()
    ch = uch_of_word(g, [B(g, "tst"), B(g, "s"), B(g, "t")])
    assert ch.support() == set(g.elements)
    assert all(c == 1 for _, c in ch.items())
    assert ch.mass() == 8


def test_a3_twisted_word():
    g = a3()
    ch = uch_of_word(g, [B(g, "s"), Rw(g, "t"), B(g, "u")])
    want = sum((delta(g, g.parse_element(w)) for w in ("st", "tu", "stu")), delta(g, g.parse_element("t")))
    assert ch == want


def test_twists_cancel():
    for g in (a2(), b2(), a3()):
        for w in g.elements:
            assert delta(g, w) * delta(g, g.inverse(w)) == delta(g, g.identity)


def test_class_characters(ext):
    assert uch_of_class(G, ext.cls(G.mask([E, T1]))) == delta(G, E) + delta(G, T1)
    assert uch_of_class(G, ext.cls(G.full)) == sum((delta(G, x) for x in G.elements[1:]), delta(G, E))
    prod = ext.mul(ext.B(T1), ext.B(T3))
    assert uch_of_class(G, prod) == (delta(G, E) + delta(G, T1)) * (delta(G, E) + delta(G, T3))


def test_homomorphism_on_basis_pairs(ext):
    for A, Bm in itertools.product(ext.basis, repeat=2):
        x, y = RingElement.basis(A), RingElement.basis(Bm)
        assert uch_of_class(G, ext.product(x, y)) == convolve(uch_of_class(G, x), uch_of_class(G, y))


def test_sandwich_conjugation_at_character_level():
    g = a3()
    assert uch_of_word(g, [B(g, "t"), B(g, "u"), B(g, "t")]) == uch_of_word(g, [B(g, "t"), B(g, "tut"), B(g, "t")])


def test_text_and_json():
    g = b2()
    ch = uch_of_word(g, [B(g, "t")])
    assert str(ch) == "1*e + 1*t"
    assert ch.to_json() == {"e": 1, "t": 1}
    assert str(UngradedCharacter(g)) == "0"


def test_mixing_groups_fails():
    with pytest.raises(ValueError):
        delta(a2(), a2().identity) * delta(b2(), b2().identity)


letters_a3 = st.lists(
    st.one_of(
        st.sampled_from(a3().reflections).map(lambda t: Letter("B", t)),
        st.sampled_from(a3().elements).map(lambda w: Letter("R", w)),
    ),
    max_size=5,
)


@given(letters_a3, letters_a3, st.sampled_from(a3().elements))
def test_word_characters(u, w, x):
    g = a3()
    a, b = uch_of_word(g, u), uch_of_word(g, w)
    assert uch_of_word(g, u + w) == a * b
    assert uch_of_word(g, [Letter("R", x)] + u) == delta(g, x) * a
    # support subadditivity
    prod_support = {g.multiply(p, q) for p in a.support() for q in b.support()}
    assert (a * b).support() <= prod_support
    assert (a * b).is_nonnegative()
