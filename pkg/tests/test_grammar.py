import pytest

from soergelring.coxeter import a2, b2
from soergelring.grammar import ParseError, SetFactor, evaluate, parse_expression, parse_set
from soergelring.grotring import Letter, RingElement
from soergelring.laurent import ONE, QUANTUM_TWO, V, VINV

G = a2()
E = G.identity
T1, T2, T3 = G.named_reflections


def test_letters_and_sets():
    (term,) = parse_expression(G, "B:t1 * B:t2")
    assert term.factors == [Letter("B", T1), Letter("B", T2)]
    (term,) = parse_expression(G, "Rw:s1*s2 * B:t3")
    assert term.factors == [Letter("R", G.multiply(*G.simple)), Letter("B", T3)]
    (term,) = parse_expression(G, "(v + v^-1)*R{e,t1}")
    assert term.coeff == QUANTUM_TWO
    assert term.factors == [SetFactor(G.mask([E, T1]))]


def test_signs_and_scalars():
    terms = parse_expression(G, "-2*v^-1*B:t1 + v - R{e}")
    assert [t.coeff for t in terms] == [VINV * -2, V, -ONE]


def test_b2_words():
    g = b2()
    (term,) = parse_expression(g, "B:tst * B:s * B:t")
    assert [f.elem for f in term.factors] == [g.parse_element("tst"), g.simple[0], g.simple[1]]


def test_parse_set():
    assert parse_set(G, "W") == G.full
    assert parse_set(G, "{e, s1*s2*s1}") == G.mask([E, T2])
    with pytest.raises(ParseError):
        parse_set(G, "{e,")


@pytest.mark.parametrize("text, pos", [("B:t1 * R{s1,q}", 12), ("B:s1*s2", 0), ("", 0), ("B:t1 +", 6), ("(v + ", 0)])
def test_errors_point_at_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_expression(G, text)
    assert info.value.pos == pos
    assert "^" in str(info.value)


def test_evaluate(plain):
    x = evaluate(plain, parse_expression(plain.group, "B:t1 * B:t1"))
    assert x == RingElement({G.mask([E, T1]): QUANTUM_TWO * V})
    y = evaluate(plain, parse_expression(plain.group, "v^-1*B:t1 - R{e,t1}"))
    assert y.is_zero()
