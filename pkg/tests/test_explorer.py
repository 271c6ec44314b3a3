import json

from soergelring.coxeter import a2, a3, b2
from soergelring.explorer import (
    CHARACTER_ASSUMPTION,
    a3_checks,
    b2_counterexample,
    closure_explore,
    closure_report,
    default_closure,
    remark_comb_check,
)
from soergelring.grammar import evaluate, parse_expression
from soergelring.grotring import enumerate_X
from soergelring.laurent import LaurentPoly


def test_b2_counterexample(oracle_b2):
    rep = b2_counterexample(oracle=oracle_b2)
    assert rep.ok, rep.text()
    assert len(rep.data["character"]) == 8
    json.dumps(rep.to_json())


def test_a3_checks_facts():
    rep = a3_checks()
    by_name = {c.name: c for c in rep.checks}
    assert by_name["support of uch(B_t B_u B_t) = {e,t,u,tu,ut,tut}"].ok
    assert by_name["uch(B_t B_u B_t) = uch(B_t B_tut B_t)"].ok
    assert by_name["uch(B_s R_t B_u) = d_t + d_st + d_tu + d_stu"].ok
    assert any(CHARACTER_ASSUMPTION in c.name and c.ok for c in rep.checks)


def test_a3_shape_matches_are_genuine():
    # every w in A = {t, st, tu, stu} gives w^-1 A = {e, t1, t2, t1 t2} with
    # t1, t2 simultaneously conjugate to a pair of simple reflections
    g = a3()
    rep = a3_checks()
    matches = rep.data["shape_matches"]
    assert sorted(x["w"] for x in matches) == sorted(rep.data["candidates"])
    A = g.mask([g.parse_element(w) for w in ("t", "st", "tu", "stu")])
    for x in matches:
        w, t1, t2 = (g.parse_element(x[k]) for k in ("w", "t1", "t2"))
        assert g.is_reflection(t1) and g.is_reflection(t2)
        assert g.act_left(g.inverse(w), A) == g.mask([g.identity, t1, t2, g.multiply(t1, t2)])
        c = x["simultaneous_conjugate"]
        cc = g.parse_element(c["c"])
        assert g.conjugate(cc, g.parse_element(c["s1"])) == t1
        assert g.conjugate(cc, g.parse_element(c["s2"])) == t2


def test_remark_comb(ext):
    rep = remark_comb_check(ring=ext)
    assert rep.ok, rep.text()
    wit = rep.data["witnesses"]
    assert len(wit) == 25
    g = a2()
    assert wit["{e,s1}"] == {"word": "B:s1", "n": -1, "strong": True}
    assert wit["{s1*s2}"] == {"word": "Rw:s1*s2", "n": 0, "strong": True}
    assert wit[g.set_str(g.full)]["strong"] is False
    # every witness re-evaluates to its class (strong) or contains it with coefficient v^-n (weak)
    for name, w in wit.items():
        A = next(A for A in ext.basis if g.set_str(A) == name)
        x = evaluate(ext, parse_expression(g, w["word"]))
        assert x.coeff(A) == LaurentPoly.monomial(-w["n"])
        assert (len(x) == 1) == w["strong"]


def test_remark_comb_reports_uncovered_classes(ext):
    rep = remark_comb_check(max_k=1, ring=ext)
    assert not rep.ok
    assert "no witness" in rep.first_failure().detail


def test_closure_a2():
    g, gens = default_closure("a2")
    st = closure_explore(g, gens, 10000)
    rep = closure_report(st)
    assert rep.ok
    assert not st.opaque
    X = set(enumerate_X(g))
    assert {A for A in st.reached if A in X} == X
    assert len(st.reached) == 20  # the 19 sets of X and {e}


def test_closure_b2_has_opaque_products():
    g, gens = default_closure("b2")
    st = closure_explore(g, gens, 10000)
    assert st.opaque
    assert not st.invalid
    s, t = g.simple
    A = g.mask([g.identity, s, t, g.multiply(s, t)])
    assert any(o[1] == A and o[2] == g.parse_element("tst") for o in st.opaque)


def test_closure_a3_growth_and_budget():
    g, gens = default_closure("a3")
    st = closure_explore(g, gens, 10000)
    assert not st.invalid
    counts = [r for _, r, _ in st.growth]
    assert counts == sorted(counts)
    small = closure_explore(g, gens, 5)
    assert small.exhausted and small.steps == 5
    assert json.dumps(closure_report(st).to_json())


def test_closure_rejects_non_reflections():
    g = b2()
    try:
        closure_explore(g, [g.parse_element("st")], 10)
    except ValueError as exc:
        assert "not a reflection" in str(exc)
    else:
        raise AssertionError("expected ValueError")


def test_a3_word_is_a_twisted_product_of_simples():
    # B_s R_t B_u = R_t B_tst B_u = R_u (B_s B_t) R_ut, checked on characters
    from soergelring.characters import B, Rw, uch_of_word

    g = a3()
    lhs = uch_of_word(g, [B(g, "s"), Rw(g, "t"), B(g, "u")])
    assert lhs == uch_of_word(g, [Rw(g, "t"), B(g, "tst"), B(g, "u")])
    assert lhs == uch_of_word(g, [Rw(g, "u"), B(g, "s"), B(g, "t"), Rw(g, "ut")])
