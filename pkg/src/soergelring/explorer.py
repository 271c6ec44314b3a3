"""Checks and searches outside the comfortable A2 setting.

Non-isomorphism verdicts that rest on ungraded characters are only valid
under the assumption that standard multiplicities are isomorphism
invariants; every report using them says so.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .characters import UngradedCharacter, convolve, uch_of_word
from .coxeter import CoxeterGroup, a2, a3, b2, popcount
from .grotring import (
    EXTENDED,
    GrothendieckRing,
    LemmaNotApplicable,
    Letter,
    RingElement,
    decompose_B,
    enumerate_X,
    is_stable_set,
    lemma_applicable,
)
from .hilbert import HilbertOracle, graded_dim_compare_b2
from .laurent import V
from .report import Report

CHARACTER_ASSUMPTION = "under character-invariance assumption"


def _B(g: CoxeterGroup, name: str) -> Letter:
    return Letter("B", g.parse_element(name))


def _R(g: CoxeterGroup, name: str) -> Letter:
    return Letter("R", g.parse_element(name))


# ---------------------------------------------------------------------------
# B2


def b2_counterexample(max_k: int = 10, shift_window: int = 6, oracle: HilbertOracle | None = None) -> Report:
    """B = B_tst B_s B_t in type B2 is not a shifted R(A)."""
    g = b2()
    rep = Report("B2 counterexample B = B_tst B_s B_t")
    word = [_B(g, "tst"), _B(g, "s"), _B(g, "t")]
    ch = uch_of_word(g, word)
    rep.data["character"] = ch.to_json()
    rep.add(
        "character has full support, every multiplicity 1",
        ch.support() == set(g.elements) and all(c == 1 for _, c in ch.items()),
        str(ch),
    )
    bad = [w for w in g.elements if convolve(UngradedCharacter.delta(g, w), ch) != ch]
    rep.add("d_w * uch(B) = uch(B) for all w", not bad, "" if not bad else f"fails for {g.word_str(bad[0])}")

    oracle = oracle or HilbertOracle(g)
    cmp = graded_dim_compare_b2(oracle, max_k, shift_window)
    rep.data["graded"] = cmp.data
    rep.add(
        f"graded dimension of B differs from R(W)(n) for all |n| <= {shift_window}, internal degree <= {2 * max_k}",
        cmp.ok,
        "; ".join(c.detail for c in cmp.checks if c.name.endswith("n=3 differs")),
    )

    # B_s B_t = v^2 R({e, s, t, st}); then try B_tst on it.
    s, t = g.simple
    bs_bt = decompose_B(g, s, g.mask([g.identity, t])).scale(V)
    A = g.mask([g.identity, s, t, g.multiply(s, t)])
    tst = g.multiply(t, s, t)
    reason = lemma_applicable(g, tst, A)
    rep.add(
        "B_s B_t = v^2 R({e,s,t,st})",
        bs_bt == RingElement({A: V * V}),
        f"stabilised by {[g.word_str(x) for x in g.reflections if g.act_left(x, A) == A]}",
    )
    rep.add("decomposition of B_tst R({e,s,t,st}) is not available", reason is not None, reason or "applicable")
    return rep


# ---------------------------------------------------------------------------
# A3


def a3_checks() -> Report:
    g = a3()
    rep = Report("A3 checks (S = {s, t, u}, su = us)")
    s, t, u = g.simple
    rep.add("su = us", g.multiply(s, u) == g.multiply(u, s))

    tut = uch_of_word(g, [_B(g, "t"), _B(g, "u"), _B(g, "t")])
    tstst = uch_of_word(g, [_B(g, "t"), _B(g, "sts"), _B(g, "t")])
    ttutt = uch_of_word(g, [_B(g, "t"), _B(g, "tut"), _B(g, "t")])
    rep.data["uch(B_t B_u B_t)"] = tut.to_json()
    rep.data["uch(B_t B_sts B_t)"] = tstst.to_json()
    expected = g.mask([g.identity, t, u, g.multiply(t, u), g.multiply(u, t), g.multiply(t, u, t)])
    rep.add("support of uch(B_t B_u B_t) = {e,t,u,tu,ut,tut}", tut.support_mask() == expected, str(tut))
    rep.add(
        f"B_t B_u B_t and B_t B_sts B_t differ ({CHARACTER_ASSUMPTION})",
        tut.support() != tstst.support(),
        f"{g.set_str(tut.support_mask())} vs {g.set_str(tstst.support_mask())}",
    )
    rep.add("uch(B_t B_u B_t) = uch(B_t B_tut B_t)", tut == ttutt)

    bru = uch_of_word(g, [_B(g, "s"), _R(g, "t"), _B(g, "u")])
    A = g.mask([t, g.multiply(s, t), g.multiply(t, u), g.multiply(s, t, u)])
    rep.add(
        "uch(B_s R_t B_u) = d_t + d_st + d_tu + d_stu",
        bru.support_mask() == A and all(c == 1 for _, c in bru.items()),
        str(bru),
    )
    rep.add("B_s R_t B_u and B_s B_tut R_t have the same character", bru == uch_of_word(g, [_B(g, "s"), _B(g, "tut"), _R(g, "t")]))

    shapes = set()
    for t1, t2 in itertools.product(g.reflections, repeat=2):
        shapes.add(g.mask([g.identity, t1, t2, g.multiply(t1, t2)]))
    hits = []
    for w in g.members(A):
        shifted = g.act_left(g.inverse(w), A)
        if shifted in shapes:
            hits.append(g.word_str(w))
    rep.data["candidates"] = [g.word_str(w) for w in g.members(A)]
    rep.data["shape_matches"] = _shape_matches(g, A)
    rep.add(
        "w^-1 A is never {e, t1, t2, t1 t2} for the four w in A",
        popcount(A) == 4 and not hits,
        f"checked {len(g.reflections) ** 2} reflection pairs" if not hits else f"matches for {hits}",
    )
    return rep


def _shape_matches(g: CoxeterGroup, A: int) -> list[dict]:
    """For each w in A with w^-1 A = {e, t1, t2, t1 t2}, the reflections and
    a conjugator c with c s_i c^-1 = t_i for a pair of distinct simple s_i."""
    out = []
    for w in g.members(A):
        shifted = g.act_left(g.inverse(w), A)
        for t1, t2 in itertools.product(g.reflections, repeat=2):
            if shifted != g.mask([g.identity, t1, t2, g.multiply(t1, t2)]):
                continue
            conj = None
            for s1, s2 in itertools.permutations(g.simple, 2):
                conj = next(
                    (c for c in g.elements if g.conjugate(c, s1) == t1 and g.conjugate(c, s2) == t2), None
                )
                if conj is not None:
                    conj = {"s1": g.word_str(s1), "s2": g.word_str(s2), "c": g.word_str(conj)}
                    break
            out.append(
                {"w": g.word_str(w), "t1": g.word_str(t1), "t2": g.word_str(t2), "simultaneous_conjugate": conj}
            )
    return out


# ---------------------------------------------------------------------------
# normal form search in the extended A2 ring


@dataclass
class Witness:
    target: int
    left: object
    simples: tuple
    right: object
    shift: int  # target = v^shift * product (strong) or the coefficient is v^-shift (weak)
    strong: bool

    def word(self, g: CoxeterGroup) -> str:
        names = {s: lab for lab, s in zip(g.labels, g.simple)}
        parts = [f"B:{names[s]}" for s in self.simples]
        if self.left != g.identity:
            parts.insert(0, f"Rw:{g.word_str(self.left)}")
        if self.right != g.identity:
            parts.append(f"Rw:{g.word_str(self.right)}")
        return " * ".join(parts) or "Rw:e"


def remark_comb_check(max_k: int = 4, shift_window: int = 6, ring: GrothendieckRing | None = None) -> Report:
    """Find every extended basis class inside some R_w B_s1 ... B_sk R_w'
    with simple s_i.

    A strong witness is a product equal to v^-n [R(A)]; otherwise a weak
    witness has [R(A)] with coefficient v^-n among other summands.
    """
    R = ring or GrothendieckRing(EXTENDED)
    g = R.group
    rep = Report(f"R_w B_s1...B_sk R_w' search (k <= {max_k}, |n| <= {shift_window})")
    rep.data["bounds"] = {"max_k": max_k, "shift_window": shift_window}
    best: dict[int, Witness] = {}
    pos = g.index

    def rank(wit: Witness):
        # strong first, then shorter, then fewer twists, then enumeration order
        twists = (wit.left != g.identity) + (wit.right != g.identity)
        return (not wit.strong, len(wit.simples), twists, [pos[s] for s in wit.simples], pos[wit.left], pos[wit.right])

    for k in range(max_k + 1):
        for simples in itertools.product(g.simple, repeat=k):
            core = R.apply_word([Letter("B", s) for s in simples])
            for w in g.elements:
                left = R.lmul_R(w, core)
                for w2 in g.elements:
                    prod = R.rmul_R(left, w2)
                    for A, c in prod.items():
                        unit = c.is_unit_monomial()
                        if unit is None or unit[0] != 1 or abs(unit[1]) > shift_window:
                            continue
                        wit = Witness(A, w, simples, w2, -unit[1], len(prod) == 1)
                        old = best.get(A)
                        if old is None or rank(wit) < rank(old):
                            best[A] = wit
    table = {}
    for A in R.basis:
        wit = best.get(A)
        if wit is None:
            rep.add(f"class {g.set_str(A)}", False, "no witness within bounds")
            continue
        kind = "isomorphic to a shift" if wit.strong else "appears as a summand"
        table[g.set_str(A)] = {"word": wit.word(g), "n": wit.shift, "strong": wit.strong}
        rep.add(f"class {g.set_str(A)}", True, f"{kind}: R(A) ~ v^{wit.shift} * {wit.word(g)}")
    rep.data["witnesses"] = table
    return rep


# ---------------------------------------------------------------------------
# closure exploration


@dataclass
class ClosureState:
    group: CoxeterGroup
    generators: tuple
    budget: int
    reached: dict = field(default_factory=dict)  # mask -> word (tuple of generator indices)
    opaque: list = field(default_factory=list)  # (word, mask, t, reason)
    invalid: list = field(default_factory=list)
    steps: int = 0
    growth: list = field(default_factory=list)  # (steps, reached, opaque) per BFS layer
    exhausted: bool = False

    def to_json(self) -> dict:
        g = self.group
        return {
            "group": g.desc.name,
            "generators": [g.word_str(t) for t in self.generators],
            "budget": self.budget,
            "steps": self.steps,
            "exhausted_budget": self.exhausted,
            "reached": [g.set_str(A) for A in self.reached],
            "opaque": [
                {"word": self.word_text(w), "set": g.set_str(A), "t": g.word_str(t), "reason": r}
                for w, A, t, r in self.opaque
            ],
            "growth": self.growth,
        }

    def word_text(self, word) -> str:
        return " * ".join(f"B:{self.group.word_str(self.generators[i])}" for i in word) or "1"


def closure_explore(group: CoxeterGroup, generators, budget: int = 10000) -> ClosureState:
    """Breadth-first search over classes reachable from R by left
    multiplication with the given B_t, using only the available
    decomposition rules.  Products the rules cannot split are recorded as
    opaque and not expanded further."""
    gens = tuple(generators)
    for t in gens:
        if not group.is_reflection(t):
            raise ValueError(f"{group.word_str(t)} is not a reflection")
    st = ClosureState(group, gens, budget)
    e = group.mask([group.identity])
    st.reached[e] = ()
    layer = [e]
    while layer and not st.exhausted:
        nxt = []
        for A in layer:
            for i, t in enumerate(gens):
                if st.steps >= budget:
                    st.exhausted = True
                    break
                st.steps += 1
                word = (i,) + st.reached[A]
                try:
                    prod = decompose_B(group, t, A)
                except LemmaNotApplicable as exc:
                    st.opaque.append((word, A, t, exc.reason))
                    continue
                for C in prod.support():
                    if C in st.reached:
                        continue
                    st.reached[C] = word
                    if popcount(C) != 1 and not is_stable_set(group, C):
                        st.invalid.append(C)
                    nxt.append(C)
            if st.exhausted:
                break
        st.growth.append((st.steps, len(st.reached), len(st.opaque)))
        layer = nxt
    return st


def closure_report(st: ClosureState) -> Report:
    g = st.group
    rep = Report(f"closure of {', '.join('B_' + g.word_str(t) for t in st.generators)} in {g.desc.name}")
    rep.add("reached classes are singletons or reflection-stable", not st.invalid)
    rep.data.update(st.to_json())
    rep.data["reached_count"] = len(st.reached)
    rep.data["opaque_count"] = len(st.opaque)
    if g.order <= 8 and g.desc.kind == "dihedral":
        X = set(enumerate_X(g))
        rep.data["reached_X"] = sum(1 for A in st.reached if A in X)
    return rep


def default_closure(name: str = "a2"):
    """Generator sets used in the reports: all of T for A2 and B2, and
    {sts, t, u} for A3."""
    if name == "a2":
        g = a2()
        return g, g.reflections
    if name == "b2":
        g = b2()
        return g, g.reflections
    g = a3()
    return g, tuple(g.parse_element(x) for x in ("sts", "t", "u"))
