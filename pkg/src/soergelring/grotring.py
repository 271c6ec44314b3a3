"""Split Grothendieck rings of the reflection-generated bimodule categories.

Classes ``[R(A)]`` are indexed by subsets ``A`` of W (bitmasks).  The ring
acts on itself through two primitives:

* ``[R_w][R(A)] = [R(wA)]`` and ``[R(A)][R_w] = [R(Aw)]``;
* ``[B_t][R(A)]`` which is ``(v + v^-1)[R(A)]`` when ``tA = A`` and
  ``v[R(A u tA)] + v^-1[R(A n tA)]`` otherwise, provided the decomposition
  applies (see ``lemma_applicable``).  ``R(empty) = 0``.

Grading convention: ``[M(1)] = v[M]`` and ``[B_t] = v[R({e, t})]``.

A full product is obtained by writing the left factor as a Laurent
combination of generator words (``generator_expansion``) and letting the
words act on the right factor.  Right multiplication by ``B_t`` goes through
the anti-involution ``[R(A)] -> [R(A^-1)]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .coxeter import CoxeterGroup, a2, popcount
from .laurent import ONE, QUANTUM_TWO, V, VINV, ZERO, LaurentPoly, format_combination
from .report import Report

PLAIN = "plain"
EXTENDED = "extended"


class LemmaNotApplicable(ValueError):
    """The decomposition of ``B_t R(A)`` is not covered by the known lemmas."""

    def __init__(self, subset: int, t, reason: str):
        super().__init__(f"cannot decompose B_t R(A) for A={subset:#x}, t={t}: {reason}")
        self.subset = subset
        self.t = t
        self.reason = reason


class InvalidClass(ValueError):
    pass


# ---------------------------------------------------------------------------
# ring elements


class RingElement:
    """Finite Z[v, v^-1]-combination of classes [R(A)], keyed by bitmask."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, LaurentPoly] | None = None):
        clean = {}
        if terms:
            for A, c in terms.items():
                if A == 0:
                    continue  # R(empty) = 0
                c = LaurentPoly.coerce(c)
                if c:
                    clean[A] = c
        self._terms = clean

    @classmethod
    def basis(cls, A: int, coeff=ONE) -> "RingElement":
        return cls({A: coeff})

    def terms(self) -> dict[int, LaurentPoly]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: basis_key(kv[0]))

    def support(self) -> list[int]:
        return [A for A, _ in self.items()]

    def coeff(self, A: int) -> LaurentPoly:
        return self._terms.get(A, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __add__(self, other: "RingElement") -> "RingElement":
        out = dict(self._terms)
        for A, c in other._terms.items():
            out[A] = out[A] + c if A in out else c
        return RingElement(out)

    def __neg__(self):
        return RingElement({A: -c for A, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RingElement":
        c = LaurentPoly.coerce(c)
        if not c:
            return RingElement()
        return RingElement({A: c * x for A, x in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def map_sets(self, f) -> "RingElement":
        out: dict[int, LaurentPoly] = {}
        for A, c in self._terms.items():
            B = f(A)
            out[B] = out[B] + c if B in out else c
        return RingElement(out)

    def map_coeffs(self, f) -> "RingElement":
        return RingElement({A: f(c) for A, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"RingElement({self._terms!r})"

    def is_positive(self) -> bool:
        return all(c.is_nonnegative() for c in self._terms.values())


def basis_key(A: int):
    """Table order: by cardinality, then bitmask value."""
    return (popcount(A), A)


def rsum(elements: Iterable[RingElement]) -> RingElement:
    out: dict[int, LaurentPoly] = {}
    for x in elements:
        for A, c in x._terms.items():
            out[A] = out[A] + c if A in out else c
    return RingElement(out)


# ---------------------------------------------------------------------------
# set-level combinatorics (any supported group)


def stabilizing_reflections(group: CoxeterGroup, A: int) -> list:
    return [t for t in group.reflections if group.act_left(t, A) == A]


def is_stable_set(group: CoxeterGroup, A: int) -> bool:
    return A != 0 and any(group.act_left(t, A) == A for t in group.reflections)


def enumerate_X(group: CoxeterGroup) -> list[int]:
    """Nonempty subsets stabilised (from the left) by some reflection.

    A t-stable set is a union of cosets {x, tx}; we enumerate those unions
    per reflection instead of all 2^|W| subsets.
    """
    found: set[int] = set()
    for t in group.reflections:
        cosets = []
        seen = 0
        for i, g in enumerate(group.elements):
            if seen >> i & 1:
                continue
            c = group.mask([g, group.multiply(t, g)])
            seen |= c
            cosets.append(c)
        for r in range(1, len(cosets) + 1):
            for combo in itertools.combinations(cosets, r):
                A = 0
                for c in combo:
                    A |= c
                found.add(A)
    return sorted(found, key=basis_key)


def lemma_applicable(group: CoxeterGroup, t, A: int) -> str | None:
    """None if ``B_t R(A)`` decomposes by the known rules, else the reason.

    Singletons are covered by the twist rule.  Otherwise A must be stable
    under some reflection and, when ``tA != A``, the difference
    ``A \\ tA`` must be a pair ``{x, t'x}`` for a reflection ``t' != t``.
    """
    tA = group.act_left(t, A)
    if tA == A or popcount(A) == 1:
        return None
    if not is_stable_set(group, A):
        return "A is neither a singleton nor stable under a reflection"
    diff = A & ~tA
    if popcount(diff) != 2:
        return f"|A \\ tA| = {popcount(diff)} != 2"
    x, y = group.members(diff)
    tp = group.multiply(y, group.inverse(x))
    if not group.is_reflection(tp):
        return "A \\ tA is not stable under any reflection"
    return None


def decompose_B(group: CoxeterGroup, t, A: int) -> RingElement:
    """``[B_t][R(A)]`` for a single class; raises LemmaNotApplicable."""
    tA = group.act_left(t, A)
    if tA == A:
        return RingElement({A: QUANTUM_TWO})
    reason = lemma_applicable(group, t, A)
    if reason is not None:
        raise LemmaNotApplicable(A, t, reason)
    return RingElement({A | tA: V, A & tA: VINV})


def lmul_B_any(group: CoxeterGroup, t, x: RingElement) -> RingElement:
    """Left action of [B_t] without any basis validation."""
    if not group.is_reflection(t):
        raise ValueError(f"{group.word_str(t)} is not a reflection")
    return rsum(decompose_B(group, t, A).scale(c) for A, c in x._terms.items())


# ---------------------------------------------------------------------------
# generator words


@dataclass(frozen=True)
class Letter:
    kind: str  # "B" or "R"
    elem: object

    def label(self, group: CoxeterGroup) -> str:
        if self.kind == "B":
            return f"B:{_elem_name(group, self.elem)}"
        return f"Rw:{group.word_str(self.elem)}"


def _elem_name(group: CoxeterGroup, g) -> str:
    named = getattr(group, "named_reflections", None)
    if named and g in named:
        return f"t{named.index(g) + 1}"
    return group.word_str(g)


@dataclass
class GeneratorWordExpr:
    """Laurent combination of words in the letters B_t and R_w."""

    group: CoxeterGroup
    terms: dict[tuple, LaurentPoly] = field(default_factory=dict)

    def prepend(self, letter: Letter) -> "GeneratorWordExpr":
        return GeneratorWordExpr(self.group, {(letter,) + w: c for w, c in self.terms.items()})

    def combine(self, other: "GeneratorWordExpr", a: LaurentPoly, b: LaurentPoly) -> "GeneratorWordExpr":
        out: dict[tuple, LaurentPoly] = {}
        for w, c in self.terms.items():
            out[w] = out.get(w, ZERO) + a * c
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + b * c
        return GeneratorWordExpr(self.group, {w: c for w, c in out.items() if c})

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), str(kv[0])))
        return format_combination(
            (c, "*".join(l.label(self.group) for l in w) or "1") for w, c in items
        )


# ---------------------------------------------------------------------------
# the ring


class GrothendieckRing:
    """⟨C⟩ (variant ``plain``, rank 20) or ⟨C^ext⟩ (``extended``, rank 25) in type A2."""

    def __init__(self, variant: str = PLAIN, group: CoxeterGroup | None = None):
        if variant not in (PLAIN, EXTENDED):
            raise ValueError(f"unknown variant {variant!r}")
        self.group = group or a2()
        self.variant = variant
        g = self.group
        self.X = enumerate_X(g)
        extra = [g.mask([g.identity])] if variant == PLAIN else [g.mask([w]) for w in g.elements]
        self.basis = sorted(set(self.X) | set(extra), key=basis_key)
        self.basis_index = {A: i for i, A in enumerate(self.basis)}
        self.e_mask = g.mask([g.identity])
        self.unit = RingElement.basis(self.e_mask)

    def __repr__(self):
        return f"GrothendieckRing({self.variant}, {self.group.desc.name})"

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def reflections(self) -> tuple:
        named = getattr(self.group, "named_reflections", None)
        return tuple(named) if named else self.group.reflections

    # constructors -------------------------------------------------------------

    def cls(self, A) -> RingElement:
        """[R(A)] for a bitmask or an iterable of group elements."""
        if not isinstance(A, int):
            A = self.group.mask(A)
        self.check_class(A)
        return RingElement.basis(A)

    def B(self, t) -> RingElement:
        """[B_t] = v[R({e, t})]."""
        if not self.group.is_reflection(t):
            raise ValueError(f"{self.group.word_str(t)} is not a reflection")
        return RingElement.basis(self.group.mask([self.group.identity, t]), V)

    def Rw(self, w) -> RingElement:
        return self.cls([w])

    def is_valid_class(self, A: int) -> bool:
        return A in self.basis_index

    def check_class(self, A: int):
        if A not in self.basis_index:
            raise InvalidClass(f"{self.group.set_str(A)} is not a basis class of the {self.variant} ring")

    def check(self, x: RingElement) -> RingElement:
        for A in x._terms:
            self.check_class(A)
        return x

    def stabilizing_reflections(self, A: int) -> list:
        return stabilizing_reflections(self.group, A)

    # primitives ---------------------------------------------------------------

    def lmul_B(self, t, x: RingElement) -> RingElement:
        return self.check(lmul_B_any(self.group, t, x))

    def lmul_R(self, w, x: RingElement) -> RingElement:
        g = self.group
        return self.check(x.map_sets(lambda A: g.act_left(w, A)))

    def rmul_R(self, x: RingElement, w) -> RingElement:
        g = self.group
        return self.check(x.map_sets(lambda A: g.act_right(A, w)))

    def transpose(self, x: RingElement) -> RingElement:
        return self.check(x.map_sets(self.group.invert_set))

    def rmul_B(self, x: RingElement, t) -> RingElement:
        return self.transpose(self.lmul_B(t, self.transpose(x)))

    def apply_letter(self, letter: Letter, x: RingElement) -> RingElement:
        if letter.kind == "B":
            return self.lmul_B(letter.elem, x)
        return self.lmul_R(letter.elem, x)

    def apply_word(self, word: Iterable[Letter], x: RingElement | None = None) -> RingElement:
        """Evaluate ``w_1 w_2 ... w_k * x`` (x defaults to the unit)."""
        x = self.unit if x is None else x
        for letter in reversed(tuple(word)):
            x = self.apply_letter(letter, x)
        return x

    def evaluate(self, expr: GeneratorWordExpr, x: RingElement | None = None) -> RingElement:
        return rsum(self.apply_word(w, x).scale(c) for w, c in expr.terms.items())

    # generator expansion ------------------------------------------------------

    @cached_property
    def generator_expansion(self) -> dict[int, GeneratorWordExpr]:
        """Express every basis class through generator words.

        Seeds: the unit (empty word) and, in the extended ring, each R_w.
        Each relation [B_t][R(A)] = v[R(A u tA)] + v^-1[R(A n tA)] with one
        side unknown is solved for it; the coefficients are units, so the
        back-substitution stays inside Z[v, v^-1].
        """
        g = self.group
        expr: dict[int, GeneratorWordExpr] = {self.e_mask: GeneratorWordExpr(g, {(): ONE})}
        if self.variant == EXTENDED:
            for w in g.elements:
                if w != g.identity:
                    expr[g.mask([w])] = GeneratorWordExpr(g, {(Letter("R", w),): ONE})
        empty = GeneratorWordExpr(g)
        changed = True
        while changed:
            changed = False
            for A in sorted(expr, key=basis_key):
                for t in self.reflections:
                    tA = g.act_left(t, A)
                    if tA == A:
                        continue
                    U, I = A | tA, A & tA
                    known_U, known_I = U in expr, (I == 0 or I in expr)
                    if known_U and known_I:
                        continue
                    prod = self.lmul_B(t, RingElement.basis(A))
                    assert prod == RingElement({U: V, I: VINV})
                    bt_e = expr[A].prepend(Letter("B", t))
                    if not known_U and known_I:
                        # R(U) = v^-1 B_t R(A) - v^-2 R(I)
                        expr[U] = bt_e.combine(expr.get(I, empty), VINV, -(VINV * VINV))
                        changed = True
                    elif known_U and not known_I:
                        # R(I) = v B_t R(A) - v^2 R(U)
                        expr[I] = bt_e.combine(expr[U], V, -(V * V))
                        changed = True
        missing = [A for A in self.basis if A not in expr]
        if missing:
            raise RuntimeError(
                "generator expansion stalled; unexpressed classes: "
                + ", ".join(g.set_str(A) for A in missing)
            )
        return {A: expr[A] for A in self.basis}

    # products -----------------------------------------------------------------

    def product(self, x: RingElement, y: RingElement) -> RingElement:
        self.check(x)
        self.check(y)
        if x.is_zero() or y.is_zero():
            return RingElement()
        exp = self.generator_expansion
        return rsum(self.evaluate(exp[A], y).scale(c) for A, c in x._terms.items())

    def mul(self, *xs: RingElement) -> RingElement:
        out = self.unit
        for x in xs:
            out = self.product(out, x)
        return out

    @cached_property
    def table(self) -> list[list[RingElement]]:
        """table[i][j] = [R(A_i)][R(A_j)] in basis order."""
        return [[self.product(RingElement.basis(A), RingElement.basis(B)) for B in self.basis] for A in self.basis]

    def structure_constants(self) -> list[list[list[LaurentPoly]]]:
        n = self.rank
        out = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for C, c in self.table[i][j]._terms.items():
                    out[i][j][self.basis_index[C]] = c
        return out

    def fast_product(self, x: RingElement, y: RingElement) -> RingElement:
        """Product through the cached structure constants."""
        idx = self.basis_index
        parts = []
        for A, a in x._terms.items():
            row = self.table[idx[A]]
            for B, b in y._terms.items():
                parts.append(row[idx[B]].scale(a * b))
        return rsum(parts)

    # relations ----------------------------------------------------------------

    def verify_relations(self) -> Report:
        """Relations (1)-(4) of the presentation on C_i = [B_{t_i}], and the
        twisting identities when the ring is extended."""
        g = self.group
        rep = Report(f"relations in the {self.variant} ring")
        C = [self.B(t) for t in self.reflections]
        mul = self.mul
        idx = range(len(C))
        for i in idx:
            rep.add(f"(1) C{i+1}^2 = (v+v^-1)C{i+1}", mul(C[i], C[i]) == C[i].scale(QUANTUM_TWO))
        for i, j in itertools.permutations(idx, 2):
            lhs = mul(C[i], C[j], C[i]) + C[j]
            rhs = C[i] + mul(C[j], C[i], C[j])
            rep.add(f"(2) C{i+1}C{j+1}C{i+1} + C{j+1} = C{i+1} + C{j+1}C{i+1}C{j+1}", lhs == rhs)
        if len(C) == 3:
            for i, j, k in itertools.permutations(idx, 3):
                rep.add(f"(3) C{i+1}C{j+1}C{i+1} = C{i+1}C{k+1}C{i+1}", mul(C[i], C[j], C[i]) == mul(C[i], C[k], C[i]))
                rep.add(
                    f"(4) C{i+1}C{j+1}C{k+1}C{i+1} = C{i+1}C{k+1}C{j+1}C{i+1}",
                    mul(C[i], C[j], C[k], C[i]) == mul(C[i], C[k], C[j], C[i]),
                )
        # conjugation symmetry B_s B_t1 ... B_tk B_s = B_s B_{s t1 s} ... B_{s tk s} B_s, k <= 2
        for s in self.reflections:
            for k in (1, 2):
                for ts in itertools.product(self.reflections, repeat=k):
                    lhs = mul(self.B(s), *[self.B(t) for t in ts], self.B(s))
                    rhs = mul(self.B(s), *[self.B(g.conjugate(s, t)) for t in ts], self.B(s))
                    names = ",".join(_elem_name(g, t) for t in ts)
                    rep.add(f"(sandwich) s={_elem_name(g, s)} t=({names})", lhs == rhs)
        if self.variant == EXTENDED:
            for t in self.reflections:
                bt, rt = self.B(t), self.Rw(t)
                name = _elem_name(g, t)
                rep.add(f"(absorb) B_{name} R_{name} = B_{name}", mul(bt, rt) == bt)
                rep.add(f"(absorb) R_{name} B_{name} = B_{name}", mul(rt, bt) == bt)
            for w in g.elements:
                rw = self.Rw(w)
                for t in self.reflections:
                    lhs = mul(rw, self.B(t))
                    rhs = mul(self.B(g.conjugate(w, t)), rw)
                    rep.add(f"(twist-past) R_{g.word_str(w)} B_{_elem_name(g, t)} = B_wtw^-1 R_w", lhs == rhs)
            for w in g.elements:
                for A in self.basis:
                    ok = (
                        self.product(self.Rw(w), RingElement.basis(A)) == RingElement.basis(g.act_left(w, A))
                        and self.product(RingElement.basis(A), self.Rw(w)) == RingElement.basis(g.act_right(A, w))
                    )
                    if not ok:
                        rep.add(f"(twist-set) w={g.word_str(w)} A={g.set_str(A)}", False)
            rep.add("(twist-set) R_w R(A) = R(wA), R(A) R_w = R(Aw) for all w, A", all(c.ok for c in rep.checks if c.name.startswith("(twist-set)")))
        return rep

    # formatting ---------------------------------------------------------------

    def format_element(self, x: RingElement) -> str:
        return format_combination((c, "R" + self.group.set_str(A)) for A, c in x.items())

    def element_json(self, x: RingElement) -> list[dict]:
        g = self.group
        return [{"set": [g.word_str(m) for m in g.members(A)], "coeff": c.to_json()} for A, c in x.items()]
