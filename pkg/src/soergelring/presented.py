"""The algebra given by generators C1, C2, C3 and the relations

1. C_i^2 = (v + v^-1) C_i
2. C_i C_j C_i + C_j = C_i + C_j C_i C_j          (i != j)
3. C_i C_j C_i = C_i C_k C_i                      ({i, j, k} = {1, 2, 3})
4. C_i C_j C_k C_i = C_i C_k C_j C_i              ({i, j, k} = {1, 2, 3})

Relations 1-2 alone are the Kazhdan-Lusztig presentation of the affine
Hecke algebra of type A2~, so this algebra is a quotient of it.

``normalize`` rewrites any word into the 20 canonical monomials by a
length-decreasing case analysis; ``phi`` sends C_i to [B_{t_i}] in the
Grothendieck ring and ``verify_iso`` checks the two algebras agree.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping

from .grotring import PLAIN, GrothendieckRing, Report, RingElement, rsum
from .laurent import ONE, QUANTUM_TWO, ZERO, LaurentPoly, format_combination
from .linalg import det

Word = tuple  # letters in {1, 2, 3}

CANONICAL: tuple[Word, ...] = (
    (),
    (1,), (2,), (3,),
    (1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1),
    (1, 2, 1),
    (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1),
    (1, 2, 3, 1), (2, 1, 3, 2), (3, 1, 2, 3),
)
_CANON_SET = frozenset(CANONICAL)


def word_str(w: Word) -> str:
    return "*".join(f"C{i}" for i in w) or "1"


def parse_word(text: str) -> Word:
    """``"C1*C2*C1"`` (or ``"C1C2C1"``, ``"1"`` for the empty word)."""
    s = text.replace(" ", "").replace("*", "")
    if s in ("", "1"):
        return ()
    out = []
    pos = 0
    while pos < len(s):
        if s[pos] in "Cc" and pos + 1 < len(s) and s[pos + 1] in "123":
            out.append(int(s[pos + 1]))
            pos += 2
        else:
            raise ValueError(f"bad generator at position {pos} in {text!r}; expected C1, C2 or C3")
    return tuple(out)


class AlgebraElement:
    """Z[v, v^-1]-combination of words in C1, C2, C3."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, LaurentPoly] | None = None):
        self._terms = {}
        for w, c in (terms or {}).items():
            c = LaurentPoly.coerce(c)
            if c:
                self._terms[tuple(w)] = c

    @classmethod
    def word(cls, w: Iterable[int], c=ONE) -> "AlgebraElement":
        return cls({tuple(w): c})

    def items(self):
        order = {w: i for i, w in enumerate(CANONICAL)}
        return sorted(self._terms.items(), key=lambda kv: (order.get(kv[0], len(order)), len(kv[0]), kv[0]))

    def terms(self) -> dict[Word, LaurentPoly]:
        return dict(self._terms)

    def coeff(self, w: Word) -> LaurentPoly:
        return self._terms.get(tuple(w), ZERO)

    def is_canonical(self) -> bool:
        return all(w in _CANON_SET for w in self._terms)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, ZERO) + c
        return AlgebraElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        c = LaurentPoly.coerce(c)
        return AlgebraElement({w: c * x for w, x in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        return format_combination((c, word_str(w)) for w, c in self.items())

    def __repr__(self):
        return f"AlgebraElement({str(self)!r})"


# ---------------------------------------------------------------------------
# normal form


def _lin(*pairs) -> dict[Word, LaurentPoly]:
    """Normalize and sum ``coeff * word`` pairs."""
    out: dict[Word, LaurentPoly] = {}
    for c, w in pairs:
        c = LaurentPoly.coerce(c)
        for u, d in _nf(tuple(w)).items():
            out[u] = out.get(u, ZERO) + c * d
    return {u: d for u, d in out.items() if d}


def _rel2(i: int, j: int):
    """C_i C_j C_i = C_j C_i C_j + C_i - C_j."""
    return [(ONE, (j, i, j)), (ONE, (i,)), (-ONE, (j,))]


def _palindrome(i: int, j: int):
    # Orientation: move toward C1 C2 C1 (rel. 3 swaps the middle letter,
    # rel. 2 trades C_i C_j C_i for C_j C_i C_j).
    if i == 1:  # j == 3
        return [(ONE, (1, 2, 1))]
    if i == 2:
        return _rel2(2, 1) if j == 1 else [(ONE, (2, 1, 2))]
    return _rel2(3, 1) if j == 1 else [(ONE, (3, 1, 3))]


def _len4(w: Word):
    i, j, k, l = w
    if i == l:
        return [(ONE, (i, k, j, i))]  # relation 4
    if i == k and j == l:
        # C_i C_j C_i C_j = (C_j C_i C_j + C_i - C_j) C_j
        return [(c, u + (j,)) for c, u in _rel2(i, j)]
    if i == k:
        return [(ONE, (i, l, i, l))]  # relation 3 on the prefix
    if j == l:
        return [(ONE, (i, j, i, j))]  # relation 3 on the suffix
    raise AssertionError(f"unexpected length-4 word {w}")


def _len5(w: Word):
    i, j, k, l, m = w
    if i != l:
        return [(c, u + (m,)) for u, c in _nf(w[:4]).items()]
    # prefix C_i C_j C_k C_i with i, j, k distinct, and m != i
    if m == k:
        return [(ONE, (i, j, k, j, k))]  # relation 3 on C_k C_i C_k
    # m == j: relation 4, then relation 3 on C_j C_i C_j
    return [(ONE, (i, k, j, k, j))]


@lru_cache(maxsize=None)
def _nf_cached(w: Word) -> tuple:
    return tuple(_nf_uncached(w).items())


def _nf(w: Word) -> dict[Word, LaurentPoly]:
    return dict(_nf_cached(w))


def _nf_uncached(w: Word) -> dict[Word, LaurentPoly]:
    if w in _CANON_SET:
        return {w: ONE}
    for p in range(len(w) - 1):
        if w[p] == w[p + 1]:
            return _lin((QUANTUM_TWO, w[:p] + w[p + 1 :]))
    n = len(w)
    if n == 3:
        i, j, k = w
        assert i == k
        return _lin(*_palindrome(i, j))
    if n == 4:
        return _lin(*_len4(w))
    if n == 5:
        return _lin(*_len5(w))
    head = _nf(w[:5])
    assert all(len(u) <= 4 for u in head)
    return _lin(*((c, u + w[5:]) for u, c in head.items()))


def normalize(w) -> AlgebraElement:
    """Canonical expansion of a word (tuple of 1/2/3) or of an AlgebraElement."""
    if isinstance(w, AlgebraElement):
        out = AlgebraElement()
        for u, c in w._terms.items():
            out = out + AlgebraElement(_nf(u)).scale(c)
        return out
    w = tuple(w)
    if any(i not in (1, 2, 3) for i in w):
        raise ValueError(f"letters must be 1, 2 or 3: {w}")
    return AlgebraElement(_nf(w))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    out: dict[Word, LaurentPoly] = {}
    for u, c in a._terms.items():
        for w, d in b._terms.items():
            for x, e in _nf(u + w).items():
                out[x] = out.get(x, ZERO) + c * d * e
    return AlgebraElement(out)


# ---------------------------------------------------------------------------
# comparison with the Grothendieck ring


class Presentation:
    """Links the presented algebra with the plain Grothendieck ring."""

    def __init__(self, ring: GrothendieckRing | None = None):
        self.ring = ring or GrothendieckRing(PLAIN)
        self.t = self.ring.reflections  # C_i <-> B_{t_i}
        self._phi_words: dict[Word, RingElement] = {}
        self._direct: dict[Word, RingElement] = {(): self.ring.unit}

    def phi_word(self, w: Word) -> RingElement:
        """Image of a word, as a product in the ring (via generator expansion)."""
        if w not in self._phi_words:
            R = self.ring
            self._phi_words[w] = R.mul(*(R.B(self.t[i - 1]) for i in w))
        return self._phi_words[w]

    def phi(self, a: AlgebraElement) -> RingElement:
        return rsum(self.phi_word(w).scale(c) for w, c in a._terms.items())

    def direct(self, w: Word) -> RingElement:
        """Image of a word by repeated left action of [B_t] on the unit."""
        w = tuple(w)
        if w not in self._direct:
            inner = self.direct(w[1:])
            self._direct[w] = self.ring.lmul_B(self.t[w[0] - 1], inner)
        return self._direct[w]

    def change_of_basis(self) -> list[list[LaurentPoly]]:
        """M[i][j] = coefficient of the i-th basis class in phi(CANONICAL[j])."""
        R = self.ring
        cols = [self.phi_word(w) for w in CANONICAL]
        return [[col.coeff(A) for col in cols] for A in R.basis]

    def determinant(self) -> LaurentPoly:
        return det(self.change_of_basis(), ZERO, ONE, LaurentPoly.divexact)

    def verify_iso(self, max_len: int = 8) -> Report:
        rep = Report("presentation vs Grothendieck ring")
        M = self.change_of_basis()
        rep.add("matrix is 20x20", len(M) == 20 and all(len(r) == 20 for r in M), f"{len(M)}x{len(M[0])}")
        d = self.determinant()
        unit = d.is_unit_monomial()
        rep.data["determinant"] = str(d)
        rep.add("determinant is a unit +-v^k", unit is not None, f"det = {d}")
        checked = 0
        witness = None
        for n in range(max_len + 1):
            for w in itertools.product((1, 2, 3), repeat=n):
                lhs = self.phi(normalize(w))
                if lhs != self.direct(w):
                    witness = word_str(w)
                    break
                checked += 1
            if witness:
                break
        rep.data["words_checked"] = checked
        rep.add(
            f"phi(normalize(w)) = direct image for all words of length <= {max_len}",
            witness is None,
            f"{checked} words" if witness is None else f"counterexample {witness}",
        )
        return rep
