"""Finite Coxeter groups used here: dihedral groups I2(m) and S4 (type A3).

Elements are plain hashable values; all group data (multiplication, length,
enumeration order, reduced words) is reached through a ``CoxeterGroup``.
Subsets of W are int bitmasks over the group's fixed enumeration order.

Dihedral I2(m): with ``s = s1`` and ``r = s1*s2`` an element ``s^flip r^k``
is stored as ``Dihedral(k, flip)``.  The enumeration order is
``r^0, ..., r^(m-1), s r^0, ..., s r^(m-1)``.

S4: a permutation of ``(0, 1, 2, 3)`` in one-line notation, with
``(g*h)(i) = g(h(i))``; enumeration is lexicographic.  The simple
generators are ``s = (1 2)``, ``t = (2 3)``, ``u = (3 4)``.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple


class GroupMismatchError(ValueError):
    """Two elements or subsets from different groups were combined."""


class Dihedral(NamedTuple):
    rot: int
    flip: int


Perm = tuple  # one-line notation, values 0..3


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # "dihedral" or "symmetricA3"
    m: int  # dihedral order parameter; 0 for S4
    labels: tuple[str, ...]
    name: str

    def __post_init__(self):
        if self.kind == "dihedral" and self.m < 3:
            raise ValueError("dihedral groups need m >= 3")
        if self.kind not in ("dihedral", "symmetricA3"):
            raise ValueError(f"unknown group kind {self.kind!r}")


class CoxeterGroup:
    """A finite Coxeter group together with its enumeration and word data."""

    def __init__(self, desc: GroupDescriptor):
        self.desc = desc
        if desc.kind == "dihedral":
            m = desc.m
            self.elements = [Dihedral(k, 0) for k in range(m)] + [Dihedral(k, 1) for k in range(m)]
            self.identity = Dihedral(0, 0)
            self.simple = (Dihedral(0, 1), Dihedral(1, 1))
        else:
            self.elements = list(itertools.permutations(range(4)))
            self.identity = (0, 1, 2, 3)
            self.simple = ((1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2))
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.order = len(self.elements)
        self.full = (1 << self.order) - 1
        self.labels = desc.labels
        self.gen = dict(zip(desc.labels, self.simple))
        self._mul = [[self.index[self._raw_mul(a, b)] for b in self.elements] for a in self.elements]
        self._inv = [self.index[self._raw_inv(a)] for a in self.elements]

    # raw group law ----------------------------------------------------------

    def _raw_mul(self, g, h):
        if self.desc.kind == "dihedral":
            m = self.desc.m
            sign = -1 if h.flip else 1
            return Dihedral((sign * g.rot + h.rot) % m, g.flip ^ h.flip)
        return tuple(g[h[i]] for i in range(4))

    def _raw_inv(self, g):
        if self.desc.kind == "dihedral":
            return g if g.flip else Dihedral((-g.rot) % self.desc.m, 0)
        out = [0] * 4
        for i, gi in enumerate(g):
            out[gi] = i
        return tuple(out)

    # public element API -----------------------------------------------------

    def __repr__(self):
        return f"CoxeterGroup({self.desc.name})"

    def __eq__(self, other):
        return isinstance(other, CoxeterGroup) and other.desc == self.desc

    def __hash__(self):
        return hash(self.desc)

    def _idx(self, g) -> int:
        try:
            return self.index[g]
        except (KeyError, TypeError):
            raise GroupMismatchError(f"{g!r} is not an element of {self.desc.name}") from None

    def multiply(self, *gs):
        """Product of the given elements, left to right."""
        i = self.index[self.identity]
        for g in gs:
            i = self._mul[i][self._idx(g)]
        return self.elements[i]

    def inverse(self, g):
        return self.elements[self._inv[self._idx(g)]]

    def conjugate(self, w, t):
        """w t w^-1."""
        return self.multiply(w, t, self.inverse(w))

    def element_order(self, g) -> int:
        k, h = 1, g
        while h != self.identity:
            h = self.multiply(h, g)
            k += 1
        return k

    def length(self, g) -> int:
        """Coxeter length (closed form; checked against BFS in the tests)."""
        self._idx(g)
        if self.desc.kind == "dihedral":
            m = self.desc.m
            if not g.flip:
                return 2 * min(g.rot, m - g.rot)
            if g.rot == 0:
                return 1
            return min(2 * g.rot - 1, 2 * (m - g.rot) + 1)
        return sum(1 for i in range(4) for j in range(i + 1, 4) if g[i] > g[j])

    def is_reflection(self, g) -> bool:
        return g != self.identity and self.length(g) % 2 == 1 and self.element_order(g) == 2

    @cached_property
    def reflections(self) -> tuple:
        """All reflections, in enumeration order."""
        return tuple(g for g in self.elements if self.is_reflection(g))

    @cached_property
    def longest(self):
        return max(self.elements, key=self.length)

    # words --------------------------------------------------------------------

    @cached_property
    def _reduced_words(self) -> dict:
        # BFS with generators tried in label order gives the lexicographically
        # first reduced word for every element.
        words = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for lab, s in zip(self.labels, self.simple):
                h = self.multiply(g, s)
                if h not in words:
                    words[h] = words[g] + (lab,)
                    queue.append(h)
        return words

    def reduced_word(self, g) -> tuple[str, ...]:
        return self._reduced_words[g]

    def word_str(self, g) -> str:
        w = self.reduced_word(g)
        return "*".join(w) if w else "e"

    def from_word(self, labels: Iterable[str]):
        return self.multiply(self.identity, *(self.gen[lab] for lab in labels))

    def parse_element(self, text: str):
        """Parse a word such as ``s1*s2``, ``tst``, ``t1t2`` or ``e``.

        Labels may be concatenated or separated by ``*``; longest labels are
        matched first.  Groups built by ``a2()`` also know ``t1, t2, t3``.
        """
        aliases = dict(self.gen)
        aliases["e"] = self.identity
        aliases.update(getattr(self, "aliases", {}))
        names = sorted(aliases, key=len, reverse=True)
        pat = re.compile("|".join(re.escape(n) for n in names))
        s = text.replace("*", "").replace(" ", "")
        if not s:
            raise ValueError("empty group element")
        pos, g = 0, self.identity
        while pos < len(s):
            m = pat.match(s, pos)
            if m is None:
                raise ValueError(f"unknown generator at position {pos} in {text!r}")
            g = self.multiply(g, aliases[m.group()])
            pos = m.end()
        return g

    # subsets ------------------------------------------------------------------

    def mask(self, elems: Iterable) -> int:
        out = 0
        for g in elems:
            out |= 1 << self._idx(g)
        return out

    def members(self, mask: int) -> list:
        return [g for i, g in enumerate(self.elements) if mask >> i & 1]

    def complement(self, mask: int) -> int:
        return self.full & ~mask

    def act_left(self, g, mask: int) -> int:
        gi = self._idx(g)
        row = self._mul[gi]
        out = 0
        for i in _bits(mask):
            out |= 1 << row[i]
        return out

    def act_right(self, mask: int, g) -> int:
        gi = self._idx(g)
        out = 0
        for i in _bits(mask):
            out |= 1 << self._mul[i][gi]
        return out

    def invert_set(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << self._inv[i]
        return out

    def set_str(self, mask: int) -> str:
        return "{" + ",".join(self.word_str(g) for g in self.members(mask)) + "}"


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def dihedral(m: int, labels=("s1", "s2"), name: str | None = None) -> CoxeterGroup:
    return CoxeterGroup(GroupDescriptor("dihedral", m, tuple(labels), name or f"I2({m})"))


@lru_cache(maxsize=None)
def a2() -> CoxeterGroup:
    """Type A2 with reflections named t1 = s1, t2 = s1 s2 s1, t3 = s2."""
    g = dihedral(3, name="A2")
    s1, s2 = g.simple
    g.aliases = {"t1": s1, "t2": g.multiply(s1, s2, s1), "t3": s2}
    g.named_reflections = (g.aliases["t1"], g.aliases["t2"], g.aliases["t3"])
    return g


@lru_cache(maxsize=None)
def b2() -> CoxeterGroup:
    return dihedral(4, labels=("s", "t"), name="B2")


@lru_cache(maxsize=None)
def a3() -> CoxeterGroup:
    return CoxeterGroup(GroupDescriptor("symmetricA3", 0, ("s", "t", "u"), "A3"))


def group_from_name(name: str) -> CoxeterGroup:
    """``a2``, ``b2``, ``a3`` or ``i2:<m>``."""
    key = name.strip().lower()
    if key == "a2":
        return a2()
    if key == "b2":
        return b2()
    if key == "a3":
        return a3()
    m = re.fullmatch(r"i2:(\d+)", key)
    if m:
        return dihedral(int(m.group(1)))
    raise ValueError(f"unknown group {name!r} (expected a2, b2, a3 or i2:<m>)")
