"""Ungraded standard characters: the map to the group ring Z[W].

``B_t`` has a standard filtration with subquotients R and R_t (up to
shift), and R_x R_y = R_xy, so forgetting shifts gives

    B_t -> d_e + d_t,    R_w -> d_w,    [R(A)] -> sum_{x in A} d_x.

Only the v = 1 specialisation is provided: a graded version with d_t
carrying a shift is not compatible with [R_t][B_t] = [B_t].
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .coxeter import CoxeterGroup
from .grotring import Letter, RingElement


class UngradedCharacter:
    __slots__ = ("group", "_c")

    def __init__(self, group: CoxeterGroup, coeffs: Mapping | None = None):
        self.group = group
        self._c = {g: int(c) for g, c in (coeffs or {}).items() if c}

    @classmethod
    def delta(cls, group: CoxeterGroup, g) -> "UngradedCharacter":
        return cls(group, {g: 1})

    def __getitem__(self, g) -> int:
        return self._c.get(g, 0)

    def items(self):
        return sorted(self._c.items(), key=lambda kv: self.group.index[kv[0]])

    def support(self) -> set:
        return set(self._c)

    def support_mask(self) -> int:
        return self.group.mask(self._c)

    def mass(self) -> int:
        return sum(self._c.values())

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._c.values())

    def __add__(self, other: "UngradedCharacter") -> "UngradedCharacter":
        _same(self, other)
        out = dict(self._c)
        for g, c in other._c.items():
            out[g] = out.get(g, 0) + c
        return UngradedCharacter(self.group, out)

    def __mul__(self, other: "UngradedCharacter") -> "UngradedCharacter":
        return convolve(self, other)

    def __eq__(self, other):
        return isinstance(other, UngradedCharacter) and self.group == other.group and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{c}*{self.group.word_str(g)}" for g, c in self.items())

    def __repr__(self):
        return f"UngradedCharacter({self})"

    def to_json(self) -> dict[str, int]:
        return {self.group.word_str(g): c for g, c in self.items()}


def _same(a: UngradedCharacter, b: UngradedCharacter):
    if a.group != b.group:
        raise ValueError("characters belong to different groups")


def convolve(a: UngradedCharacter, b: UngradedCharacter) -> UngradedCharacter:
    _same(a, b)
    g = a.group
    out: dict = {}
    for x, cx in a._c.items():
        for y, cy in b._c.items():
            z = g.multiply(x, y)
            out[z] = out.get(z, 0) + cx * cy
    return UngradedCharacter(g, out)


def uch_of_generator(group: CoxeterGroup, letter: Letter) -> UngradedCharacter:
    if letter.kind == "B":
        if not group.is_reflection(letter.elem):
            raise ValueError(f"{group.word_str(letter.elem)} is not a reflection")
        return UngradedCharacter(group, {group.identity: 1, letter.elem: 1})
    return UngradedCharacter.delta(group, letter.elem)


def uch_of_word(group: CoxeterGroup, word: Iterable[Letter]) -> UngradedCharacter:
    out = UngradedCharacter.delta(group, group.identity)
    for letter in word:
        out = convolve(out, uch_of_generator(group, letter))
    return out


def uch_of_class(group: CoxeterGroup, x: RingElement) -> UngradedCharacter:
    out: dict = {}
    for A, c in x.terms().items():
        c1 = c.eval_at_one()
        for g in group.members(A):
            out[g] = out.get(g, 0) + c1
    return UngradedCharacter(group, out)


def B(group: CoxeterGroup, name: str) -> Letter:
    return Letter("B", group.parse_element(name))


def Rw(group: CoxeterGroup, name: str) -> Letter:
    return Letter("R", group.parse_element(name))
