"""Parser for the ring-element text grammar.

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "(" laurent ")" | integer | "v" ["^" int]
             | "B:" element | "Rw:" element | "R" set
    set     := "{" element ("," element)* "}" | "W"
    element := labels of the group, concatenated or joined by "*"

Examples: ``B:t1 * B:t2``, ``(v + v^-1)*R{e,t1}``, ``Rw:s1*s2 * B:t3``,
``B:tst * B:s * B:t`` (in B2).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .coxeter import CoxeterGroup
from .grotring import Letter
from .laurent import ONE, LaurentPoly


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text = text
        self.pos = pos
        self.msg = msg
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^")


@dataclass(frozen=True)
class SetFactor:
    mask: int


@dataclass
class Term:
    coeff: LaurentPoly
    factors: list  # Letter | SetFactor


class _Parser:
    def __init__(self, group: CoxeterGroup, text: str):
        self.g = group
        self.text = text
        self.pos = 0
        names = dict(group.gen)
        names["e"] = group.identity
        names.update(getattr(group, "aliases", {}))
        self.names = names
        self.label_re = re.compile("|".join(re.escape(n) for n in sorted(names, key=len, reverse=True)))

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(self.text, self.pos if pos is None else pos, msg)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def element(self):
        self.skip()
        start = self.pos
        g = self.g.identity
        m = self.label_re.match(self.text, self.pos)
        if m is None:
            self.error("expected a group element")
        while m is not None:
            g = self.g.multiply(g, self.names[m.group()])
            self.pos = m.end()
            m = self.label_re.match(self.text, self.pos)
            if m is None:
                # a '*' continues the element only if a label follows and is
                # not itself the start of another factor
                save = self.pos
                self.skip()
                if self.text.startswith("*", self.pos):
                    self.pos += 1
                    self.skip()
                    m2 = self.label_re.match(self.text, self.pos)
                    nxt = self.text[m2.end() : m2.end() + 1] if m2 else ""
                    if m2 and nxt not in (":", "{"):
                        m = m2
                        continue
                self.pos = save
        if self.pos == start:
            self.error("expected a group element")
        return g

    def subset(self) -> int:
        if self.peek("W"):
            self.pos += 1
            return self.g.full
        self.expect("{")
        elems = [self.element()]
        while self.peek(","):
            self.pos += 1
            elems.append(self.element())
        self.expect("}")
        return self.g.mask(elems)

    def factor(self):
        self.skip()
        start = self.pos
        if self.peek("("):
            self.pos += 1
            depth, j = 1, self.pos
            while j < len(self.text) and depth:
                depth += {"(": 1, ")": -1}.get(self.text[j], 0)
                j += 1
            if depth:
                self.error("unbalanced parenthesis", start)
            inner = self.text[self.pos : j - 1]
            try:
                c = LaurentPoly.parse(inner)
            except ValueError as exc:
                self.error(f"bad Laurent polynomial ({exc})", self.pos)
            self.pos = j
            return c
        if self.peek("B:"):
            self.pos += 2
            t = self.element()
            if not self.g.is_reflection(t):
                self.error(f"{self.g.word_str(t)} is not a reflection", start)
            return Letter("B", t)
        if self.peek("Rw:"):
            self.pos += 3
            return Letter("R", self.element())
        if self.peek("R{") or self.peek("RW"):
            self.pos += 1
            return SetFactor(self.subset())
        m = re.compile(r"v(?:\^\(?(-?\d+)\)?)?|\d+").match(self.text, self.pos)
        if m:
            self.pos = m.end()
            if m.group().startswith("v"):
                return LaurentPoly.monomial(int(m.group(1)) if m.group(1) else 1)
            return LaurentPoly.const(int(m.group()))
        self.error("expected a factor (B:x, Rw:x, R{...}, v^k, integer or (laurent))")

    def term(self, sign: int) -> Term:
        coeff = ONE * sign
        factors = []
        while True:
            f = self.factor()
            if isinstance(f, LaurentPoly):
                coeff = coeff * f
            else:
                factors.append(f)
            if self.peek("*"):
                self.pos += 1
                continue
            return Term(coeff, factors)

    def expr(self) -> list[Term]:
        sign = 1
        if self.peek("-"):
            self.pos += 1
            sign = -1
        terms = [self.term(sign)]
        while True:
            if self.peek("+"):
                self.pos += 1
                terms.append(self.term(1))
            elif self.peek("-"):
                self.pos += 1
                terms.append(self.term(-1))
            else:
                break
        self.skip()
        if self.pos != len(self.text):
            self.error("unexpected input")
        return terms


def parse_expression(group: CoxeterGroup, text: str) -> list[Term]:
    if not text.strip():
        raise ParseError(text, 0, "empty expression")
    return _Parser(group, text).expr()


def parse_set(group: CoxeterGroup, text: str) -> int:
    p = _Parser(group, text)
    A = p.subset()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected input")
    return A


def evaluate(ring, terms: list[Term]):
    """Evaluate parsed terms in a GrothendieckRing."""
    from .grotring import RingElement, rsum

    out = []
    for term in terms:
        x = ring.unit
        for f in term.factors:
            if isinstance(f, SetFactor):
                y = ring.cls(f.mask)
            elif f.kind == "B":
                y = ring.B(f.elem)
            else:
                y = ring.Rw(f.elem)
            x = ring.product(x, y)
        out.append(x.scale(term.coeff))
    return rsum(out) if out else RingElement()
