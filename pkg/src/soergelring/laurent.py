"""Exact arithmetic in Z[v, v^-1].

Elements are immutable and hashable.  Coefficients are Python ints, so
nothing ever overflows.  The text form lists terms with descending
exponents, e.g. ``v^2 + 2 + v^-2`` or ``-3*v^-1``.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[int(k)] = int(c)
        self._terms = clean
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # inspection -----------------------------------------------------------

    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in descending exponent order."""
        return sorted(self._terms.items(), reverse=True)

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def coefficients(self) -> list[int]:
        return [c for _, c in self.items()]

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def is_unit_monomial(self) -> tuple[int, int] | None:
        """Return ``(sign, k)`` if self equals ``sign * v^k``, else None."""
        if len(self._terms) != 1:
            return None
        ((k, c),) = self._terms.items()
        if c in (1, -1):
            return (c, k)
        return None

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                out[a + b] = out.get(a + b, 0) + ca * cb
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            u = self.is_unit_monomial()
            if u is None:
                raise ValueError("only unit monomials can be inverted")
            return LaurentPoly.monomial(-u[1], u[0]) ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1."""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Z[v, v^-1]; raises ValueError if there is none.

        Only used by fraction-free elimination, where exactness is guaranteed.
        """
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        rem = dict(self._terms)
        lead_e = other.max_exp()
        lead_c = other._terms[lead_e]
        low_e = other.min_exp()
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - lead_e + low_e < min(rem):
                raise ValueError("division is not exact")
            c, r = divmod(rem[top], lead_c)
            if r:
                raise ValueError("division is not exact")
            q_e = top - lead_e
            quot[q_e] = c
            for e, oc in other._terms.items():
                k = e + q_e
                val = rem.get(k, 0) - c * oc
                if val:
                    rem[k] = val
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # text / json ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            if k == 0:
                body = str(abs(c))
            else:
                mono = "v" if k == 1 else f"v^{k}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def needs_parens(self) -> bool:
        return len(self._terms) > 1

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in self.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(k): int(c) for k, c in obj.items()})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the text form produced by ``str``.

        Also accepts ``v^(-1)``, ``v**2`` and missing spaces.
        """
        s = text.replace(" ", "").replace("**", "^")
        s = re.sub(r"\^\((-?\d+)\)", r"^\1", s)
        if not s:
            raise ValueError("empty Laurent polynomial")
        out: dict[int, int] = {}
        pos = 0
        term_re = re.compile(r"([+-]?)(?:(\d+)(?:\*?(v)(?:\^(-?\d+))?)?|(v)(?:\^(-?\d+))?)")
        first = True
        while pos < len(s):
            m = term_re.match(s, pos)
            if m is None or m.end() == pos or (not first and not m.group(1)):
                raise ValueError(f"cannot parse Laurent polynomial at position {pos}: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            if m.group(2) is not None:
                c = int(m.group(2))
                if m.group(3):
                    e = int(m.group(4)) if m.group(4) is not None else 1
                else:
                    e = 0
            elif m.group(5):
                c = 1
                e = int(m.group(6)) if m.group(6) is not None else 1
            else:
                raise ValueError(f"cannot parse Laurent polynomial at position {pos}: {text!r}")
            out[e] = out.get(e, 0) + sign * c
            pos = m.end()
            first = False
        return cls(out)


def laurent_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out: dict[int, int] = {}
    for p in polys:
        for k, c in p._terms.items():
            out[k] = out.get(k, 0) + c
    return LaurentPoly(out)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)
VINV = LaurentPoly.monomial(-1)
QUANTUM_TWO = V + VINV


def format_combination(terms: Iterable[tuple[LaurentPoly, str]]) -> str:
    """Render ``sum c_i * b_i`` as e.g. ``(v + v^-1)*C1 - v*C2 + R{e}``."""
    out = ""
    for c, body in terms:
        if not c:
            continue
        neg = len(c._terms) == 1 and next(iter(c._terms.values())) < 0
        mag = -c if neg else c
        if mag == ONE:
            piece = body
        elif mag.needs_parens():
            piece = f"({mag})*{body}"
        else:
            piece = f"{mag}*{body}"
        if not out:
            out = ("-" if neg else "") + piece
        else:
            out += (" - " if neg else " + ") + piece
    return out or "0"
