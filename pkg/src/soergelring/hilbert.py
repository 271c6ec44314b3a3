"""Hilbert functions of R(A) = O(union of the graphs Gr(x), x in A).

Degree-k polynomials f(u, v) on V x V restrict to Gr(x) = {(xv, v)} as
f(xv, v).  The dimension of R(A) in polynomial degree k is the rank of the
map f -> (f(xv, v))_{x in A}.  Linear forms on V sit in internal degree 2,
so polynomial degree k is internal degree 2k; everything in this module is
indexed by polynomial degree unless a name says ``internal``.

Representations (integer matrices, reflection faithful):
  A2, A3: the sum-zero part of the permutation representation, in the basis
          e_i - e_{i+1};
  B2 and other I2(m): for m = 4 signed permutations of the plane; other m
          are not supported by the oracle.
"""
from __future__ import annotations

import itertools
from math import comb

from .coxeter import CoxeterGroup
from .laurent import LaurentPoly
from .linalg import int_det, rank
from .report import Report

Matrix = tuple  # tuple of row tuples


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _perm_on_roots(perm: tuple) -> Matrix:
    """Matrix of a permutation of n+1 points on the span of e_i - e_{i+1}."""
    n = len(perm) - 1
    cols = []
    for j in range(n):
        vec = [0] * (n + 1)
        vec[perm[j]] += 1
        vec[perm[j + 1]] -= 1
        # coordinates in the basis e_i - e_{i+1} are partial sums
        cols.append([sum(vec[: i + 1]) for i in range(n)])
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


class ReflectionRep:
    def __init__(self, group: CoxeterGroup):
        self.group = group
        desc = group.desc
        if desc.kind == "symmetricA3":
            gens = [_perm_on_roots(s) for s in group.simple]
        elif desc.m == 3:
            gens = [_perm_on_roots((1, 0, 2)), _perm_on_roots((0, 2, 1))]
        elif desc.m == 4:
            gens = [((0, 1), (1, 0)), ((1, 0), (0, -1))]
        else:
            raise NotImplementedError(f"no integral reflection representation for {desc.name}")
        self.simple_matrices = tuple(gens)
        self.n = len(gens[0])
        self.matrices = {}
        for g in group.elements:
            m = _identity(self.n)
            for lab in group.reduced_word(g):
                m = _matmul(m, gens[group.labels.index(lab)])
            self.matrices[g] = m

    def matrix(self, g) -> Matrix:
        return self.matrices[g]

    def validate(self) -> list[str]:
        """Problems found (empty if the representation is sound)."""
        g = self.group
        problems = []
        for a in g.elements:
            for b in g.elements:
                if _matmul(self.matrices[a], self.matrices[b]) != self.matrices[g.multiply(a, b)]:
                    problems.append(f"not a homomorphism at {g.word_str(a)}, {g.word_str(b)}")
                    return problems
        seen = set()
        for a in g.elements:
            if self.matrices[a] in seen:
                problems.append("not faithful")
            seen.add(self.matrices[a])
        for t in g.reflections:
            m = self.matrices[t]
            if int_det(m) != -1:
                problems.append(f"det of {g.word_str(t)} is not -1")
            fixed = [[m[i][j] - (i == j) for j in range(self.n)] for i in range(self.n)]
            if rank(fixed) != 1:
                problems.append(f"{g.word_str(t)} does not fix a hyperplane")
        return problems


def _monomials(nvars: int, k: int):
    """Exponent vectors of total degree k."""
    for c in itertools.combinations(range(k + nvars - 1), nvars - 1):
        prev = -1
        out = []
        for x in c:
            out.append(x - prev - 1)
            prev = x
        out.append(k + nvars - 1 - prev - 1)
        yield tuple(out)


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, ca in p.items():
        for b, cb in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


class HilbertOracle:
    """Exact Hilbert functions of R(A) for one group and representation."""

    def __init__(self, group: CoxeterGroup, rep: ReflectionRep | None = None):
        self.group = group
        self.rep = rep or ReflectionRep(group)
        self.n = self.rep.n
        self._cache: dict[tuple[int, int], int] = {}
        self._subs: dict = {}

    def _substituted(self, x, alpha: tuple) -> dict:
        """prod_i (row_i(x) . v)^alpha_i as a polynomial in v."""
        key = (x, alpha)
        if key not in self._subs:
            if not any(alpha):
                val = {(0,) * self.n: 1}
            else:
                i = next(i for i, a in enumerate(alpha) if a)
                rest = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
                row = self.rep.matrix(x)[i]
                lin = {tuple(int(j == c) for j in range(self.n)): row[c] for c in range(self.n) if row[c]}
                val = _poly_mul(self._substituted(x, rest), lin)
            self._subs[key] = val
        return self._subs[key]

    def restriction_matrix(self, A: int, k: int) -> list[list[int]]:
        """Rows: monomials u^a v^b of degree k; columns: (x, monomial in v)."""
        members = self.group.members(A)
        target = list(_monomials(self.n, k))
        col = {}
        for xi in range(len(members)):
            for m in target:
                col[(xi, m)] = len(col)
        rows = []
        for d in range(k + 1):
            alphas = list(_monomials(self.n, d))
            betas = list(_monomials(self.n, k - d))
            for alpha in alphas:
                subs = [self._substituted(x, alpha) for x in members]
                for beta in betas:
                    row = [0] * len(col)
                    for xi, p in enumerate(subs):
                        for mono, c in p.items():
                            row[col[(xi, tuple(a + b for a, b in zip(mono, beta)))]] += c
                    rows.append(row)
        return rows

    def hilbert_function(self, A: int, k: int) -> int:
        """dim of R(A) in polynomial degree k (internal degree 2k)."""
        if A == 0 or k < 0:
            return 0
        key = (A, k)
        if key not in self._cache:
            self._cache[key] = rank(self.restriction_matrix(A, k))
        return self._cache[key]

    def series(self, A: int, max_k: int) -> list[int]:
        return [self.hilbert_function(A, k) for k in range(max_k + 1)]


def polynomial_ring_dims(n: int, max_k: int) -> list[int]:
    return [comb(k + n - 1, n - 1) for k in range(max_k + 1)]


def series_of_class(coeff: LaurentPoly, base: list[int]) -> dict[int, int]:
    """Internal-degree dimensions of ``coeff`` * M, where M has polynomial
    degree dimensions ``base``; a factor v^j shifts by -j (M(1) = v M)."""
    out: dict[int, int] = {}
    for j, c in coeff.terms().items():
        for k, d in enumerate(base):
            deg = 2 * k - j
            out[deg] = out.get(deg, 0) + c * d
    return {d: c for d, c in out.items() if c}


def truncated_series(coeff: LaurentPoly, dims, max_internal: int) -> dict[int, int]:
    """Internal-degree dimensions of ``coeff * M`` up to ``max_internal``.

    ``dims(k)`` gives dim M in polynomial degree k.  Exact in the window:
    enough polynomial degrees are pulled in for every shift.
    """
    if coeff.is_zero():
        return {}
    max_k = (max_internal + coeff.max_exp()) // 2
    base = [dims(k) for k in range(max_k + 1)]
    series = series_of_class(coeff, base)
    return {d: c for d, c in series.items() if d <= max_internal}


def expansion_coefficient(expr) -> LaurentPoly:
    """Graded-rank factor of a generator expansion relative to R.

    Each B_t multiplies the Hilbert series by v + v^-1 (R is free over R^t
    on generators in internal degrees 0 and 2, then shifted by 1); R_w
    leaves it unchanged.
    """
    from .laurent import QUANTUM_TWO, laurent_sum

    return laurent_sum(
        c * QUANTUM_TWO ** sum(1 for l in w if l.kind == "B") for w, c in expr.terms.items()
    )


def expansion_series(ring, A: int, max_k: int) -> list[int]:
    """Dimensions of R(A) in polynomial degrees 0..max_k, predicted from
    A's generator expansion in ``ring`` (no oracle involved)."""
    coeff = expansion_coefficient(ring.generator_expansion[A])
    n = 2 if ring.group.desc.kind == "dihedral" else 3
    series = truncated_series(coeff, lambda k: comb(k + n - 1, n - 1), 2 * max_k)
    odd = [d for d in series if d % 2]
    if odd:
        raise ValueError(f"predicted series has odd internal degrees {odd}")
    return [series.get(2 * k, 0) for k in range(max_k + 1)]


def check_soergel_lemma(oracle: HilbertOracle, A: int, s, max_k: int) -> Report:
    """Degreewise check of R (x)_{R^s} R(A) = R(A u sA) + R(A n sA)(-2).

    As graded spaces the left side is R(A) + R(A)(-2), so in polynomial
    degree k both sides must satisfy
        HF(A, k) + HF(A, k-1) = HF(A u sA, k) + HF(A n sA, k-1).
    """
    from .grotring import lemma_applicable

    g = oracle.group
    rep = Report(f"decomposition check A={g.set_str(A)} s={g.word_str(s)}")
    reason = lemma_applicable(g, s, A)
    if reason is not None:
        rep.add("lemma applicable", False, f"not applicable: {reason}")
        return rep
    sA = g.act_left(s, A)
    U, I = A | sA, A & sA
    hf = oracle.hilbert_function
    for k in range(max_k + 1):
        lhs = hf(A, k) + hf(A, k - 1)
        rhs = hf(U, k) + hf(I, k - 1)
        if lhs != rhs:
            rep.add(f"degree {k}", False, f"{lhs} != {rhs}")
            return rep
    rep.add(f"degrees 0..{max_k}", True)
    return rep


def graded_dim_compare_b2(oracle: HilbertOracle, max_k: int = 10, shift_window: int = 6) -> Report:
    """Compare B = B_tst B_s B_t with every shift R(W)(n), |n| <= window.

    dim B = (v + v^-1)^3 HS(R); R(W) comes from the oracle.  Series are
    compared in internal degrees <= 2 * max_k.
    """
    from .laurent import QUANTUM_TWO

    g = oracle.group
    if g.desc.kind != "dihedral" or g.desc.m != 4:
        raise ValueError("graded_dim_compare_b2 needs the group B2")
    top = 2 * max_k
    numerator = QUANTUM_TWO ** 3
    b_series = truncated_series(numerator, lambda k: k + 1, top)
    rep = Report("graded dimensions of B_tst B_s B_t vs shifts of R(W), B2")
    rep.data["B_series"] = {str(d): b_series[d] for d in sorted(b_series)}
    rw = oracle.series(g.full, max_k + shift_window // 2 + 1)
    rep.data["R(W)_series"] = rw
    witnesses = {}
    for n in range(-shift_window, shift_window + 1):
        shifted = truncated_series(LaurentPoly.monomial(n), oracle_dims(oracle, g.full), top)
        lo = min(list(shifted) + list(b_series))
        diff = next((d for d in range(lo, top + 1) if shifted.get(d, 0) != b_series.get(d, 0)), None)
        witnesses[n] = diff
        detail = (
            "identical in window"
            if diff is None
            else f"internal degree {diff}: B has {b_series.get(diff, 0)}, R(W)({n}) has {shifted.get(diff, 0)}"
        )
        rep.add(f"shift n={n} differs", diff is not None, detail)
    rep.data["first_difference"] = {str(n): d for n, d in witnesses.items()}
    return rep


def oracle_dims(oracle: HilbertOracle, A: int):
    return lambda k: oracle.hilbert_function(A, k)
