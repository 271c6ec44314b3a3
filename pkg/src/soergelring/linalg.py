"""Fraction-free (Bareiss) elimination over Z and Z[v, v^-1].

Every intermediate entry is a minor of the input matrix, so the division
by the previous pivot is always exact.
"""
from __future__ import annotations

from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        prow = M[r]
        p = prow[c]
        tail = range(c + 1, ncols)
        keep = M[: r + 1]
        for row in M[r + 1 :]:
            a = row[c]
            if a:
                new = [(p * row[j] - a * prow[j]) // prev for j in tail]
            else:
                new = [(p * row[j]) // prev for j in tail]
            if any(new):
                keep.append([0] * (c + 1) + new)
        M = keep
        prev = p
        r += 1
        if r == len(M):
            break
    return r


def det(
    matrix: Sequence[Sequence[T]],
    zero: T,
    one: T,
    divexact: Callable[[T, T], T],
) -> T:
    """Determinant of a square matrix over an integral domain."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n == 0:
        return one
    M = [list(r) for r in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if M[i][k] != zero), None)
        if piv is None:
            return zero
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        p = M[k][k]
        for i in range(k + 1, n):
            a = M[i][k]
            for j in range(k + 1, n):
                M[i][j] = divexact(p * M[i][j] - a * M[k][j], prev)
            M[i][k] = zero
        prev = p
    d = M[n - 1][n - 1]
    return d if sign == 1 else zero - d


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    return det(matrix, 0, 1, lambda a, b: a // b)
