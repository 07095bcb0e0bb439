"""Exact linear algebra over the rationals and over GF(q) tables."""

from __future__ import annotations

from fractions import Fraction

from .gf import GfTable


def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def gf_rank(rows: list[list[int]], field: GfTable) -> int:
    """Rank of a matrix with entries encoded as GF(q) elements."""
    mul, add, neg, inv = field.mul, field.add, field.neg, field.inv
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pinv = inv[m[rank][col]]
        m[rank] = [mul[pinv][x] for x in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = neg[m[i][col]]
                m[i] = [add[a][mul[f][b]] for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank
