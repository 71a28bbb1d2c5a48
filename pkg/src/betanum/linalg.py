"""Exact integer/rational matrix routines: Bareiss rank, rational solves, Z-module bases, Berkowitz."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list:
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            for j in range(col, ncols):
                m[i][j] = (p * m[i][j] - f * m[rank][j]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``a x = b`` over the rationals, or None when inconsistent.

    Free variables are set to zero.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if any(m[i][ncols] != 0 for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def integer_row_basis(rows: Sequence[Sequence[int]]) -> Matrix:
    """A Z-basis (in row echelon form) of the Z-module spanned by the integer rows."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    basis: Matrix = []
    for col in range(ncols):
        active = [r for r in m if r[col] != 0]
        rest = [r for r in m if r[col] == 0]
        if not active:
            continue
        # gcd-reduce the column among the active rows
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            pivot = active[0]
            nxt = [pivot]
            for r in active[1:]:
                q = r[col] // pivot[col]
                r = [x - q * y for x, y in zip(r, pivot)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        pivot = active[0]
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        m = rest
    return basis


def berkowitz_charpoly(a: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients (constant term first) of det(xI - A), division-free."""
    n = len(a)
    # coefficients highest degree first during the recursion
    poly = [1]
    for k in range(n):
        alpha = a[k][k]
        row = [a[k][j] for j in range(k)]
        col = [a[i][k] for i in range(k)]
        sub = [[a[i][j] for j in range(k)] for i in range(k)]
        column = [1, -alpha]
        vec = col
        for _ in range(k):
            column.append(-sum(x * y for x, y in zip(row, vec)))
            vec = matvec(sub, vec)
        new = []
        for i in range(k + 2):
            new.append(sum(column[i - j] * poly[j] for j in range(min(i, k) + 1)))
        poly = new
    return poly[::-1]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
