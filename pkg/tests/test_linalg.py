from fractions import Fraction
from itertools import combinations
from math import gcd

from hypothesis import given, strategies as st

from betanum.linalg import (
    bareiss_det,
    bareiss_rank,
    berkowitz_charpoly,
    integer_row_basis,
    matvec,
    solve_rational,
)


def square(n_min=1, n_max=5, lo=-4, hi=4):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def rect(lo=-5, hi=5):
    return st.tuples(st.integers(1, 5), st.integers(1, 4)).flatmap(
        lambda rc: st.lists(st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def det_fraction(a):
    """Plain Gaussian elimination over Q."""
    m = [[Fraction(x) for x in r] for r in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def rank_fraction(a):
    m = [[Fraction(x) for x in r] for r in a]
    rank = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def charpoly_by_interpolation(a):
    """det(tI - A) sampled at t = 0..n and interpolated (Lagrange, exact)."""
    n = len(a)
    xs = list(range(n + 1))
    ys = [det_fraction([[(t if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]) for t in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n + 1):
            coeffs[k] += ys[i] * basis[k] / denom
    return [int(c) for c in coeffs]


@given(square())
def test_berkowitz_matches_interpolation_oracle(a):
    assert berkowitz_charpoly(a) == charpoly_by_interpolation(a)


def test_berkowitz_known():
    assert berkowitz_charpoly([[1, 1], [1, 0]]) == [-1, -1, 1]
    assert berkowitz_charpoly([[3]]) == [-3, 1]


@given(square())
def test_bareiss_det(a):
    assert bareiss_det(a) == det_fraction(a)


@given(rect())
def test_bareiss_rank(a):
    assert bareiss_rank(a) == rank_fraction(a)


@given(rect(), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_solve_rational(a, b):
    b = b[: len(a)]
    x = solve_rational(a, b)
    augmented = [r + [y] for r, y in zip(a, b)]
    consistent = rank_fraction(a) == rank_fraction(augmented)
    assert (x is not None) == consistent
    if x is not None:
        assert matvec(a, x) == b


def _det_divisor(rows, r):
    g = 0
    for rs in combinations(range(len(rows)), r):
        for cs in combinations(range(len(rows[0])), r):
            g = gcd(g, bareiss_det([[rows[i][j] for j in cs] for i in rs]))
    return g


@given(rect(-6, 6))
def test_integer_row_basis_spans_same_lattice(a):
    basis = integer_row_basis(a)
    r = rank_fraction(a)
    assert len(basis) == r
    if r == 0:
        return
    # every input row is an integer combination of the basis
    cols = [list(c) for c in zip(*basis)]
    for row in a:
        x = solve_rational(cols, row)
        assert x is not None and all(c.denominator == 1 for c in x)
    # equal covolume: the r-th determinantal divisors agree
    assert _det_divisor(basis, r) == _det_divisor(a, r)
