"""Shared oracles and hypothesis strategies for the suite.

The determinant oracle is deliberately the slow textbook cofactor
expansion so that the fraction-free elimination in the package is
checked against an independent computation, not against itself.
"""

from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from autcert.scalars import MultiPoly

settings.register_profile("suite", max_examples=100, deadline=None)
settings.load_profile("suite")


def naive_det(rows):
    """Cofactor-expansion determinant; exponential, fine for n <= 5."""
    n = len(rows)
    assert all(len(r) == n for r in rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * naive_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def gaussian_inverse(rows):
    """Exact inverse over the rationals by row reduction; None if singular."""
    n = len(rows)
    A = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)]
         for i, row in enumerate(rows)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if A[i][c]), None)
        if pivot is None:
            return None
        A[c], A[pivot] = A[pivot], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)

int_entries = st.integers(min_value=-6, max_value=6)


def int_matrix(n, m=None):
    m = n if m is None else m
    return st.lists(
        st.lists(int_entries, min_size=m, max_size=m), min_size=n, max_size=n
    )


POLY_VARS = ("x", "y", "z")


@st.composite
def polys(draw, max_vars=2, max_deg=3, max_terms=4):
    nv = draw(st.integers(min_value=0, max_value=max_vars))
    names = POLY_VARS[:nv]
    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        exps = tuple(
            draw(st.integers(min_value=0, max_value=max_deg)) for _ in range(nv)
        )
        terms[exps] = draw(small_fractions)
    return MultiPoly(names, terms)
