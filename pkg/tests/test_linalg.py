"""Exact nullspace / rank against a plain rational-elimination oracle."""

import random

from hypothesis import given, strategies as st

from kahan_aromas.linalg import (
    in_span,
    intersect_rowspaces,
    nullspace,
    rank,
    rref,
    same_rowspace,
)
from kahan_aromas.rationals import Rat, ZERO, ONE


def rational_gauss_rank(rows, ncols):
    """Independent oracle: fresh rational Gaussian elimination."""
    mat = [[Rat(v) for v in row] for row in rows]
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return r


def test_nullspace_identity():
    eye = [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]
    assert nullspace(eye, 3) == []


def test_nullspace_zero_matrix():
    zero = [[ZERO, ZERO, ZERO], [ZERO, ZERO, ZERO]]
    basis = nullspace(zero, 3)
    assert len(basis) == 3


def test_nullspace_rank_one_normalized():
    rows = [[Rat(1), Rat(2)], [Rat(2), Rat(4)]]
    assert nullspace(rows, 2) == [[Rat(1), Rat(-1, 2)]]


@given(st.integers(0, 10_000))
def test_nullspace_properties_random(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 6)
    n = rng.randint(1, 6)
    rows = [
        [Rat(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)
    ]
    basis = nullspace(rows, n)
    for vec in basis:
        for row in rows:
            assert sum((row[j] * vec[j] for j in range(n)), ZERO) == 0
        first = next(v for v in vec if v != 0)
        assert first == 1
    assert rank(rows, n) + len(basis) == n
    assert rank(rows, n) == rational_gauss_rank(rows, n)


def test_rref_canonical_and_rowspace_equality():
    a = [[Rat(2), Rat(4), Rat(0)], [Rat(1), Rat(2), Rat(1)]]
    b = [[Rat(1), Rat(2), Rat(0)], [Rat(0), Rat(0), Rat(3)]]
    assert same_rowspace(a, b, 3)
    assert rref(a, 3) == rref(b, 3)


def test_in_span():
    basis = [[Rat(1), Rat(0), Rat(1)], [Rat(0), Rat(1), Rat(1)]]
    coords = in_span(basis, [Rat(2), Rat(3), Rat(5)], 3)
    assert coords == [Rat(2), Rat(3)]
    assert in_span(basis, [Rat(0), Rat(0), Rat(1)], 3) is None
    assert in_span(basis, [ZERO, ZERO, ZERO], 3) == [ZERO, ZERO]


def test_intersect_rowspaces():
    a = [[Rat(1), Rat(0), Rat(0)], [Rat(0), Rat(1), Rat(0)]]
    b = [[Rat(0), Rat(1), Rat(0)], [Rat(0), Rat(0), Rat(1)]]
    inter = intersect_rowspaces(a, b, 3)
    assert inter == [[ZERO, ONE, ZERO]]
    assert intersect_rowspaces(a, [], 3) == []
