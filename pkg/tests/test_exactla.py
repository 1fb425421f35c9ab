from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from macinv.exactla import FrameMismatch, Subspace, nullspace, rank, rref, transpose


def naive_rank(m):
    """Plain Fraction Gaussian elimination, for comparison."""
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


mats = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=6))


@given(mats)
def test_rank_matches_naive(m):
    assert rank(m) == naive_rank(m)


@given(mats)
def test_rref_shape(m):
    red, r = rref(m)
    assert len(red) == r
    for row in red:
        lead = next(a for a in row if a)
        assert lead == 1


@given(mats)
def test_nullspace(m):
    ns = nullspace(m)
    assert len(ns) == len(m[0]) - rank(m)
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


def test_rref_example():
    red, r = rref([[2, 4], [1, 3]])
    assert r == 2
    assert red == [[1, 0], [0, 1]]


def test_transpose():
    assert transpose([[1, 2, 3], [4, 5, 6]]) == [[1, 4], [2, 5], [3, 6]]


pairs = st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), max_size=4),
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), max_size=4)))


@given(pairs)
def test_sum_and_intersection_dimensions(ab):
    a, b = ab
    n = len((a + b)[0]) if a + b else 1
    frame = list(range(n))
    U, W = Subspace(frame, a), Subspace(frame, b)
    meet = U & W
    assert (U + W).dim + meet.dim == U.dim + W.dim
    for v in meet.basis:
        assert U.contains(v) and W.contains(v)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), max_size=5),
       st.sets(st.integers(0, 4)))
def test_restrict_to_is_coordinate_intersection(rows, keep):
    frame = list("abcde")
    U = Subspace(frame, rows)
    coord = Subspace(frame, [[int(i == j) for i in range(5)] for j in keep])
    assert U.restrict_to(keep) == U & coord


def test_equality_is_canonical():
    f = ["p", "q", "r"]
    assert Subspace(f, [[1, 1, 0], [0, 1, 1]]) == Subspace(f, [[1, 2, 1], [1, 0, -1]])
    assert hash(Subspace(f, [[2, 0, 0]])) == hash(Subspace(f, [[1, 0, 0]]))


def test_frame_mismatch():
    with pytest.raises(FrameMismatch):
        Subspace([1, 2], [[1, 0]]) + Subspace([2, 1], [[1, 0]])


def test_reframe_and_full():
    U = Subspace(["a", "b"], [[1, 2]])
    V = U.reframe(["b", "c", "a"])
    assert V.basis == [[1, 0, Fraction(1, 2)]]
    assert Subspace.full("xyz").dim == 3
