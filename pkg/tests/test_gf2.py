import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausscat import gf2


def matrices(max_rows=12, max_cols=12):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: np.array(rows, dtype=np.uint8))


def brute_rank(m):
    # 2^rank = number of distinct images of all vectors
    cols = m.shape[1]
    images = {tuple(gf2.matmul(m, np.array(v, dtype=np.uint8))) for v in itertools.product((0, 1), repeat=cols)}
    return int(np.log2(len(images)))


@pytest.mark.parametrize("m, rank, pivots", [
    ([[1, 1], [1, 1]], 1, [0]),
    (np.eye(3, dtype=int), 3, [0, 1, 2]),
    (np.zeros((2, 5), dtype=int), 0, []),
])
def test_rref_examples(m, rank, pivots):
    _, r, p = gf2.rref(m)
    assert (r, p) == (rank, pivots)


def test_solve_examples():
    x, ker = gf2.solve(np.eye(2, dtype=int), [1, 0])
    assert x.tolist() == [1, 0] and len(ker) == 0
    x, ker = gf2.solve([[1, 1]], [0])
    assert x.tolist() == [0, 0] and ker.tolist() == [[1, 1]]
    x, _ = gf2.solve([[0]], [1])
    assert x is None


def test_invert_examples():
    assert gf2.invert(np.eye(3, dtype=int)).tolist() == np.eye(3, dtype=int).tolist()
    assert gf2.invert([[0, 1], [1, 0]]).tolist() == [[0, 1], [1, 0]]
    assert gf2.invert([[1, 1], [1, 1]]) is None


@settings(max_examples=60, deadline=None)
@given(matrices(6, 6))
def test_rank_matches_image_count(m):
    assert gf2.rank(m) == brute_rank(m)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_idempotent_and_canonical(m):
    red, r, piv = gf2.rref(m)
    again, r2, piv2 = gf2.rref(red)
    assert np.array_equal(red, again) and (r, piv) == (r2, piv2)
    assert r <= min(m.shape)
    for i, c in enumerate(piv):
        assert red[:, c].tolist() == [int(j == i) for j in range(m.shape[0])]
    assert not red[r:].any()


@settings(max_examples=80, deadline=None)
@given(matrices(), st.data())
def test_solve_and_kernel(m, data):
    b = np.array(data.draw(st.lists(st.integers(0, 1), min_size=m.shape[0], max_size=m.shape[0])), dtype=np.uint8)
    x, ker = gf2.solve(m, b)
    for k in ker:
        assert not gf2.matmul(m, k).any()
    assert len(ker) == m.shape[1] - gf2.rank(m)
    if x is not None:
        assert np.array_equal(gf2.matmul(m, x), b)
    else:
        assert gf2.rank(np.column_stack([m, b])) > gf2.rank(m)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: matrices(n, n).filter(lambda a: a.shape[0] == a.shape[1])))
def test_invert(a):
    inv = gf2.invert(a)
    n = a.shape[0]
    if inv is None:
        assert gf2.rank(a) < n
    else:
        assert np.array_equal(gf2.matmul(a, inv), gf2.identity(n))
        assert np.array_equal(gf2.matmul(inv, a), gf2.identity(n))
