import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import mod_inv_matrix, naive_rank
from symdual import kernels
from symdual.errors import DimensionMismatch, Singular
from symdual.matrix import (Mat, block, circulant, det2, hstack, inverse, is_antiorthogonal,
                            is_circulant, is_symmetric, mat_mul, rank, rref, rref_array, transpose,
                            vstack)

P = st.sampled_from([3, 5, 7, 11, 19, 23])


@st.composite
def matrices(draw, rows=st.integers(1, 6), cols=st.integers(1, 8)):
    p = draw(P)
    r, c = draw(rows), draw(cols)
    data = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return Mat(data, p)


def test_construction_reduces_and_freezes():
    m = Mat([[7, -1], [3, 4]], 5)
    assert m.tolist() == [[2, 4], [3, 4]]
    with pytest.raises(ValueError):
        m.data[0, 0] = 1


def test_fortran_ordered_input_becomes_c_contiguous():
    arr = np.asfortranarray(np.arange(12).reshape(3, 4))
    assert Mat(arr, 7).data.flags.c_contiguous


@given(matrices(), st.data())
def test_product_matches_python_ints(a, data):
    p = a.p
    cols = data.draw(st.integers(1, 5))
    b = Mat(data.draw(arrays(np.int64, (a.cols, cols), elements=st.integers(0, p - 1))), p)
    expect = [[sum(int(a.data[i, t]) * int(b.data[t, j]) for t in range(a.cols)) % p
               for j in range(cols)] for i in range(a.rows)]
    assert (a @ b).tolist() == expect == mat_mul(a, b).tolist()


def test_shape_and_field_mismatch():
    with pytest.raises(DimensionMismatch):
        Mat.identity(2, 5) @ Mat.identity(3, 5)
    with pytest.raises(DimensionMismatch):
        Mat.identity(2, 5) + Mat.identity(2, 7)


@given(matrices())
def test_rank_matches_oracle(a):
    assert rank(a) == naive_rank(a.data, a.p)


@given(matrices())
def test_rref_is_reduced_and_row_equivalent(a):
    g, piv = rref(a)
    r = len(piv)
    assert r == naive_rank(a.data, a.p)
    assert np.array_equal(g.data[:r, piv], np.eye(r, dtype=np.int64))
    assert not g.data[r:].any()
    # same row space: stacking adds no rank
    assert naive_rank(np.vstack([a.data, g.data]), a.p) == r


@given(matrices(), st.randoms(use_true_random=False))
def test_rref_kernel_backends_agree_with_reference(a, rnd):
    order = list(range(a.cols))
    rnd.shuffle(order)
    ref, ref_piv = rref_array(a.data, a.p, order)
    for backend in kernels.available_backends():
        g = np.array(a.data, dtype=np.int64, order="C")
        piv = np.zeros(a.rows, dtype=np.int64)
        r = kernels.rref_inplace(g, np.array(order, dtype=np.int64), a.p, a.ctx.inv_table, piv,
                                 backend=backend)
        assert list(piv[:r]) == ref_piv
        assert np.array_equal(g, ref)


@given(P, st.integers(1, 6), st.randoms(use_true_random=False))
def test_inverse_matches_oracle(p, n, rnd):
    data = np.array([[rnd.randrange(p) for _ in range(n)] for _ in range(n)])
    m = Mat(data, p)
    if naive_rank(data, p) < n:
        with pytest.raises(Singular):
            inverse(m)
        return
    inv = inverse(m)
    assert np.array_equal(inv.data, mod_inv_matrix(data, p))
    assert m @ inv == Mat.identity(n, p)


def test_det2():
    assert det2(Mat([[1, 2], [3, 4]], 7)) == (4 - 6) % 7
    with pytest.raises(DimensionMismatch):
        det2(Mat.identity(3, 7))


def test_stacking():
    a, b = Mat.identity(2, 5), Mat.zeros(2, 3, 5)
    assert hstack([a, b]).shape == (2, 5)
    assert vstack([a, a]).shape == (4, 2)
    bl = block([[a, Mat.zeros(2, 2, 5)], [Mat.zeros(2, 2, 5), a]])
    assert bl == Mat.identity(4, 5)
    assert transpose(b).shape == (3, 2) and b.T == transpose(b)


def test_predicates():
    a = Mat([[1, 1], [1, 2]], 3)  # the [8,4] GF(3) example block
    assert is_symmetric(a) and is_antiorthogonal(a)
    assert not is_symmetric(Mat([[1, 2], [0, 1]], 3))
    assert not is_antiorthogonal(Mat.identity(2, 3))


@given(P, st.lists(st.integers(0, 100), min_size=1, max_size=9))
def test_circulant_rows_are_shifts(p, row):
    c = circulant(row, p)
    n = len(row)
    assert is_circulant(c)
    for i in range(n):
        assert c.data[i].tolist() == [row[(j - i) % n] % p for j in range(n)]
    # column reversal of a circulant is symmetric
    assert is_symmetric(Mat(c.data[:, ::-1], p))


def test_not_circulant():
    assert not is_circulant(Mat([[1, 2], [1, 2]], 5))


@settings(max_examples=30)
@given(matrices(rows=st.just(3), cols=st.just(3)), st.integers(0, 50))
def test_scale_and_negation(a, c):
    assert (a.scale(c) + (-a).scale(c)) == Mat.zeros(3, 3, a.p)
    assert c * a == a.scale(c)
