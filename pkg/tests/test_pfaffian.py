from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpfaff.partitions import Partition, enumerate_partitions
from qpfaff.pfaffian import (SkewMatrix, det_bareiss, det_expand, minor_summation, minor_summation_fixed,
                             pf_sum_lhs, pfaffian, subpfaffian_weight_check)
from qpfaff.poly import STD


@st.composite
def skew(draw, min_size=0, max_size=6, even=True):
    m = draw(st.integers(min_size, max_size))
    if even and m % 2:
        m -= 1
    vals = draw(st.lists(st.integers(-6, 6), min_size=m * m, max_size=m * m))
    return SkewMatrix.from_func(range(1, m + 1), lambda i, j: vals[(i - 1) * m + (j - 1)])


@given(skew())
def test_pfaffian_squared_is_determinant(A):
    assert pfaffian(A) ** 2 == det_bareiss(A.dense())


@given(skew())
def test_algorithms_agree(A):
    p = pfaffian(A)
    assert pfaffian(A, "matching") == p
    assert pfaffian(A, "eliminate") == p


@given(skew(min_size=2), st.integers(-5, 5), st.data())
def test_scaling_a_row_and_column(A, s, data):
    k = data.draw(st.sampled_from(A.labels))
    assert pfaffian(A.scale(k, s)) == s * pfaffian(A)


@given(st.lists(st.integers(-7, 7), min_size=6, max_size=6), st.lists(st.integers(-7, 7), min_size=6, max_size=6))
def test_pfaffian_of_rank_one_pattern(x, y):
    A = SkewMatrix.from_func(range(6), lambda i, j: x[i] * y[j])
    assert pfaffian(A) == x[0] * x[2] * x[4] * y[1] * y[3] * y[5]


def test_small_values():
    assert pfaffian(SkewMatrix((), [])) == 1
    A = SkewMatrix.from_func(range(1, 5), lambda i, j: 10 * i + j)
    # a12 a34 - a13 a24 + a14 a23
    assert pfaffian(A) == 12 * 34 - 13 * 24 + 14 * 23
    with pytest.raises(ValueError):
        pfaffian(SkewMatrix.from_func(range(3), lambda i, j: 1))


def test_symbolic_entries():
    a, b, c = STD.gens("a b c")
    A = SkewMatrix.from_func(range(4), lambda i, j: [a, b, c][(i + j) % 3])
    assert pfaffian(A) ** 2 == det_expand(A.dense(), STD.one())


def test_from_dense_rejects_non_skew():
    with pytest.raises(ValueError):
        SkewMatrix.from_dense([[0, 1], [1, 0]])


@given(skew(max_size=6, even=False), skew(max_size=6, even=False), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=40)
def test_minor_summation(A, B, g, z):
    m = min(A.size, B.size)
    A, B = A.sub(A.labels[:m]), B.sub(B.labels[:m])
    assert minor_summation(A, B, g, z).ok
    for n in range(m + 1):
        assert minor_summation_fixed(A, B, n, g, z).ok


def test_minor_summation_detects_a_wrong_side():
    A = SkewMatrix.from_func(range(1, 5), lambda i, j: i + j)
    B = SkewMatrix.from_func(range(1, 5), lambda i, j: i * j)
    lhs = pf_sum_lhs(A, B, 2, 3)
    assert lhs != pf_sum_lhs(A, B, 2, 4)
    assert minor_summation(A, B, Fraction(1, 2), 3).ok


def test_subpfaffian_weights():
    for lam in enumerate_partitions("strict", 5):
        assert subpfaffian_weight_check(lam, "strict").ok
    for lam in enumerate_partitions("ordinary", 3, max_size=7):
        assert subpfaffian_weight_check(lam, "ordinary").ok
    assert subpfaffian_weight_check(Partition.of(5, 4, 4, 1), "ordinary").ok
