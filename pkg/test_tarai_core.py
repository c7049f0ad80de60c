"""
Tests for the integer-sequence primitives
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tarai_core import (
    INT64_MAX,
    INT64_MIN,
    IntegerOverflowError,
    IntSeq,
    TaraiArgumentError,
    in_X_k,
    inner_vector,
    k_index,
    l_index,
    max_value,
    rot,
    rot_i,
    sigma,
    sigma_rot,
    x_k_indices,
)

vectors = st.lists(st.integers(-20, 20), min_size=1, max_size=8).map(lambda v: IntSeq(tuple(v)))


@pytest.mark.parametrize("x, expected", [
    ((3, 2, 1, 5), (2, 2, 1, 5)),
    ((0,), (-1,)),
    ((7, 7), (6, 7)),
])
def test_sigma(x, expected):
    assert sigma(IntSeq(x)) == IntSeq(expected)


def test_sigma_underflow_is_fatal():
    with pytest.raises(IntegerOverflowError):
        sigma(IntSeq.of(INT64_MIN, 0))


def test_values_outside_int64_rejected():
    with pytest.raises(IntegerOverflowError):
        IntSeq.of(INT64_MAX + 1)


def test_empty_sequence_rejected():
    with pytest.raises(TaraiArgumentError):
        IntSeq(())


@pytest.mark.parametrize("x, expected", [
    ((3, 2, 1, 5), (2, 1, 5, 3)),
    ((9,), (9,)),
    ((1, 2), (2, 1)),
])
def test_rot(x, expected):
    assert rot(IntSeq(x)) == IntSeq(expected)


@pytest.mark.parametrize("x, i, expected", [
    ((3, 2, 1, 5), 2, (1, 5, 3, 2)),
    ((3, 2, 1, 5), 0, (3, 2, 1, 5)),
    ((2, 1, 4, 3, 5), 4, (5, 2, 1, 4, 3)),
])
def test_rot_i(x, i, expected):
    assert rot_i(IntSeq(x), i) == IntSeq(expected)


def test_rot_i_matches_iterated_rot():
    x = IntSeq.of(2, 1, 4, 3, 5)
    y = x
    for i in range(x.n):
        assert rot_i(x, i) == y
        y = rot(y)
    assert y == x


@pytest.mark.parametrize("i", [-1, 4])
def test_rot_i_range(i):
    with pytest.raises(TaraiArgumentError):
        rot_i(IntSeq.of(3, 2, 1, 5), i)


def test_sigma_rot_builds_inner_vectors():
    x = IntSeq.of(3, 2, 1, 5)
    assert [sigma_rot(x, i).to_list() for i in range(1, 5)] == [
        [2, 2, 1, 5], [1, 1, 5, 3], [0, 5, 3, 2], [4, 3, 2, 1],
    ]


def test_inner_vector_matches_sigma_rot():
    values = (3, 2, 1, 5)
    assert inner_vector(values, 0) == (2, 2, 1, 5)
    assert inner_vector(values, 3) == (4, 3, 2, 1)
    for i in range(4):
        assert IntSeq(inner_vector(values, i)) == sigma_rot(IntSeq(values), i + 1)
    with pytest.raises(IntegerOverflowError):
        inner_vector((INT64_MIN, 0, 0), 0)


@pytest.mark.parametrize("x, expected", [
    ((5, 4, 3, 2, 1), 5),
    ((2, 1, 4, 3, 5), 2),
    ((3, 2, 1, 5), 3),
])
def test_k_index(x, expected):
    assert k_index(IntSeq(x)) == expected


@pytest.mark.parametrize("x, expected", [
    ((5, 2, 1, 0), 1),
    ((4, 3, 2, 1), 3),
    ((1, 5, 0), 0),
])
def test_l_index(x, expected):
    assert l_index(IntSeq(x)) == expected


@pytest.mark.parametrize("k, expected", [(3, True), (5, True), (4, False), (2, False)])
def test_in_X_k(k, expected):
    assert in_X_k(IntSeq.of(2, 1, 4, 3, 5), k) is expected


@pytest.mark.parametrize("k", [1, 6])
def test_in_X_k_range(k):
    with pytest.raises(TaraiArgumentError):
        in_X_k(IntSeq.of(2, 1, 4, 3, 5), k)


def test_x_k_indices():
    assert x_k_indices(IntSeq.of(2, 1, 4, 3, 5)) == [3, 5]


def test_positions_are_one_based():
    x = IntSeq.of(3, 2, 1, 5)
    assert x.at(1) == 3 and x.at(4) == 5
    with pytest.raises(TaraiArgumentError, match="position 0"):
        x.at(0)


@pytest.mark.parametrize("text", ["3 2 1 5", "3,2,1,5", "<3, 2, 1, 5>"])
def test_parse(text):
    assert IntSeq.parse(text) == IntSeq.of(3, 2, 1, 5)


def test_require_arity():
    with pytest.raises(TaraiArgumentError, match="at least 3"):
        IntSeq.of(1, 2).require_arity(3)


@given(vectors, st.data())
def test_rotation_round_trip(x, data):
    i = data.draw(st.integers(0, x.n - 1))
    assert rot_i(rot_i(x, i), (x.n - i) % x.n) == x


@given(vectors)
def test_k_index_invariants(x):
    k = k_index(x)
    assert 1 <= k <= x.n
    for i in range(1, k):
        assert x.at(i) > x.at(i + 1)
    if k < x.n:
        assert x.at(k) <= x.at(k + 1)


@given(vectors)
def test_l_index_invariants(x):
    k, l = k_index(x), l_index(x)
    assert 0 <= l <= k - 1
    assert (l == 0) == (k == 1)
    if l < k - 1:
        assert x.at(l) > x.at(l + 1) + 1 and x.at(l + 1) == x.at(l + 2) + 1


@given(vectors)
def test_below_max_start_lies_in_some_X_k(x):
    if x.n >= 2 and x.at(1) < max_value(x):
        assert any(in_X_k(x, k) for k in range(2, x.n + 1))
