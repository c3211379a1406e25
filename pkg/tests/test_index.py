import pytest
from hypothesis import given
from hypothesis import strategies as st

from pyracat.index import ZERO, IndexVector, add, epsilon, height, shift, truncate

vectors = st.lists(st.integers(-5, 5), max_size=6).map(IndexVector)


def test_epsilon_is_basis_vector():
    assert epsilon(2).entries == (0, 1)
    assert epsilon(2).to_json() == [0, 1]
    assert (epsilon(1) + epsilon(1)).to_json() == [2]
    assert height(epsilon(7)) == 1


def test_epsilon_rejects_zero():
    with pytest.raises(ValueError):
        epsilon(0)


def test_add_examples():
    assert add(IndexVector([1, -1]), IndexVector([0, 1])) == epsilon(1)
    a = IndexVector([2, 3])
    assert add(a, ZERO) == a
    assert add(a, IndexVector([-2, -3])) == ZERO


def test_trailing_zeros_are_trimmed():
    assert IndexVector([3, 0, 0]) == IndexVector([3])
    assert IndexVector([0]) == ZERO
    assert hash(IndexVector([0, 0])) == hash(ZERO)


def test_height_examples():
    assert height(IndexVector([2, -1, 3])) == 4
    assert height(ZERO) == 0
    assert all(height(epsilon(i)) == 1 for i in range(1, 10))


def test_truncate_examples():
    a = IndexVector([3, -1, 4])
    assert truncate(a, 2, "low").to_json() == [3, -1]
    assert truncate(a, 2, "high").to_json() == [4]
    assert truncate(a, 0, "low") == ZERO
    assert truncate(a, 0, "high") == a


def test_truncate_rejects_bad_side():
    with pytest.raises(ValueError):
        truncate(epsilon(1), 1, "middle")


def test_json_roundtrip():
    a = IndexVector([0, -2, 5])
    assert IndexVector.from_json(a.to_json()) == a


@given(vectors, st.integers(0, 7))
def test_truncation_is_lossless(a, k):
    assert truncate(a, k, "low") + shift(truncate(a, k, "high"), k) == a


@given(vectors, vectors)
def test_height_is_additive(a, b):
    assert height(add(a, b)) == height(a) + height(b)


@given(vectors, st.integers(0, 7))
def test_height_splits_over_truncation(a, k):
    assert height(truncate(a, k, "low")) + height(truncate(a, k, "high")) == height(a)


@given(vectors, vectors, vectors)
def test_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + (-a) == ZERO
    assert a - b == a + (-b)


@given(vectors)
def test_no_stored_zero_at_the_end(a):
    assert not a.entries or a.entries[-1] != 0
