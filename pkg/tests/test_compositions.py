from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from woontree.compositions import (
    Composition,
    PartSet,
    composition_products,
    count_compositions,
    count_restricted,
    digit_sum_s2,
    enumerate_compositions,
    enumerate_restricted,
    from_mask,
    to_mask,
)
from woontree.errors import RangeError, SizeGuard


def stars_and_bars(n):
    """Oracle: choose the cut points among the n-1 gaps."""
    out = set()
    for m in range(n):
        for cuts in combinations(range(1, n), m):
            edges = (0,) + cuts + (n,)
            out.add(tuple(b - a for a, b in zip(edges, edges[1:])))
    return out


def test_compositions_of_three():
    assert set(enumerate_compositions(3)) == {(3,), (2, 1), (1, 2), (1, 1, 1)}
    assert [str(c) for c in enumerate_compositions(3)] == ["3", "2+1", "1+2", "1+1+1"]


def test_compositions_of_one():
    assert list(enumerate_compositions(1)) == [(1,)]


def test_compositions_of_five():
    comps = list(enumerate_compositions(5))
    assert len(comps) == 16
    assert sum(1 for c in comps if set(c) <= {1, 2}) == 8


@pytest.mark.parametrize("n", range(1, 13))
def test_enumeration_matches_stars_and_bars(n):
    got = list(enumerate_compositions(n))
    assert len(got) == len(set(got)) == 2 ** (n - 1)
    assert set(got) == stars_and_bars(n)


def test_count_via_iterator_up_to_twenty():
    for n in (17, 18, 19, 20):
        assert sum(1 for _ in enumerate_compositions(n)) == 2 ** (n - 1) == count_compositions(n)


def test_enumerate_is_lazy_and_guarded():
    it = enumerate_compositions(30)
    assert next(it) == (30,)
    with pytest.raises(SizeGuard, match="MAX_ENUMERATE"):
        list(enumerate_compositions(31))
    with pytest.raises(RangeError):
        list(enumerate_compositions(0))


def test_from_mask_examples():
    assert from_mask(3, 0) == (3,)
    assert from_mask(3, 3) == (1, 1, 1)
    assert from_mask(3, 1) == (2, 1)
    with pytest.raises(RangeError):
        from_mask(3, 4)


@pytest.mark.parametrize("n", range(1, 11))
def test_length_is_digit_sum_plus_one(n):
    for k in range(2 ** (n - 1)):
        assert len(from_mask(n, k)) == digit_sum_s2(k) + 1


@given(st.integers(1, 24).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2 ** (n - 1) - 1))))
def test_mask_round_trip(nk):
    n, k = nk
    pi = from_mask(n, k)
    assert sum(pi) == n and to_mask(pi) == k and pi.mask == k


def test_composition_statistics():
    pi = Composition([2, 1, 3])
    assert (pi.total, pi.length, pi.factorial, pi.shifted_factorial) == (6, 3, 12, 288)
    with pytest.raises(ValueError):
        Composition([1, 0])


def test_partset():
    assert PartSet([3, 1, 3]).sorted == (1, 3)
    with pytest.raises(ValueError):
        PartSet([])


def test_restricted_examples():
    assert set(enumerate_restricted(4, {1, 2})) == {(2, 2), (2, 1, 1), (1, 2, 1), (1, 1, 2), (1, 1, 1, 1)}
    assert list(enumerate_restricted(3, {2})) == []
    odd = [c for c in stars_and_bars(6) if all(k % 2 for k in c)]
    assert sorted(enumerate_restricted(6, {1, 3, 5})) == sorted(odd)
    assert len(odd) == 8  # [z^6] g/(1-g), g = z + z^3 + z^5, i.e. Fibonacci again


def test_count_restricted_examples():
    assert count_restricted(5, {1, 2}) == 8
    assert count_restricted(0, {1, 2}) == 1
    assert count_restricted(12, {1, 2}) == 233


@pytest.mark.parametrize("J", [{1, 2}, {1, 3}, {2, 3}, "odd"])
def test_restricted_enumeration_matches_count(J):
    for n in range(1, 17):
        parts = set(range(1, n + 1, 2)) if J == "odd" else J
        listed = list(enumerate_restricted(n, parts))
        assert len(listed) == count_restricted(n, parts)
        assert all(sum(c) == n and set(c) <= parts for c in listed)
        assert len(set(listed)) == len(listed)


def test_digit_sums():
    assert [digit_sum_s2(k) for k in range(4)] == [0, 1, 1, 2]
    assert all(digit_sum_s2(2 ** t) == 1 for t in range(21))


@pytest.mark.parametrize("n", range(1, 13))
def test_length_multiset_matches_digit_sums(n):
    assert Counter(len(c) for c in enumerate_compositions(n)) == Counter(digit_sum_s2(k) + 1 for k in range(2 ** (n - 1)))


def test_composition_products_visit_each_composition():
    values = [0] + [1] * 8
    got = Counter(composition_products(values, 8))
    assert sum(got.values()) == 128
    # lengths follow binomial(7, m-1)
    assert {m: c for (m, _), c in got.items()} == {1: 1, 2: 7, 3: 21, 4: 35, 5: 35, 6: 21, 7: 7, 8: 1}
