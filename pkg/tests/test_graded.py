from fractions import Fraction
from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

from bfvlab.graded import compose, decalage_sign, factorial_weight, koszul_sign, unshuffles


def inversion_sign(perm, degs):
    """Oracle: (-1) for every pair of odd items whose relative order is reversed."""
    sign = 1
    for i, j in combinations(range(len(perm)), 2):
        a, b = perm[i], perm[j]
        if a > b and degs[a] % 2 and degs[b] % 2:
            sign = -sign
    return sign


def test_koszul_examples():
    assert koszul_sign((0, 1, 2), (1, 1, 1)) == 1
    assert koszul_sign((1, 0), (1, 1)) == -1
    assert koszul_sign((1, 0), (1, 2)) == 1
    # cycle moving the even third item to the front past two odd ones
    assert koszul_sign((2, 0, 1), (1, 1, 0)) == 1
    assert koszul_sign((1, 2, 0), (1, 1, 0)) == -1


def test_koszul_rejects_bad_input():
    with pytest.raises(ValueError):
        koszul_sign((0, 1), (1,))
    with pytest.raises(ValueError):
        koszul_sign((0, 0), (1, 1))


@given(st.lists(st.integers(-3, 3), min_size=0, max_size=6), st.randoms(use_true_random=False))
def test_koszul_matches_inversion_count(degs, r):
    perm = list(range(len(degs)))
    r.shuffle(perm)
    assert koszul_sign(perm, degs) == inversion_sign(perm, degs)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.randoms(use_true_random=False))
def test_koszul_is_multiplicative(degs, r):
    n = len(degs)
    p = list(range(n))
    q = list(range(n))
    r.shuffle(p)
    r.shuffle(q)
    # first rearrange by q, then rearrange the result by p
    moved = [degs[k] for k in q]
    total = compose(p, q)
    assert koszul_sign(total, degs) == koszul_sign(q, degs) * koszul_sign(p, moved)


def brute_shuffles(r, s):
    return sorted(p for p in permutations(range(r + s))
                  if list(p[:r]) == sorted(p[:r]) and list(p[r:]) == sorted(p[r:]))


@pytest.mark.parametrize("r,s", [(0, 0), (0, 3), (3, 0), (1, 1), (2, 2), (1, 3), (2, 3)])
def test_unshuffles_match_filter(r, s):
    got = unshuffles(r, s)
    assert len(got) == comb(r + s, r)
    assert sorted(got) == brute_shuffles(r, s)
    assert got == sorted(got, key=lambda p: p[:r])


def test_unshuffle_examples():
    assert unshuffles(0, 3) == [(0, 1, 2)]
    assert unshuffles(1, 1) == [(0, 1), (1, 0)]
    assert len(unshuffles(2, 2)) == 6
    with pytest.raises(ValueError):
        unshuffles(-1, 2)


def test_decalage_sign():
    assert decalage_sign([5]) == 1
    assert decalage_sign([1, 0]) == -1
    assert decalage_sign([2, 2]) == 1
    assert decalage_sign([0, 1]) == 1
    assert decalage_sign([1, 1, 1]) == -1


def test_factorial_weight():
    assert factorial_weight(0) == 1
    assert factorial_weight(4) == Fraction(1, 24)
