import math
import random

import pytest

from zsegz.counting import (
    brute_force_count,
    count_fixed_length,
    count_mod,
    count_table,
    find_zero_sum_subsequence,
    has_zero_sum_in,
)
from zsegz.groups import make_group
from zsegz.sequences import from_elements, from_pairs, is_zero_sum

G22 = make_group([2, 2])
FOUR_DISTINCT = from_pairs(
    G22, [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]
)
SHIFTED = from_pairs(G22, [((1, 1), 3), ((0, 1), 1), ((1, 0), 1)])


def test_count_table_identity_powers():
    for n in (2, 3, 4):
        g = make_group([n, n])
        s = from_pairs(g, [((0, 0), n)])
        tab = count_table(s, n)
        assert tab.count(n) == 1


def test_count_table_four_distinct():
    tab = count_table(FOUR_DISTINCT, 4)
    assert tab.count(4) == 1
    assert tab.count(3) == 1
    assert tab.count(2) == 0


def test_count_table_shifted_construction():
    tab = count_table(SHIFTED, 4)
    assert tab.count(4) == 0


def test_count_table_structure():
    tab = count_table(FOUR_DISTINCT, 4)
    assert tab.counts[0][0] == 1
    assert all(v == 0 for v in tab.counts[0][1:])
    for k in range(5):
        assert tab.row_sum(k) == math.comb(4, k)
    with pytest.raises(ValueError):
        count_table(FOUR_DISTINCT, 5)


def test_count_fixed_length_edges():
    assert count_fixed_length(SHIFTED, 0) == 1
    assert count_fixed_length(SHIFTED, 5) == 1  # the sequence is zero-sum
    assert count_fixed_length(FOUR_DISTINCT, 4) == 1
    five_zeros = from_pairs(G22, [((0, 0), 5)])
    assert count_fixed_length(five_zeros, 2) == math.comb(5, 2)


def test_has_zero_sum_in():
    assert has_zero_sum_in(FOUR_DISTINCT, {2, 4})
    assert not has_zero_sum_in(SHIFTED, {4})
    no_identity = from_pairs(G22, [((1, 0), 1), ((0, 1), 1)])
    assert not has_zero_sum_in(no_identity, {1})
    with pytest.raises(ValueError):
        has_zero_sum_in(SHIFTED, {6})


def test_witness_simple():
    s = from_pairs(G22, [((0, 0), 3)])
    w = find_zero_sum_subsequence(s, 2)
    assert w is not None
    assert w.sub == from_pairs(G22, [((0, 0), 2)])
    assert find_zero_sum_subsequence(SHIFTED, 4) is None


def test_witness_on_reiher_length():
    # any sequence of length 4n-3 over [n,n] has a length-n zero-sum subsequence
    rng = random.Random(13)
    for n in (2, 3):
        g = make_group([n, n])
        for _ in range(80):
            s = from_elements(
                g,
                [g.element(rng.randrange(g.order)) for _ in range(4 * n - 3)],
            )
            w = find_zero_sum_subsequence(s, n)
            assert w is not None
            assert w.sub.length == n and is_zero_sum(w.sub)


def test_witness_soundness_and_completeness_random():
    rng = random.Random(99)
    for _ in range(300):
        g = make_group(rng.choice(([2, 2], [3, 3], [2, 4], [6])))
        n = rng.randint(0, 9)
        s = from_elements(g, [g.element(rng.randrange(g.order)) for _ in range(n)])
        k = rng.randint(0, n)
        w = find_zero_sum_subsequence(s, k)
        positive = count_fixed_length(s, k) > 0
        assert (w is not None) == positive
        if w is not None:
            assert w.sub.length == k
            assert is_zero_sum(w.sub)
            assert all(s.multiplicity(e) >= m for e, m in w.sub.entries)


def test_witness_determinism_prefers_small_elements():
    # both (0,0)x2 and (1,1)x2 are zero-sum pairs; the witness must load the
    # smaller element deterministically
    s = from_pairs(G22, [((0, 0), 2), ((1, 1), 2)])
    w = find_zero_sum_subsequence(s, 2)
    assert w.sub == from_pairs(G22, [((0, 0), 2)])


def test_brute_force_edges():
    assert brute_force_count(FOUR_DISTINCT, 0) == 1
    only_identity = from_pairs(G22, [((0, 0), 1)])
    assert brute_force_count(only_identity, 1) == 1
    only_other = from_pairs(G22, [((1, 0), 1)])
    assert brute_force_count(only_other, 1) == 0
    big = from_pairs(make_group([2]), [((0,), 10**8)])
    with pytest.raises(ValueError):
        brute_force_count(big, 2)


def test_oracle_equivalence_random():
    rng = random.Random(2024)
    for _ in range(200):
        g = make_group(rng.choice(([2, 2], [4, 4], [3, 3], [2, 8], [16], [2, 2, 2])))
        n = rng.randint(0, 12)
        s = from_elements(g, [g.element(rng.randrange(g.order)) for _ in range(n)])
        k = rng.randint(0, n)
        assert brute_force_count(s, k) == count_fixed_length(s, k)


def test_count_mod_matches_exact():
    rng = random.Random(31)
    for _ in range(100):
        g = make_group(rng.choice(([2, 2], [3, 3], [5], [2, 4])))
        n = rng.randint(0, 10)
        s = from_elements(g, [g.element(rng.randrange(g.order)) for _ in range(n)])
        kmax = rng.randint(0, n)
        p = rng.choice((2, 3, 5, 7))
        tab = count_table(s, kmax)
        rows = count_mod(s, kmax, p)
        for k in range(kmax + 1):
            for x in range(g.order):
                assert rows[k][x] == tab.counts[k][x] % p
