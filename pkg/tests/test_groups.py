import math
import random

import pytest

from zsegz.groups import (
    automorphism_index_maps,
    make_group,
    smallest_coprime_k,
    smallest_ell,
    smallest_ell_pair,
    split_factor,
)


def test_make_group_basics():
    assert make_group([2, 2]).order == 4
    assert make_group([2, 2]).exponent == 2
    assert make_group([2, 4]).order == 8
    assert make_group([2, 4]).exponent == 4
    assert make_group([3, 3, 3]).order == 27
    assert make_group([3, 3, 3]).exponent == 3


def test_make_group_rejects_bad_moduli():
    with pytest.raises(ValueError):
        make_group([0, 2])
    with pytest.raises(ValueError):
        make_group([-3])
    with pytest.raises(ValueError):
        make_group([])


def test_element_arithmetic():
    g = make_group([2, 2])
    assert g.add((1, 1), (1, 1)) == (0, 0)
    g3 = make_group([3, 3])
    assert g3.neg((1, 2)) == (2, 1)
    g24 = make_group([2, 4])
    assert g24.scalar_mul(4, (1, 3)) == (0, 0)


def test_dimension_mismatch():
    g = make_group([2, 2])
    with pytest.raises(ValueError):
        g.add((1, 1), (1,))
    with pytest.raises(ValueError):
        g.neg((1, 1, 1))


def test_enumeration_is_lexicographic_and_complete():
    g = make_group([2, 3])
    elems = list(g.elements())
    assert elems == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    for i, e in enumerate(elems):
        assert g.index(e) == i
        assert g.element(i) == e


def test_group_axioms_random():
    rng = random.Random(7)
    for moduli in ([2, 2], [3, 4], [2, 3, 5], [6]):
        g = make_group(moduli)
        elems = list(g.elements())
        for _ in range(50):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert g.add(a, b) == g.add(b, a)
            assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))
            assert g.add(a, g.identity) == a
            assert g.add(a, g.neg(a)) == g.identity
            k = rng.randrange(1, 4) * g.exponent
            assert g.scalar_mul(k, a) == g.identity


def test_smallest_ell_examples():
    assert smallest_ell(2) == 4
    assert smallest_ell(12) == 5
    assert smallest_ell(4) == 5
    assert smallest_ell(2, floor=2) == 3  # rank-1 form: no floor-4 clause


def test_smallest_ell_minimality():
    for n in range(1, 1001):
        ell = smallest_ell(n)
        assert ell >= 4 and n % ell != 0
        for j in range(4, ell):
            assert n % j == 0


def test_smallest_ell_pair():
    assert smallest_ell_pair(2, 4) == 5
    assert smallest_ell_pair(2, 6) == 4
    assert smallest_ell_pair(3, 3) == 4
    with pytest.raises(ValueError):
        smallest_ell_pair(3, 4)
    for n1, n2 in ((2, 8), (4, 12), (5, 10)):
        # with n1 | n2 the pair form collapses to the n2 form
        assert smallest_ell_pair(n1, n2) == smallest_ell(n2)


def test_smallest_coprime_k():
    assert smallest_coprime_k(6) == 5
    assert smallest_coprime_k(3) == 4
    for p in (2, 5, 7, 11, 13):
        assert smallest_coprime_k(p) == 3
    for n in range(1, 1001):
        k = smallest_coprime_k(n)
        assert k >= 3 and math.gcd(n, k) == 1
        for j in range(3, k):
            assert math.gcd(n, j) != 1


def test_split_factor():
    assert split_factor(6) == (3, 2)
    assert split_factor(12) == (3, 4)
    for p in (2, 3, 5, 7, 11):
        assert split_factor(p) == (p, 1)
    with pytest.raises(ValueError):
        split_factor(1)
    for n in range(2, 200):
        p, m = split_factor(n)
        assert p * m == n
        assert all(n % q or q <= p for q in range(2, n + 1) if _is_prime(q))


def _is_prime(q):
    return q >= 2 and all(q % d for d in range(2, int(q**0.5) + 1))


def test_automorphism_group_sizes():
    # invertible 2x2 matrices mod n: n^4 * prod_{p|n} (1-1/p)(1-1/p^2)
    def gl2_order(n):
        out = n**4
        for q in {p for p, _ in _factor(n)}:
            out = out * (q - 1) // q * (q**2 - 1) // q**2
        return out

    for n in (2, 3, 4, 5, 6):
        got = len(automorphism_index_maps(make_group([n, n])))
        assert got == gl2_order(n), n


def _factor(n):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def test_automorphisms_are_bijections_fixing_identity():
    for moduli in ([2, 4], [3, 3], [2, 2, 2], [6]):
        g = make_group(moduli)
        for perm in automorphism_index_maps(g):
            assert perm[0] == 0
            assert sorted(perm) == list(range(g.order))


def test_automorphisms_preserve_addition():
    rng = random.Random(3)
    for moduli in ([2, 4], [3, 3], [4, 4], [2, 2, 2]):
        g = make_group(moduli)
        elems = list(g.elements())
        for perm in automorphism_index_maps(g):
            for _ in range(20):
                a, b = rng.choice(elems), rng.choice(elems)
                lhs = perm[g.index(g.add(a, b))]
                rhs = g.index(
                    g.add(g.element(perm[g.index(a)]), g.element(perm[g.index(b)]))
                )
                assert lhs == rhs
