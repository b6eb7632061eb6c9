"""Parity tests: the compiled core must reproduce the pure core exactly."""

import random

import pytest

from zsegz import _core, _core_py, _tables
from zsegz.groups import automorphism_index_maps, make_group

try:
    from zsegz import _core_c
except ImportError:
    _core_c = None

needs_compiled = pytest.mark.skipif(
    _core_c is None, reason="compiled core not built"
)


def _search_args(moduli, m, forb, tcap, use_aut, accept=None):
    g = make_group(list(moduli))
    add = _tables.add_index(g)
    if accept is None:
        accept = (True,) * g.order
    auts = None
    if use_aut:
        ident = tuple(range(g.order))
        auts = [p for p in automorphism_index_maps(g) if p != ident]
    return (moduli, m, forb, add, accept, tcap, auts)


SEARCH_CASES = [
    ((2, 2), 5, [2], True, True),
    ((2, 2), 5, [2], False, False),
    ((2, 2), 4, [2], False, True),
    ((3, 3), 8, [3], True, True),
    ((3, 3), 9, [3, 6], True, False),
    ((2, 4), 8, [4], True, True),
    ((2, 4), 7, [4], True, False),
    ((4, 4), 9, [4], True, True),
    ((2, 2, 2), 7, [2, 4], True, True),
    ((5,), 6, [5], True, True),
]


@needs_compiled
@pytest.mark.parametrize("case", SEARCH_CASES)
def test_search_parity(case):
    moduli, m, forb, tcap, use_aut = case
    args = _search_args(moduli, m, forb, tcap, use_aut)
    pure = _core_py.search_absent(*args, 10**9, 10**8)
    fast = _core_c.search_absent(*args, 10**9, 10**8)
    assert pure == fast


@needs_compiled
def test_search_parity_with_limit_and_budget():
    args = _search_args((3, 3), 8, [3], True, True)
    for limit, budget in ((1, 10**8), (3, 10**8), (10**9, 25), (10**9, 1)):
        pure = _core_py.search_absent(*args, limit, budget)
        fast = _core_c.search_absent(*args, limit, budget)
        assert pure == fast


@needs_compiled
def test_search_parity_zero_sum_accept():
    g = make_group([2, 4])
    mask = _tables.multiple_image_mask(g, 8)
    args = _search_args((2, 4), 8, [4], True, True, accept=mask)
    pure = _core_py.search_absent(*args, 10**9, 10**8)
    fast = _core_c.search_absent(*args, 10**9, 10**8)
    assert pure == fast
    assert pure[2] == _core.SEARCH_EXHAUSTED or pure[0]


@needs_compiled
@pytest.mark.parametrize(
    "moduli,m,kmax,p,zero_sum",
    [
        ((2, 2), 5, 4, 2, False),
        ((3, 3), 7, 6, 3, False),
        ((2, 2, 2), 6, 6, 2, True),
        ((5,), 8, 5, 5, False),
    ],
)
def test_sweep_parity(moduli, m, kmax, p, zero_sum):
    g = make_group(list(moduli))
    add = _tables.add_index(g)
    rng = random.Random(5)
    coef = [rng.randint(-2, 2) for _ in range(kmax + 1)]
    pure = _core_py.sweep_residues(moduli, m, kmax, p, add, coef, 1, zero_sum, 7)
    fast = _core_c.sweep_residues(moduli, m, kmax, p, add, coef, 1, zero_sum, 7)
    assert pure == fast


@needs_compiled
def test_count_mod_parity():
    rng = random.Random(11)
    for _ in range(50):
        moduli = rng.choice(((2, 2), (3, 3), (2, 4), (7,)))
        g = make_group(list(moduli))
        add = _tables.add_index(g)
        n_distinct = rng.randint(0, 5)
        idx = rng.sample(range(g.order), min(n_distinct, g.order))
        mults = [rng.randint(1, 4) for _ in idx]
        kmax = rng.randint(0, sum(mults) if mults else 0)
        p = rng.choice((2, 3, 5))
        pure = _core_py.count_mod_table(moduli, idx, mults, kmax, p, add)
        fast = _core_c.count_mod_table(moduli, idx, mults, kmax, p, add)
        assert pure == fast


@needs_compiled
def test_batch_parity():
    rng = random.Random(12)
    moduli = (3, 3, 3)
    g = make_group(list(moduli))
    add = _tables.add_index(g)
    seqs = [[rng.randrange(g.order) for _ in range(9)] for _ in range(40)]
    pure = _core_py.count_mod_identity_batch(moduli, seqs, 6, 3, add)
    fast = _core_c.count_mod_identity_batch(moduli, seqs, 6, 3, add)
    assert pure == fast
    assert _core_py.count_mod_identity_batch(moduli, [], 6, 3, add) == []
    assert _core_c.count_mod_identity_batch(moduli, [], 6, 3, add) == []


def test_selected_core_is_exposed():
    assert _core.IMPL in ("pure", "compiled")
    assert callable(_core.search_absent)
