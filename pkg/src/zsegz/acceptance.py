"""The acceptance suite: one callable check per criterion.

Each criterion returns a :class:`CriterionResult`; the pytest module
``tests/test_acceptance.py`` asserts them and the CLI ``selftest``
subcommand prints them.  All randomness is seeded, so results are
reproducible run to run.

Criterion 6 is expected to FAIL: the stated sandwich upper bound for the
rank-2 group with n1=2, n2=4 is refuted by an explicit certificate (a
zero-sum sequence of length 8 with no zero-sum subsequence of length 4),
so the computed exact value 9 cannot lie in the stated interval [3, 8].
The check still computes and records the exact value and validates the
refuting certificate; see the repository notes for the analysis.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

from . import congruences
from .constants import DEFAULT_NODE_BUDGET, LengthSpec, compute_constant, theorem_table
from .counting import brute_force_count, count_fixed_length, count_table
from .groups import automorphism_index_maps, make_group
from .sequences import (
    apply_index_map,
    format_seq,
    from_elements,
    is_zero_sum,
    translate,
)
from .constructions import build_construction, verify_construction

_SEED = 74125893


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(number: int, name: str, t0: float, failures: list[str]) -> CriterionResult:
    return CriterionResult(
        number=number,
        name=name,
        passed=not failures,
        detail="ok" if not failures else "; ".join(failures[:4]),
        seconds=time.perf_counter() - t0,
    )


def _small_groups(max_order: int = 16, max_rank: int = 3) -> list[tuple[int, ...]]:
    out = []
    for rank in range(1, max_rank + 1):
        for moduli in itertools.product(range(1, max_order + 1), repeat=rank):
            if math.prod(moduli) <= max_order:
                out.append(moduli)
    return out


def criterion_1_oracle_equivalence(**_) -> CriterionResult:
    """DP counts equal brute-force counts on 200 random instances."""
    t0 = time.perf_counter()
    rng = random.Random(_SEED + 1)
    pool = _small_groups()
    failures = []
    for trial in range(200):
        group = make_group(rng.choice(pool))
        length = rng.randint(0, 12)
        elems = [group.element(rng.randrange(group.order)) for _ in range(length)]
        seq = from_elements(group, elems)
        k = rng.randint(0, length)
        dp = count_fixed_length(seq, k)
        bf = brute_force_count(seq, k)
        if dp != bf:
            failures.append(
                f"trial {trial}: ({k}|{format_seq(seq)}) dp={dp} brute={bf}"
            )
    return _result(1, "oracle equivalence of DP and brute-force counts", t0, failures)


def criterion_2_kemnitz_small(threads: int = 1, budget: int = DEFAULT_NODE_BUDGET, **_) -> CriterionResult:
    """Plain constant over [n,n] with L={n}: 5 at n=2, 9 at n=3, exhaustively."""
    t0 = time.perf_counter()
    failures = []
    for n, expect in ((2, 5), (3, 9)):
        res = compute_constant(
            make_group([n, n]),
            LengthSpec.multiples(n, 1),
            modified=False,
            threads=threads,
            node_budget=budget,
        )
        if res.value != expect:
            failures.append(f"n={n}: value {res.value} != {expect}")
            continue
        edge = [o for o in res.outcomes if o.length == 4 * n - 4]
        if not edge or edge[0].counterexample is None:
            failures.append(f"n={n}: missing length-{4 * n - 4} counterexample")
        else:
            ce = edge[0].counterexample
            if ce.length != 4 * n - 4 or count_fixed_length(ce, n) != 0:
                failures.append(f"n={n}: invalid certificate {format_seq(ce)}")
    return _result(2, "plain constant over [n,n] at n=2,3 with certificates", t0, failures)


def criterion_3_modified_square(threads: int = 1, budget: int = DEFAULT_NODE_BUDGET, **_) -> CriterionResult:
    """Modified constant over [n,n] with L={n}: 5, 9, 12 at n=2,3,4."""
    t0 = time.perf_counter()
    failures = []
    for n, expect in ((2, 5), (3, 9), (4, 12)):
        group = make_group([n, n])
        lens = LengthSpec.multiples(n, 1)
        table = theorem_table(group, lens, modified=True)
        res = compute_constant(
            group,
            lens,
            modified=True,
            ceiling=table.exact + 1,
            threads=threads,
            node_budget=budget,
        )
        if res.value != expect:
            failures.append(f"n={n}: value {res.value} != {expect}")
        if table.exact != expect:
            failures.append(f"n={n}: table exact {table.exact} != {expect}")
    return _result(3, "modified constant over [n,n] at n=2,3,4", t0, failures)


def criterion_4_modified_multiples(threads: int = 1, budget: int = DEFAULT_NODE_BUDGET, **_) -> CriterionResult:
    """Modified constant at L={nt}: 6 and 8 over [2,2] (t=2,3), 9 over [3,3] (t=2)."""
    t0 = time.perf_counter()
    failures = []
    cases = (([2, 2], 2, 2, 6), ([2, 2], 2, 3, 8), ([3, 3], 3, 2, 9))
    for moduli, n, t, expect in cases:
        res = compute_constant(
            make_group(moduli),
            LengthSpec.multiples(n, t),
            modified=True,
            threads=threads,
            node_budget=budget,
        )
        if res.value != expect:
            failures.append(f"{moduli} t={t}: value {res.value} != {expect}")
    return _result(4, "modified constant at length nt over [2,2] and [3,3]", t0, failures)


def criterion_5_plain_multiples(threads: int = 1, budget: int = DEFAULT_NODE_BUDGET, **_) -> CriterionResult:
    """Plain constant over [2,2]: 6 at L={4}, 8 at L={6}."""
    t0 = time.perf_counter()
    failures = []
    for t, expect in ((2, 6), (3, 8)):
        res = compute_constant(
            make_group([2, 2]),
            LengthSpec.multiples(2, t),
            modified=False,
            threads=threads,
            node_budget=budget,
        )
        if res.value != expect:
            failures.append(f"t={t}: value {res.value} != {expect}")
    return _result(5, "plain constant at length 2t over [2,2]", t0, failures)


def criterion_6_rect_sandwich(threads: int = 1, budget: int = DEFAULT_NODE_BUDGET, **_) -> CriterionResult:
    """Stated sandwich for [2,4] at L={4}: bounds [3,8], exact value recorded.

    Expected to fail: the exact value is 9.  The stated upper bound 8 is
    refuted by a concrete zero-sum length-8 certificate with no zero-sum
    subsequence of length 4; the exact computation instead uses the
    companion candidate ceiling 9 (the variant whose non-divisor is taken
    from n1), which the search confirms.
    """
    t0 = time.perf_counter()
    failures = []
    group = make_group([2, 4])
    lens = LengthSpec.multiples(4, 1)
    table = theorem_table(group, lens, modified=True)
    if (table.lower, table.upper) != (3, 8):
        failures.append(f"stated bounds are ({table.lower}, {table.upper}), not (3, 8)")
    res = compute_constant(
        group, lens, modified=True, ceiling=9, threads=threads, node_budget=budget
    )
    detail_value = f"exact value recorded: {res.value}"
    refuting = [o for o in res.outcomes if o.length == 8 and not o.exhausted]
    if refuting:
        detail_value += (
            f"; stated upper bound 8 refuted by {format_seq(refuting[0].counterexample)}"
        )
    if not table.lower <= res.value <= table.upper:
        failures.append(
            f"{detail_value}; value {res.value} outside stated sandwich "
            f"[{table.lower}, {table.upper}]"
        )
    result = _result(6, "stated sandwich for [2,4] at L={4}", t0, failures)
    if result.passed:
        result = CriterionResult(
            result.number, result.name, True, detail_value, result.seconds
        )
    return result


_GRID_LOWER_GCD = [(n, t) for n in range(2, 13) for t in range(2, 5)]
_GRID_P3 = [(t,) for t in range(1, 5)]
_GRID_RECT = [
    (n1, n2) for n2 in range(2, 13) for n1 in range(1, n2 + 1) if n2 % n1 == 0
]
_GRID_EGZ = [(n, t) for n in range(2, 13) for t in range(1, 5)]


def criterion_7_construction_grid(**_) -> CriterionResult:
    """Every generator passes verification across the whole parameter grid."""
    t0 = time.perf_counter()
    failures = []
    grids = (
        ("lower_gcd", _GRID_LOWER_GCD, ("n", "t")),
        ("p3", _GRID_P3, ("t",)),
        ("rect_lower", _GRID_RECT, ("n1", "n2")),
        ("egz_lower", _GRID_EGZ, ("n", "t")),
    )
    checked = 0
    for name, grid, argnames in grids:
        for values in grid:
            params = dict(zip(argnames, values))
            spec, seq = build_construction(name, **params)
            report = verify_construction(spec, seq)
            checked += 1
            if not report.all_passed:
                bad = [c.name for c in report.checks if c.passed is False]
                failures.append(f"{name}{params}: failed {bad}")
    res = _result(7, "construction verifier grid", t0, failures)
    if res.passed:
        res = CriterionResult(res.number, res.name, True, f"{checked} instances verified", res.seconds)
    return res


def criterion_8_congruence_suites(**_) -> CriterionResult:
    """Residue suites: exhaustive at p=2,3 and sampled at p=5, zero failures."""
    t0 = time.perf_counter()
    failures = []
    runs = []
    for p, lengths in ((2, (4, 5)), (3, (7, 8))):
        runs += [congruences.run_exhaustive("reiher_2d", p, 2, L) for L in lengths]
    runs += [congruences.run_exhaustive("cw_rank3_shift", 2, 3, L) for L in (5, 6, 7)]
    runs.append(
        congruences.run_sampled("cw_rank3_full", 5, 3, 16, samples=10_000, seed=_SEED + 8)
    )
    runs.append(congruences.run_exhaustive("cw_general_full", 2, 4, 5))
    runs += [congruences.run_exhaustive("cw_general_shift", 2, 4, L) for L in (6, 7, 8, 9)]
    total = 0
    for rep in runs:
        total += rep["sequences_checked"]
        if rep["failures"]:
            failures.append(
                f"{rep['identity_id']} p={rep['p']} len={rep['length']}: "
                f"{rep['failures']} nonzero residues"
            )
    res = _result(8, "congruence residue suites", t0, failures)
    if res.passed:
        res = CriterionResult(
            res.number, res.name, True, f"{total} sequences, all residues 0", res.seconds
        )
    return res


def criterion_9_lset_and_dichotomy(**_) -> CriterionResult:
    """Exhaustive at p=2, d=3: the length-set bound and the dichotomy both hold."""
    t0 = time.perf_counter()
    failures = []
    lset = congruences.lset_bound_check(2, 3)
    if lset["failures"]:
        failures.append(f"lset bound: {lset['failures']} failures")
    dich = congruences.run_dichotomy_suite(2)
    if dich["failures"]:
        failures.append(f"dichotomy: {dich['failures']} failures")
    res = _result(9, "length-set bound and dichotomy at p=2, d=3", t0, failures)
    if res.passed:
        res = CriterionResult(
            res.number,
            res.name,
            True,
            f"{lset['sequences_checked']} zero-sum sequences checked",
            res.seconds,
        )
    return res


def criterion_10_count_properties(**_) -> CriterionResult:
    """Complement, translation, automorphism, and row-sum identities, 500x each."""
    t0 = time.perf_counter()
    rng = random.Random(_SEED + 10)
    pool = [m for m in _small_groups(max_order=16, max_rank=2) if math.prod(m) > 1]
    failures = []

    for trial in range(500):  # complement identity on zero-sum sequences
        group = make_group(rng.choice(pool))
        length = rng.randint(2, 10)
        elems = [group.element(rng.randrange(group.order)) for _ in range(length - 1)]
        acc = group.identity
        for e in elems:
            acc = group.add(acc, e)
        elems.append(group.neg(acc))
        seq = from_elements(group, elems)
        assert is_zero_sum(seq)
        k = rng.randint(0, length)
        if count_fixed_length(seq, k) != count_fixed_length(seq, length - k):
            failures.append(f"complement failed at {format_seq(seq)}, k={k}")
            break

    for trial in range(500):  # translation invariance for annihilating k
        group = make_group(rng.choice(pool))
        exp = group.exponent
        length = rng.randint(exp, exp + 8)
        seq = from_elements(
            group,
            [group.element(rng.randrange(group.order)) for _ in range(length)],
        )
        k = exp * rng.randint(1, length // exp)
        c = group.element(rng.randrange(group.order))
        if count_fixed_length(seq, k) != count_fixed_length(translate(seq, c), k):
            failures.append(f"translation failed at {format_seq(seq)}, k={k}, c={c}")
            break

    for trial in range(500):  # automorphism invariance
        group = make_group(rng.choice(pool))
        maps = automorphism_index_maps(group)
        length = rng.randint(1, 10)
        seq = from_elements(
            group,
            [group.element(rng.randrange(group.order)) for _ in range(length)],
        )
        k = rng.randint(0, length)
        phi = maps[rng.randrange(len(maps))]
        if count_fixed_length(seq, k) != count_fixed_length(apply_index_map(seq, phi), k):
            failures.append(f"automorphism failed at {format_seq(seq)}, k={k}")
            break

    for trial in range(500):  # row sums are binomials
        group = make_group(rng.choice(pool))
        length = rng.randint(0, 10)
        seq = from_elements(
            group,
            [group.element(rng.randrange(group.order)) for _ in range(length)],
        )
        k = rng.randint(0, length) if length else 0
        table = count_table(seq, k)
        if table.row_sum(k) != math.comb(length, k):
            failures.append(f"row sum failed at {format_seq(seq)}, k={k}")
            break

    return _result(10, "count-table identities on randomized instances", t0, failures)


_CRITERIA = (
    criterion_1_oracle_equivalence,
    criterion_2_kemnitz_small,
    criterion_3_modified_square,
    criterion_4_modified_multiples,
    criterion_5_plain_multiples,
    criterion_6_rect_sandwich,
    criterion_7_construction_grid,
    criterion_8_congruence_suites,
    criterion_9_lset_and_dichotomy,
    criterion_10_count_properties,
)


def run_all(
    only: int | None = None,
    threads: int = 1,
    budget: int = DEFAULT_NODE_BUDGET,
) -> list[CriterionResult]:
    results = []
    for i, fn in enumerate(_CRITERIA, start=1):
        if only is not None and i != only:
            continue
        results.append(fn(threads=threads, budget=budget))
    return results
