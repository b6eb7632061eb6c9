"""Count congruences over prime-power groups, checked exhaustively or by sample.

For a prime p and a sequence J over (Z/pZ)^d of a matching length, the
subset counts (k | J) at multiples (and shifted multiples) of p satisfy
linear congruences mod p, obtained by counting common zeros of diagonal
polynomial systems.  This module evaluates those residues, sweeps them
over exhaustive or sampled sequence sets, and checks the companion
dichotomy and length-set bounds.

Every suite emits a JSON-able report:
    {identity_id, p, d, length, sequences_checked, failures, seed, ...}
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from . import _core, _tables
from .counting import brute_force_count, count_fixed_length, count_mod, has_zero_sum_in
from .groups import Group, make_group
from .sequences import Seq, from_elements, from_mult_vector, is_zero_sum

_PRIME_CACHE: dict[int, bool] = {}


def _require_prime(p: int) -> None:
    ok = _PRIME_CACHE.get(p)
    if ok is None:
        ok = p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))
        _PRIME_CACHE[p] = ok
    if not ok:
        raise ValueError(f"p must be prime, got {p}")


def _require_shape(seq: Seq, p: int, d: int) -> None:
    if seq.group.moduli != (p,) * d:
        raise ValueError(
            f"sequence group {seq.group.moduli} is not the rank-{d} group mod {p}"
        )


def identity_terms(identity_id: str, p: int, d: int, length: int) -> dict[int, int]:
    """Signed coefficients {k: coef} of the residue 1 + sum coef_k * (k|J) mod p.

    Raises if the length does not match the identity's hypothesis.
    """
    _require_prime(p)
    if identity_id == "reiher_2d":
        if d != 2 or length not in (3 * p - 2, 3 * p - 1):
            raise ValueError(f"reiher_2d needs rank 2, length in {{3p-2, 3p-1}}, got {length}")
        return {p: -1, 2 * p: 1}
    if identity_id == "cw_rank3_full":
        if d != 3 or length != 4 * p - 4:
            raise ValueError(f"cw_rank3_full needs rank 3, length 4p-4, got {length}")
        return {p - 1: -1, p: -1, 2 * p - 1: 1, 2 * p: 1, 3 * p - 1: -1, 3 * p: -1}
    if identity_id == "cw_rank3_shift":
        if d != 3 or length not in (4 * p - 3, 4 * p - 2, 4 * p - 1):
            raise ValueError(
                f"cw_rank3_shift needs rank 3, length in {{4p-3,4p-2,4p-1}}, got {length}"
            )
        return {p: -1, 2 * p: 1, 3 * p: -1}
    if identity_id == "cw_general_full":
        if length != (d + 1) * (p - 1):
            raise ValueError(f"cw_general_full needs length (d+1)(p-1), got {length}")
        terms: dict[int, int] = {}
        for k in range(1, d + 1):
            sign = -1 if k % 2 else 1
            terms[k * p - 1] = terms.get(k * p - 1, 0) + sign
            terms[k * p] = terms.get(k * p, 0) + sign
        return terms
    if identity_id == "cw_general_shift":
        if not any(length == (d + 1) * p - m for m in range(1, d + 1)):
            raise ValueError(
                f"cw_general_shift needs length (d+1)p-m with 1<=m<={d}, got {length}"
            )
        return {k * p: (-1 if k % 2 else 1) for k in range(1, d + 1)}
    raise ValueError(f"unknown identity {identity_id!r}")


def _residue(seq: Seq, identity_id: str, p: int, d: int) -> int:
    terms = identity_terms(identity_id, p, d, seq.length)
    kmax = max(terms)
    rows = count_mod(seq, min(kmax, seq.length), p)
    acc = 1
    for k, coef in terms.items():
        if k <= seq.length:
            acc += coef * rows[k][0]
    return acc % p


def reiher_congruence(seq: Seq) -> int:
    """(1 - (p|J) + (2p|J)) mod p for rank-2 J of length 3p-2 or 3p-1."""
    p = seq.group.moduli[0]
    _require_prime(p)
    _require_shape(seq, p, 2)
    return _residue(seq, "reiher_2d", p, 2)


def cw_rank3_full(seq: Seq) -> int:
    """Alternating full residue for rank-3 J of length 4p-4.

    The congruence is established for p > 3; smaller primes are evaluated
    all the same so the reports can show whether the hypothesis bites.
    """
    p = seq.group.moduli[0]
    _require_prime(p)
    _require_shape(seq, p, 3)
    return _residue(seq, "cw_rank3_full", p, 3)


def cw_rank3_shift(seq: Seq) -> int:
    """(1 - (p|J) + (2p|J) - (3p|J)) mod p for rank-3 J, length 4p-3..4p-1."""
    p = seq.group.moduli[0]
    _require_prime(p)
    _require_shape(seq, p, 3)
    return _residue(seq, "cw_rank3_shift", p, 3)


def cw_general(seq: Seq, d: int | None = None) -> int:
    """General rank-d residue; picks the full or shifted shape by |J|."""
    if d is None:
        d = seq.group.rank
    p = seq.group.moduli[0]
    _require_prime(p)
    _require_shape(seq, p, d)
    if seq.length == (d + 1) * (p - 1):
        return _residue(seq, "cw_general_full", p, d)
    return _residue(seq, "cw_general_shift", p, d)


def iter_mult_vectors(
    group: Group, length: int, zero_sum_only: bool = False
) -> Iterator[Seq]:
    """All multisets of the given size over the group, as sequences."""
    g = group.order
    for combo in itertools.combinations_with_replacement(range(g), length):
        vec = [0] * g
        for i in combo:
            vec[i] += 1
        seq = from_mult_vector(group, vec)
        if zero_sum_only and not is_zero_sum(seq):
            continue
        yield seq


def sample_sequence(
    group: Group, length: int, rng: random.Random, zero_sum: bool = False
) -> Seq:
    """Uniform iid entries; with ``zero_sum`` the last entry completes the sum."""
    g = group.order
    if zero_sum and length < 1:
        raise ValueError("zero-sum sampling needs length >= 1")
    picks = [group.element(rng.randrange(g)) for _ in range(length - (1 if zero_sum else 0))]
    if zero_sum:
        acc = group.identity
        for e in picks:
            acc = group.add(acc, e)
        picks.append(group.neg(acc))
    return from_elements(group, picks)


def _hypothesis_note(identity_id: str, p: int) -> str | None:
    if identity_id in ("cw_rank3_full",) and p <= 3:
        return (
            f"p={p} lies outside the p > 3 hypothesis; residues recorded "
            "as observations, not asserted"
        )
    return None


def run_exhaustive(
    identity_id: str, p: int, d: int, length: int, collect: int = 5
) -> dict:
    """Sweep the identity over every multiset of one length; count failures."""
    _require_prime(p)
    group = make_group([p] * d)
    terms = identity_terms(identity_id, p, d, length)
    kmax = min(max(terms), length)
    coef = [0] * (kmax + 1)
    for k, c in terms.items():
        if k <= kmax:
            coef[k] = c
    checked, failures, fails, residues = _core.sweep_residues(
        group.moduli,
        length,
        kmax,
        p,
        _tables.add_index(group),
        coef,
        1,
        False,
        collect,
    )
    report = {
        "identity_id": identity_id,
        "p": p,
        "d": d,
        "length": length,
        "mode": "exhaustive",
        "sequences_checked": checked,
        "failures": failures,
        "seed": None,
    }
    note = _hypothesis_note(identity_id, p)
    if note:
        report["note"] = note
    if fails:
        report["failure_examples"] = [
            {"mult_vector": list(v), "residue": r} for v, r in zip(fails, residues)
        ]
    return report


def run_sampled(
    identity_id: str,
    p: int,
    d: int,
    length: int,
    samples: int,
    seed: int = 0,
    collect: int = 5,
) -> dict:
    """Sweep the identity over seeded uniform random sequences."""
    _require_prime(p)
    group = make_group([p] * d)
    terms = identity_terms(identity_id, p, d, length)
    kmax = min(max(terms), length)
    rng = random.Random(seed)
    g = group.order
    batch = [[rng.randrange(g) for _ in range(length)] for _ in range(samples)]
    rows = _core.count_mod_identity_batch(
        group.moduli, batch, kmax, p, _tables.add_index(group)
    )
    failures = 0
    examples = []
    for drawn, counts in zip(batch, rows):
        acc = 1
        for k, coef in terms.items():
            if k <= kmax:
                acc += coef * counts[k]
        if acc % p:
            failures += 1
            if len(examples) < collect:
                examples.append({"elements": sorted(drawn), "residue": acc % p})
    report = {
        "identity_id": identity_id,
        "p": p,
        "d": d,
        "length": length,
        "mode": "sample",
        "sequences_checked": samples,
        "failures": failures,
        "seed": seed,
    }
    note = _hypothesis_note(identity_id, p)
    if note:
        report["note"] = note
    if examples:
        report["failure_examples"] = examples
    return report


def dichotomy_4p(seq: Seq) -> dict:
    """For zero-sum rank-3 J of length 4p: (p|J) > 0 or (2p|J) > 0, expected true.

    Also records the complement identity (p|J) = (3p|J) that backs the
    expectation for zero-sum sequences.
    """
    p = seq.group.moduli[0]
    _require_prime(p)
    _require_shape(seq, p, 3)
    if seq.length != 4 * p:
        raise ValueError(f"need length 4p = {4 * p}, got {seq.length}")
    if not is_zero_sum(seq):
        raise ValueError("sequence must be zero-sum")
    cp = count_fixed_length(seq, p)
    c2p = count_fixed_length(seq, 2 * p)
    c3p = count_fixed_length(seq, 3 * p)
    return {
        "identity_id": "dichotomy_4p",
        "p": p,
        "count_p": cp,
        "count_2p": c2p,
        "count_3p": c3p,
        "complement_match": cp == c3p,
        "holds": cp > 0 or c2p > 0,
    }


def run_dichotomy_suite(
    p: int, samples: int | None = None, seed: int = 0, collect: int = 5
) -> dict:
    """Dichotomy over all (p=2) or sampled zero-sum length-4p rank-3 sequences."""
    _require_prime(p)
    group = make_group([p, p, p])
    length = 4 * p
    failures = 0
    checked = 0
    examples = []
    if samples is None:
        source: Iterator[Seq] = iter_mult_vectors(group, length, zero_sum_only=True)
    else:
        rng = random.Random(seed)
        source = (
            sample_sequence(group, length, rng, zero_sum=True) for _ in range(samples)
        )
    for seq in source:
        checked += 1
        rep = dichotomy_4p(seq)
        if not (rep["holds"] and rep["complement_match"]):
            failures += 1
            if len(examples) < collect:
                examples.append(str(seq))
    report = {
        "identity_id": "dichotomy_4p",
        "p": p,
        "d": 3,
        "length": length,
        "mode": "exhaustive" if samples is None else "sample",
        "sequences_checked": checked,
        "failures": failures,
        "seed": None if samples is None else seed,
    }
    if examples:
        report["failure_examples"] = examples
    return report


def lset_bound_check(
    p: int,
    d: int,
    samples: int | None = None,
    seed: int = 0,
    collect: int = 5,
    oracle_first: int = 10,
) -> dict:
    """Every zero-sum sequence of length (d+1)p has a zero-sum subsequence
    with length in {p, 2p, ..., (d-1)p}.

    Exhaustive when ``samples`` is None (sensible only for tiny p^d); the
    first ``oracle_first`` sequences are cross-checked against the
    brute-force counter.
    """
    _require_prime(p)
    if d < 2:
        raise ValueError("need d >= 2")
    group = make_group([p] * d)
    length = (d + 1) * p
    lset = {k * p for k in range(1, d)}
    failures = 0
    checked = 0
    examples = []
    if samples is None:
        source: Iterator[Seq] = iter_mult_vectors(group, length, zero_sum_only=True)
    else:
        rng = random.Random(seed)
        source = (
            sample_sequence(group, length, rng, zero_sum=True) for _ in range(samples)
        )
    for seq in source:
        checked += 1
        ok = has_zero_sum_in(seq, lset)
        if checked <= oracle_first:
            oracle = any(brute_force_count(seq, k) > 0 for k in lset)
            if oracle != ok:
                raise AssertionError(
                    f"oracle disagrees with has_zero_sum_in on {seq}"
                )
        if not ok:
            failures += 1
            if len(examples) < collect:
                examples.append(str(seq))
    report = {
        "identity_id": "lset_bound",
        "p": p,
        "d": d,
        "length": length,
        "lengths_allowed": sorted(lset),
        "mode": "exhaustive" if samples is None else "sample",
        "sequences_checked": checked,
        "failures": failures,
        "seed": None if samples is None else seed,
    }
    if examples:
        report["failure_examples"] = examples
    return report
