"""Exact counting of zero-sum subsequences.

``(k | J)`` denotes the number of size-k index subsets of the sequence J
whose elements sum to the group identity.  Counts are exact arbitrary
precision integers: row sums reach C(|J|, k), which overflows 64 bits well
inside desk scale, and the congruence checks need exact values to reduce.

Two independent routes are provided: a dynamic program over (size, sum)
convolving one distinct element at a time with binomial weights, and a
brute-force enumeration of multiplicity vectors used as its oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _core, _tables
from .groups import Element, Group
from .sequences import Seq, from_pairs


@dataclass(frozen=True)
class CountTable:
    """Dense table of subset-sum counts: counts[k][element index], exact."""

    group: Group
    kmax: int
    counts: tuple[tuple[int, ...], ...]

    def count(self, k: int, target: Element | None = None) -> int:
        idx = 0 if target is None else self.group.index(target)
        return self.counts[k][idx]

    def row_sum(self, k: int) -> int:
        return sum(self.counts[k])


def _sparse_layers(seq: Seq, kmax: int) -> list[dict[tuple[int, int], int]]:
    """DP layers after each distinct element; keys (size, sum index)."""
    g = seq.group
    add = _tables.add_index(g)
    layer: dict[tuple[int, int], int] = {(0, 0): 1}
    layers = [layer]
    for e, mult in seq.entries:
        ei = g.index(e)
        binom = [math.comb(mult, j) for j in range(mult + 1)]
        nxt: dict[tuple[int, int], int] = {}
        for (k, s), v in layer.items():
            si = s
            for j in range(mult + 1):
                kk = k + j
                if kk > kmax:
                    break
                key = (kk, si)
                w = v * binom[j]
                nxt[key] = nxt.get(key, 0) + w
                si = int(add[si, ei])
        layers.append(nxt)
        layer = nxt
    return layers


def count_table(seq: Seq, kmax: int) -> CountTable:
    """Exact counts of size-k subsets by target sum, for all k <= kmax."""
    if not 0 <= kmax <= seq.length:
        raise ValueError(f"kmax must lie in [0, {seq.length}], got {kmax}")
    g = seq.group
    final = _sparse_layers(seq, kmax)[-1]
    dense = [[0] * g.order for _ in range(kmax + 1)]
    for (k, s), v in final.items():
        dense[k][s] = v
    return CountTable(g, kmax, tuple(tuple(row) for row in dense))


def count_fixed_length(seq: Seq, k: int) -> int:
    """(k | J): the number of zero-sum subsequences of J of size k."""
    if not 0 <= k <= seq.length:
        raise ValueError(f"k must lie in [0, {seq.length}], got {k}")
    final = _sparse_layers(seq, k)[-1]
    return final.get((k, 0), 0)


def has_zero_sum_in(seq: Seq, lengths: set[int]) -> bool:
    """Whether (k | J) > 0 for some k in the given length set."""
    for k in lengths:
        if not 1 <= k <= seq.length:
            raise ValueError(f"length {k} outside [1, {seq.length}]")
    kmax = max(lengths, default=0)
    final = _sparse_layers(seq, kmax)[-1]
    return any(final.get((k, 0), 0) > 0 for k in lengths)


@dataclass(frozen=True)
class Witness:
    """A concrete zero-sum subsequence extracted from a parent sequence."""

    sub: Seq
    target_length: int


def find_zero_sum_subsequence(seq: Seq, k: int) -> Witness | None:
    """A zero-sum subsequence of size exactly k, or None if (k | J) = 0.

    Deterministic: backtracks through the DP layers taking, from the last
    distinct element backwards, the fewest copies feasible, which loads the
    witness onto the smallest elements with the largest multiplicities.
    """
    if not 0 <= k <= seq.length:
        raise ValueError(f"k must lie in [0, {seq.length}], got {k}")
    g = seq.group
    layers = _sparse_layers(seq, k)
    if layers[-1].get((k, 0), 0) == 0:
        return None
    add = _tables.add_index(g)
    need_k, need_s = k, 0
    taken: list[tuple[Element, int]] = []
    for i in range(len(seq.entries) - 1, -1, -1):
        e, mult = seq.entries[i]
        ei = g.index(e)
        neg_ei = g.index(g.neg(e))
        for j in range(mult + 1):
            if j > need_k:
                break
            s_back = need_s
            for _ in range(j):
                s_back = int(add[s_back, neg_ei])
            if layers[i].get((need_k - j, s_back), 0) > 0:
                if j:
                    taken.append((e, j))
                need_k -= j
                need_s = s_back
                break
        else:
            raise AssertionError("DP backtrack failed; table inconsistent")
    assert need_k == 0 and need_s == 0
    return Witness(from_pairs(g, taken), k)


def brute_force_count(seq: Seq, k: int, guard: int = 10**7) -> int:
    """(k | J) by direct enumeration of multiplicity vectors.

    Independent oracle for :func:`count_fixed_length`; shares no code with
    the DP.  Refuses instances with more than ``guard`` multiplicity
    combinations.
    """
    if not 0 <= k <= seq.length:
        raise ValueError(f"k must lie in [0, {seq.length}], got {k}")
    space = 1
    for _, m in seq.entries:
        space *= m + 1
        if space > guard:
            raise ValueError(f"instance too large for brute force (> {guard})")
    g = seq.group
    entries = seq.entries
    tail = [0] * (len(entries) + 1)
    for i in range(len(entries) - 1, -1, -1):
        tail[i] = tail[i + 1] + entries[i][1]
    total = 0

    def rec(i: int, left: int, acc: Element, ways: int):
        nonlocal total
        if left == 0:
            if acc == g.identity:
                total += ways
            return
        if i == len(entries) or left > tail[i]:
            return
        e, m = entries[i]
        run = acc
        for j in range(min(m, left) + 1):
            rec(i + 1, left - j, run, ways * math.comb(m, j))
            run = g.add(run, e)

    rec(0, k, g.identity, 1)
    return total


def count_mod(seq: Seq, kmax: int, p: int) -> list[list[int]]:
    """The count table reduced mod p, via the fast kernel DP.

    Same recurrence as :func:`count_table` but over integers mod p; used by
    the congruence suites where only residues matter.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    if not 0 <= kmax <= seq.length:
        raise ValueError(f"kmax must lie in [0, {seq.length}], got {kmax}")
    g = seq.group
    idx = [g.index(e) for e, _ in seq.entries]
    mults = [m for _, m in seq.entries]
    return _core.count_mod_table(
        g.moduli, idx, mults, kmax, p, _tables.add_index(g)
    )
