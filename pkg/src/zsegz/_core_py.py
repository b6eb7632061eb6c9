"""Pure-Python compute kernels.

These are the reference implementations of the hot inner loops: subset-sum
count tables mod p, exhaustive congruence sweeps, and the pruned multiset
search for sequences without forbidden-length zero-sum subsequences.  The
compiled twin in ``_core_c.pyx`` must produce byte-identical results; the
parity tests enforce that.

Boolean "reachability" rows (is there a size-k subset with sum x?) are kept
as Python integers used as bitsets over the group elements; adding one copy
of an element shifts a bitset by that element, implemented as a pair of
masked shifts per nonzero coordinate of the element (a mixed-radix barrel
rotation).
"""

from __future__ import annotations

import math

IMPL = "pure"

SEARCH_EXHAUSTED = 0
SEARCH_LIMIT = 1
SEARCH_BUDGET = 2


def _strides(moduli):
    s = [1] * len(moduli)
    for i in range(len(moduli) - 2, -1, -1):
        s[i] = s[i + 1] * moduli[i + 1]
    return s


def _digits(idx, moduli, strides):
    return [(idx // s) % n for s, n in zip(strides, moduli)]


class _Shifter:
    """Per-element bitset shifts x -> x + e over the element enumeration."""

    def __init__(self, moduli):
        self.moduli = tuple(moduli)
        self.g = math.prod(self.moduli)
        strides = _strides(self.moduli)
        # ops[(coord, amount)] = (mask_low, up, mask_high, down)
        ops = {}
        for i, n in enumerate(self.moduli):
            for a in range(1, n):
                lo = hi = 0
                for idx in range(self.g):
                    if (idx // strides[i]) % n < n - a:
                        lo |= 1 << idx
                    else:
                        hi |= 1 << idx
                ops[(i, a)] = (lo, a * strides[i], hi, (n - a) * strides[i])
        self._ops = ops
        self._by_elem: dict[int, list] = {}
        self._strides = strides

    def ops_for(self, e_idx):
        cached = self._by_elem.get(e_idx)
        if cached is None:
            cached = [
                self._ops[(i, a)]
                for i, a in enumerate(_digits(e_idx, self.moduli, self._strides))
                if a
            ]
            self._by_elem[e_idx] = cached
        return cached

    def shift(self, mask, e_idx):
        for lo, up, hi, down in self.ops_for(e_idx):
            mask = ((mask & lo) << up) | ((mask & hi) >> down)
        return mask


def _as_lists(add_index):
    if hasattr(add_index, "tolist"):
        return add_index.tolist()
    return [list(row) for row in add_index]


def count_mod_table(moduli, entry_idx, entry_mult, kmax, p, add_index):
    """Subset-sum count table mod p: rows[k][x] = #(size-k subsets with sum x) mod p."""
    add = _as_lists(add_index)
    g = math.prod(moduli)
    rows = [[0] * g for _ in range(kmax + 1)]
    rows[0][0] = 1 % p
    filled = 0
    for e, mult in zip(entry_idx, entry_mult):
        col = [add[y][e] for y in range(g)]
        for _ in range(mult):
            filled = min(filled + 1, kmax)
            for k in range(filled, 0, -1):
                prev = rows[k - 1]
                cur = rows[k]
                for y in range(g):
                    v = prev[y]
                    if v:
                        t = col[y]
                        cur[t] = (cur[t] + v) % p
    return rows


def count_mod_identity_batch(moduli, seqs, kmax, p, add_index):
    """Identity-sum count rows mod p for a batch of explicit sequences.

    ``seqs`` is a B x m array of element indices; returns a B x (kmax+1)
    list of counts (k | J) mod p.
    """
    import numpy as np

    add = np.asarray(add_index, dtype=np.int64)
    seqs = np.asarray(seqs, dtype=np.int64)
    g = math.prod(moduli)
    neg = np.empty(g, dtype=np.int64)
    for e in range(g):
        neg[e] = int(np.nonzero(add[e] == 0)[0][0])
    # sub_by_elem[e][x] = index of (x - e)
    sub_by_elem = add[:, neg].T.copy()
    out = []
    B, m = seqs.shape if seqs.size else (0, 0)
    chunk = 2048
    for lo in range(0, B, chunk):
        part = seqs[lo : lo + chunk]
        nb = part.shape[0]
        dp = np.zeros((nb, kmax + 1, g), dtype=np.int64)
        dp[:, 0, 0] = 1 % p
        for t in range(m):
            idx = sub_by_elem[part[:, t]]  # (nb, g): x -> x - e_b
            top = min(t + 1, kmax)
            for k in range(top, 0, -1):
                shifted = np.take_along_axis(dp[:, k - 1, :], idx, axis=1)
                dp[:, k, :] = (dp[:, k, :] + shifted) % p
        out.extend(dp[:, :, 0].tolist())
    return out


def sweep_residues(
    moduli, m, kmax, p, add_index, coef, const, zero_sum_only, max_collect
):
    """Evaluate a count-congruence over every multiset of size ``m``.

    For each multiset J of size m over the group elements (optionally only
    zero-sum ones), computes ``(const + sum_k coef[k] * (k|J)) mod p`` and
    counts the nonzero residues.  Returns (checked, failures, failed
    multiplicity vectors up to max_collect, residues of those failures).
    """
    add = _as_lists(add_index)
    g = math.prod(moduli)
    coef = list(coef)
    active = [k for k in range(min(kmax, m) + 1) if coef[k] % p != 0]
    checked = 0
    failures = 0
    collected: list[tuple[int, ...]] = []
    residues: list[int] = []
    cvec = [0] * g

    if p == 2:
        shifter = _Shifter(moduli)
        rows0 = [1] + [0] * kmax

        def leaf(rows, s):
            nonlocal checked, failures
            if zero_sum_only and s != 0:
                return
            checked += 1
            r = const
            for k in active:
                r += coef[k] * (rows[k] & 1)
            if r % p:
                failures += 1
                if len(collected) < max_collect:
                    collected.append(tuple(cvec))
                    residues.append(r % p)

        def rec(depth, rows, r, s):
            if r == 0:
                for i in range(depth, g):
                    cvec[i] = 0
                leaf(rows, s)
                return
            if depth == g:
                return
            jmin = r if depth == g - 1 else 0
            used = m - r
            states = [rows]
            for j in range(1, r + 1):
                prev = states[-1]
                nxt = list(prev)
                for k in range(min(kmax, used + j), 0, -1):
                    below = prev[k - 1]
                    if below:
                        nxt[k] ^= shifter.shift(below, depth)
                states.append(nxt)
            s_j = s
            for j in range(jmin, r + 1):
                cvec[depth] = j
                rec(depth + 1, states[j], r - j, s_j)
                s_j = add[s_j][depth]
            cvec[depth] = 0

        rec(0, rows0, m, 0)
    else:

        def leaf(rows, s):
            nonlocal checked, failures
            if zero_sum_only and s != 0:
                return
            checked += 1
            r = const
            for k in active:
                r += coef[k] * rows[k][0]
            if r % p:
                failures += 1
                if len(collected) < max_collect:
                    collected.append(tuple(cvec))
                    residues.append(r % p)

        rows0 = [[0] * g for _ in range(kmax + 1)]
        rows0[0][0] = 1 % p

        def rec(depth, rows, r, s):
            if r == 0:
                for i in range(depth, g):
                    cvec[i] = 0
                leaf(rows, s)
                return
            if depth == g:
                return
            jmin = r if depth == g - 1 else 0
            used = m - r
            col = [add[y][depth] for y in range(g)]
            states = [rows]
            for j in range(1, r + 1):
                prev = states[-1]
                nxt = [list(row) for row in prev]
                for k in range(min(kmax, used + j), 0, -1):
                    below = prev[k - 1]
                    cur = nxt[k]
                    for y in range(g):
                        v = below[y]
                        if v:
                            t = col[y]
                            cur[t] = (cur[t] + v) % p
                states.append(nxt)
            s_j = s
            for j in range(jmin, r + 1):
                cvec[depth] = j
                rec(depth + 1, states[j], r - j, s_j)
                s_j = add[s_j][depth]
            cvec[depth] = 0

        rec(0, rows0, m, 0)

    return checked, failures, collected, residues


def search_absent(
    moduli,
    m,
    forbidden,
    add_index,
    accept,
    translate_cap,
    aut_perms,
    limit,
    node_budget,
):
    """Enumerate multisets of size ``m`` with no zero-sum subset of a forbidden size.

    Multisets are multiplicity vectors over the group's element enumeration,
    visited in lexicographically descending order.  A branch is pruned as
    soon as the partial multiset already contains a zero-sum subset whose
    size is forbidden.  A completed vector is a survivor when the total-sum
    index is flagged in ``accept``.

    ``translate_cap`` restricts to vectors whose identity multiplicity is
    maximal (one representative per translation orbit); ``aut_perms``
    (element-index permutations) additionally discards vectors that are not
    lexicographically maximal within their automorphism orbit, tested on
    decided prefixes only.

    Returns (survivors, nodes, status) with status one of SEARCH_EXHAUSTED,
    SEARCH_LIMIT (stopped at ``limit`` survivors), SEARCH_BUDGET.
    """
    add = _as_lists(add_index)
    g = math.prod(moduli)
    accept = list(accept)
    forb = sorted({k for k in forbidden if 1 <= k <= m})
    kmax = forb[-1] if forb else 0
    shifter = _Shifter(moduli)
    rows0 = tuple([1] + [0] * kmax)

    # A permutation can be compared on the prefix 0..i iff it maps that
    # index set onto itself, i.e. max(pm[0..i]) == i.
    perms = [tuple(pm) for pm in aut_perms] if aut_perms else []
    aut_by_depth: list[list[tuple[int, ...]]] = [[] for _ in range(g)]
    for pm in perms:
        mx = -1
        for i in range(g):
            mx = max(mx, pm[i])
            if mx == i:
                aut_by_depth[i].append(pm)

    survivors: list[tuple[int, ...]] = []
    nodes = 0
    status = SEARCH_EXHAUSTED
    cvec = [0] * g

    def add_copy(rows, e):
        """One more copy of element e; None if a forbidden size becomes reachable."""
        out = list(rows)
        for k in range(kmax, 0, -1):
            below = rows[k - 1]
            if below:
                out[k] |= shifter.shift(below, e)
        for k in forb:
            if out[k] & 1:
                return None
        return tuple(out)

    def rec(depth, rows, r, s):
        nonlocal nodes, status
        if status != SEARCH_EXHAUSTED:
            return
        if r == 0:
            if accept[s]:
                vec = tuple(cvec[:depth]) + (0,) * (g - depth)
                survivors.append(vec)
                if len(survivors) >= limit:
                    status = SEARCH_LIMIT
            return
        if depth == g:
            return
        if translate_cap:
            cap = r if depth == 0 else min(r, cvec[0])
        else:
            cap = r
        if depth == g - 1:
            jmin = r
        elif translate_cap:
            if depth == 0:
                jmin = -(-m // g)
            else:
                jmin = max(0, r - (g - 1 - depth) * cvec[0])
        else:
            jmin = 0
        if jmin > cap:
            return
        states = [rows]
        cap_eff = cap
        for j in range(1, cap + 1):
            nxt = add_copy(states[j - 1], depth)
            if nxt is None:
                cap_eff = j - 1
                break
            states.append(nxt)
        if cap_eff < jmin:
            return
        sums = [s]
        for _ in range(cap_eff):
            sums.append(add[sums[-1]][depth])
        for j in range(cap_eff, jmin - 1, -1):
            nodes += 1
            if nodes > node_budget:
                status = SEARCH_BUDGET
                return
            cvec[depth] = j
            pruned = False
            for pm in aut_by_depth[depth]:
                for t in range(depth + 1):
                    a = cvec[pm[t]]
                    b = cvec[t]
                    if a > b:
                        pruned = True
                        break
                    if a < b:
                        break
                if pruned:
                    break
            if pruned:
                continue
            rec(depth + 1, states[j], r - j, sums[j])
            if status != SEARCH_EXHAUSTED:
                return

    rec(0, rows0, m, 0)
    return survivors, nodes, status
