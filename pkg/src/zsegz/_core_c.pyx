# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute kernels; must match _core_py result-for-result.

Same entry points and semantics as the pure-Python core: subset-sum count
tables mod p, exhaustive congruence sweeps over all multisets of a given
size, and the pruned lexicographic search for multisets without
forbidden-length zero-sum subsets.  Traversal order, node counting and
pruning decisions mirror the pure implementation exactly so that survivor
lists and node counts are byte-identical.
"""

import math

import numpy as np

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

IMPL = "compiled"

SEARCH_EXHAUSTED = 0
SEARCH_LIMIT = 1
SEARCH_BUDGET = 2


def count_mod_table(moduli, entry_idx, entry_mult, int kmax, int p, add_index):
    """Subset-sum count table mod p: rows[k][x] = #(size-k subsets with sum x) mod p."""
    cdef long[:, ::1] add = np.ascontiguousarray(add_index, dtype=np.int64)
    cdef int g = add.shape[0]
    cdef long[:, ::1] rows = np.zeros((kmax + 1, g), dtype=np.int64)
    rows[0, 0] = 1 % p
    cdef int filled = 0
    cdef int e, mult, i, k, y, t
    cdef long v
    idxs = list(entry_idx)
    mults = list(entry_mult)
    for e, mult in zip(idxs, mults):
        for i in range(mult):
            filled = min(filled + 1, kmax)
            for k in range(filled, 0, -1):
                for y in range(g):
                    v = rows[k - 1, y]
                    if v:
                        t = add[y, e]
                        rows[k, t] = (rows[k, t] + v) % p
    return np.asarray(rows).tolist()


def count_mod_identity_batch(moduli, seqs, int kmax, int p, add_index):
    """Identity-sum count rows mod p for a batch of explicit sequences."""
    if not len(seqs):
        return []
    cdef long[:, ::1] add = np.ascontiguousarray(add_index, dtype=np.int64)
    cdef long[:, ::1] sq = np.ascontiguousarray(seqs, dtype=np.int64)
    cdef int g = add.shape[0]
    cdef int B = sq.shape[0]
    cdef int m = sq.shape[1] if B else 0
    cdef long[:, ::1] dp = np.zeros((kmax + 1, g), dtype=np.int64)
    out = []
    cdef int b, t, k, y, tgt, e, filled
    cdef long v
    for b in range(B):
        dp[:, :] = 0
        dp[0, 0] = 1 % p
        filled = 0
        for t in range(m):
            e = sq[b, t]
            filled = min(filled + 1, kmax)
            for k in range(filled, 0, -1):
                for y in range(g):
                    v = dp[k - 1, y]
                    if v:
                        tgt = add[y, e]
                        dp[k, tgt] = (dp[k, tgt] + v) % p
        out.append([int(dp[k, 0]) for k in range(kmax + 1)])
    return out


cdef class _Sweep:
    cdef int g, m, kmax, p, max_collect
    cdef bint zero_sum_only
    cdef long const
    cdef long[:, ::1] add
    cdef long[::1] coef
    cdef long checked, failures
    cdef int* cvec
    cdef list collected
    cdef list residues

    def __cinit__(self):
        self.cvec = NULL

    def __dealloc__(self):
        if self.cvec != NULL:
            free(self.cvec)

    cdef int rec(self, int depth, long* rows, int r, int s) except -1:
        cdef int g = self.g
        cdef int kmax = self.kmax
        cdef int rowlen = (kmax + 1) * g
        cdef int i, j, k, y, tgt, jmin, used, s_j
        cdef long v, res
        cdef long* states
        cdef long* prev
        cdef long* nxt
        if r == 0:
            for i in range(depth, g):
                self.cvec[i] = 0
            if self.zero_sum_only and s != 0:
                return 0
            self.checked += 1
            res = self.const
            for k in range(min(kmax, self.m) + 1):
                if self.coef[k] % self.p != 0:
                    res += self.coef[k] * rows[k * g]
            if res % self.p:
                self.failures += 1
                if len(self.collected) < self.max_collect:
                    self.collected.append(tuple([self.cvec[i] for i in range(g)]))
                    self.residues.append(int(res % self.p))
            return 0
        if depth == g:
            return 0
        jmin = r if depth == g - 1 else 0
        used = self.m - r
        states = <long*> malloc((r + 1) * rowlen * sizeof(long))
        if states == NULL:
            raise MemoryError()
        try:
            memcpy(states, rows, rowlen * sizeof(long))
            for j in range(1, r + 1):
                prev = states + (j - 1) * rowlen
                nxt = states + j * rowlen
                memcpy(nxt, prev, rowlen * sizeof(long))
                for k in range(min(kmax, used + j), 0, -1):
                    for y in range(g):
                        v = prev[(k - 1) * g + y]
                        if v:
                            tgt = self.add[y, depth]
                            nxt[k * g + tgt] = (nxt[k * g + tgt] + v) % self.p
            s_j = s
            for j in range(jmin, r + 1):
                self.cvec[depth] = j
                self.rec(depth + 1, states + j * rowlen, r - j, s_j)
                s_j = self.add[s_j, depth]
            self.cvec[depth] = 0
        finally:
            free(states)
        return 0


def sweep_residues(
    moduli, int m, int kmax, int p, add_index, coef, long const,
    bint zero_sum_only, int max_collect
):
    """Evaluate a count-congruence over every multiset of size ``m``."""
    cdef _Sweep sw = _Sweep()
    sw.add = np.ascontiguousarray(add_index, dtype=np.int64)
    sw.g = sw.add.shape[0]
    sw.m = m
    sw.kmax = kmax
    sw.p = p
    sw.const = const
    sw.zero_sum_only = zero_sum_only
    sw.max_collect = max_collect
    sw.coef = np.ascontiguousarray(list(coef), dtype=np.int64)
    sw.checked = 0
    sw.failures = 0
    sw.collected = []
    sw.residues = []
    sw.cvec = <int*> malloc(sw.g * sizeof(int))
    if sw.cvec == NULL:
        raise MemoryError()
    memset(sw.cvec, 0, sw.g * sizeof(int))
    cdef long* rows0 = <long*> malloc((kmax + 1) * sw.g * sizeof(long))
    if rows0 == NULL:
        raise MemoryError()
    try:
        memset(rows0, 0, (kmax + 1) * sw.g * sizeof(long))
        rows0[0] = 1 % p
        sw.rec(0, rows0, m, 0)
    finally:
        free(rows0)
    return int(sw.checked), int(sw.failures), sw.collected, sw.residues


cdef class _Search:
    cdef int g, m, kmax, limit
    cdef bint translate_cap
    cdef long nodes, budget
    cdef int status
    cdef long[:, ::1] add
    cdef unsigned char[::1] accept
    cdef int n_forb
    cdef int* forb
    cdef int* cvec
    cdef int n_perms
    cdef int* perms          # n_perms * g, row-major
    cdef int* aut_ptr        # g + 1 CSR offsets into aut_ids
    cdef int* aut_ids
    cdef list survivors

    def __cinit__(self):
        self.forb = NULL
        self.cvec = NULL
        self.perms = NULL
        self.aut_ptr = NULL
        self.aut_ids = NULL

    def __dealloc__(self):
        if self.forb != NULL:
            free(self.forb)
        if self.cvec != NULL:
            free(self.cvec)
        if self.perms != NULL:
            free(self.perms)
        if self.aut_ptr != NULL:
            free(self.aut_ptr)
        if self.aut_ids != NULL:
            free(self.aut_ids)

    cdef bint add_copy(self, unsigned char* src, unsigned char* dst, int e):
        """One more copy of element e; False if a forbidden size becomes reachable."""
        cdef int g = self.g
        cdef int k, x, i
        memcpy(dst, src, (self.kmax + 1) * g * sizeof(unsigned char))
        for k in range(self.kmax, 0, -1):
            for x in range(g):
                if src[(k - 1) * g + x]:
                    dst[k * g + self.add[x, e]] = 1
        for i in range(self.n_forb):
            if dst[self.forb[i] * g]:
                return False
        return True

    cdef int rec(self, int depth, unsigned char* rows, int r, int s) except -1:
        cdef int g = self.g
        cdef int rowlen = (self.kmax + 1) * g
        cdef int i, j, k, t, cap, jmin, cap_eff, a, b, pid
        cdef bint pruned
        cdef int* pm
        cdef unsigned char* states
        cdef int* sums
        if self.status != 0:
            return 0
        if r == 0:
            if self.accept[s]:
                vec = tuple([self.cvec[i] for i in range(depth)]) + (0,) * (g - depth)
                self.survivors.append(vec)
                if len(self.survivors) >= self.limit:
                    self.status = 1
            return 0
        if depth == g:
            return 0
        if self.translate_cap:
            cap = r if depth == 0 else min(r, self.cvec[0])
        else:
            cap = r
        if depth == g - 1:
            jmin = r
        elif self.translate_cap:
            if depth == 0:
                jmin = (self.m + g - 1) // g
            else:
                jmin = r - (g - 1 - depth) * self.cvec[0]
                if jmin < 0:
                    jmin = 0
        else:
            jmin = 0
        if jmin > cap:
            return 0
        states = <unsigned char*> malloc((cap + 1) * rowlen)
        sums = <int*> malloc((cap + 1) * sizeof(int))
        if states == NULL or sums == NULL:
            if states != NULL:
                free(states)
            if sums != NULL:
                free(sums)
            raise MemoryError()
        try:
            memcpy(states, rows, rowlen)
            cap_eff = cap
            for j in range(1, cap + 1):
                if not self.add_copy(
                    states + (j - 1) * rowlen, states + j * rowlen, depth
                ):
                    cap_eff = j - 1
                    break
            if cap_eff < jmin:
                return 0
            sums[0] = s
            for j in range(1, cap_eff + 1):
                sums[j] = self.add[sums[j - 1], depth]
            for j in range(cap_eff, jmin - 1, -1):
                self.nodes += 1
                if self.nodes > self.budget:
                    self.status = 2
                    return 0
                self.cvec[depth] = j
                pruned = False
                for pid in range(self.aut_ptr[depth], self.aut_ptr[depth + 1]):
                    pm = self.perms + self.aut_ids[pid] * g
                    for t in range(depth + 1):
                        a = self.cvec[pm[t]]
                        b = self.cvec[t]
                        if a > b:
                            pruned = True
                            break
                        if a < b:
                            break
                    if pruned:
                        break
                if pruned:
                    continue
                self.rec(depth + 1, states + j * rowlen, r - j, sums[j])
                if self.status != 0:
                    return 0
        finally:
            free(states)
            free(sums)
        return 0


def search_absent(
    moduli, int m, forbidden, add_index, accept, bint translate_cap,
    aut_perms, int limit, long node_budget
):
    """Enumerate multisets of size m with no zero-sum subset of a forbidden size.

    See the pure core for the full contract; results are identical.
    """
    cdef _Search st = _Search()
    st.add = np.ascontiguousarray(add_index, dtype=np.int64)
    st.g = st.add.shape[0]
    st.m = m
    st.limit = limit
    st.budget = node_budget
    st.nodes = 0
    st.status = 0
    st.translate_cap = translate_cap
    st.survivors = []
    st.accept = np.ascontiguousarray(
        [1 if x else 0 for x in accept], dtype=np.uint8
    )

    forb = sorted({k for k in forbidden if 1 <= k <= m})
    st.kmax = forb[len(forb) - 1] if forb else 0
    st.n_forb = len(forb)
    st.forb = <int*> malloc(max(1, st.n_forb) * sizeof(int))
    cdef int i, j
    for i in range(st.n_forb):
        st.forb[i] = forb[i]

    st.cvec = <int*> malloc(st.g * sizeof(int))
    memset(st.cvec, 0, st.g * sizeof(int))

    perms = [tuple(pm) for pm in aut_perms] if aut_perms else []
    st.n_perms = len(perms)
    st.perms = <int*> malloc(max(1, st.n_perms * st.g) * sizeof(int))
    for i in range(st.n_perms):
        for j in range(st.g):
            st.perms[i * st.g + j] = perms[i][j]
    # CSR of perms applicable at each depth: max(pm[0..d]) == d.
    by_depth = [[] for _ in range(st.g)]
    for i, pm in enumerate(perms):
        mx = -1
        for d in range(st.g):
            mx = max(mx, pm[d])
            if mx == d:
                by_depth[d].append(i)
    st.aut_ptr = <int*> malloc((st.g + 1) * sizeof(int))
    total = sum(len(row) for row in by_depth)
    st.aut_ids = <int*> malloc(max(1, total) * sizeof(int))
    pos = 0
    for d in range(st.g):
        st.aut_ptr[d] = pos
        for pid in by_depth[d]:
            st.aut_ids[pos] = pid
            pos += 1
    st.aut_ptr[st.g] = pos

    cdef int rowlen = (st.kmax + 1) * st.g
    cdef unsigned char* rows0 = <unsigned char*> malloc(rowlen)
    if rows0 == NULL:
        raise MemoryError()
    try:
        memset(rows0, 0, rowlen)
        rows0[0] = 1
        st.rec(0, rows0, m, 0)
    finally:
        free(rows0)
    return st.survivors, int(st.nodes), int(st.status)
