# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled peeling and charging kernels.

Every function here has a line-for-line counterpart in ``_pure.py``; the two
must return identical arrays.
"""
import numpy as np

cimport numpy as cnp
from cython.parallel cimport prange
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libcpp.vector cimport vector

ctypedef long long i64
ctypedef pair[i64, i64] entry

cnp.import_array()


def threshold_peel(const i64[::1] offsets, const i64[::1] neighbors,
                   const i64[::1] thresholds):
    """Batch-peel against increasing degree thresholds.

    Phase p assigns label ``thresholds[p]`` to every vertex peeled while its
    residual degree is below ``thresholds[p + 1]``.  Returns
    ``(labels, order, removal_degree, rounds)``.
    """
    cdef i64 n = offsets.shape[0] - 1
    cdef i64 nphase = thresholds.shape[0] - 1
    cdef i64[::1] deg = np.empty(n, dtype=np.int64)
    cdef i64[::1] labels = np.zeros(n, dtype=np.int64)
    cdef i64[::1] order = np.empty(n, dtype=np.int64)
    cdef i64[::1] rdeg = np.empty(n, dtype=np.int64)
    cdef cnp.uint8_t[::1] alive = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] queued = np.zeros(n, dtype=np.uint8)
    cdef i64 v, u, j, d, p, lo, hi, x, maxdeg = 0
    cdef i64 done = 0, rounds = 0
    cdef vector[i64] frontier, nxt
    cdef vector[vector[i64]] buckets

    for v in range(n):
        deg[v] = offsets[v + 1] - offsets[v]
        if deg[v] > maxdeg:
            maxdeg = deg[v]
    buckets.resize(maxdeg + 1)
    for v in range(n):
        buckets[deg[v]].push_back(v)

    for p in range(nphase):
        if done == n:
            break
        lo = thresholds[p]
        hi = thresholds[p + 1]
        frontier.clear()
        x = lo
        while x < hi and x <= maxdeg:
            for j in range(<i64>buckets[x].size()):
                v = buckets[x][j]
                if alive[v] and deg[v] == x and not queued[v]:
                    queued[v] = 1
                    frontier.push_back(v)
            buckets[x].clear()
            x += 1
        while frontier.size() > 0:
            rounds += 1
            _sort_ids(frontier)
            for j in range(<i64>frontier.size()):
                v = frontier[j]
                alive[v] = 0
                labels[v] = lo
                order[done] = v
                rdeg[done] = deg[v]
                done += 1
            nxt.clear()
            for j in range(<i64>frontier.size()):
                v = frontier[j]
                for x in range(offsets[v], offsets[v + 1]):
                    u = neighbors[x]
                    if not alive[u]:
                        continue
                    deg[u] -= 1
                    d = deg[u]
                    if d < hi:
                        if not queued[u]:
                            queued[u] = 1
                            nxt.push_back(u)
                    else:
                        buckets[d].push_back(u)
            frontier.swap(nxt)
    if done != n:
        raise ValueError("thresholds do not cover the maximum degree")
    return (np.asarray(labels), np.asarray(order), np.asarray(rdeg), rounds)


cdef void _sort_ids(vector[i64]& ids) noexcept nogil:
    # insertion sort for tiny batches, heap otherwise
    cdef i64 i, j, t, k = ids.size()
    cdef priority_queue[i64] pq
    if k < 32:
        for i in range(1, k):
            t = ids[i]
            j = i - 1
            while j >= 0 and ids[j] > t:
                ids[j + 1] = ids[j]
                j -= 1
            ids[j + 1] = t
        return
    for i in range(k):
        pq.push(-ids[i])
    for i in range(k):
        ids[i] = -pq.top()
        pq.pop()


def load_peel(const i64[::1] offsets, const i64[::1] neighbors,
              const i64[::1] loads, bint batch=True):
    """Peel by minimum ``load + residual degree``.

    With ``batch`` every vertex sharing the current minimum key leaves in one
    round (ascending id) and neighbor degrees drop after the round.  Without
    it a single vertex (smallest key, then id) leaves per step.
    """
    cdef i64 n = offsets.shape[0] - 1
    cdef i64[::1] key = np.empty(n, dtype=np.int64)
    cdef i64[::1] perm = np.empty(n, dtype=np.int64)
    cdef cnp.uint8_t[::1] alive = np.ones(n, dtype=np.uint8)
    cdef priority_queue[entry] pq
    cdef vector[i64] group
    cdef i64 v, u, x, j, kmin, done = 0
    cdef entry top

    for v in range(n):
        key[v] = loads[v] + offsets[v + 1] - offsets[v]
        pq.push(entry(-key[v], -v))
    while not pq.empty():
        top = pq.top()
        v = -top.second
        if not alive[v] or key[v] != -top.first:
            pq.pop()
            continue
        kmin = -top.first
        group.clear()
        while not pq.empty() and -pq.top().first == kmin:
            top = pq.top()
            v = -top.second
            pq.pop()
            if alive[v] and key[v] == kmin:
                alive[v] = 0
                group.push_back(v)
                if not batch:
                    break
        for j in range(<i64>group.size()):
            v = group[j]
            perm[done] = v
            done += 1
        for j in range(<i64>group.size()):
            v = group[j]
            for x in range(offsets[v], offsets[v + 1]):
                u = neighbors[x]
                if alive[u]:
                    key[u] -= 1
                    pq.push(entry(-key[u], -u))
    return np.asarray(perm)


def charge_counts(const i64[::1] offsets, const i64[::1] neighbors,
                  const i64[::1] perm, int nthreads=1):
    """``A[i]`` = number of edges whose earlier endpoint sits at position i."""
    cdef i64 n = offsets.shape[0] - 1
    cdef i64[::1] rank = np.empty(n, dtype=np.int64)
    cdef i64[::1] A = np.zeros(n, dtype=np.int64)
    cdef i64 i, v, x, c
    if perm.shape[0] != n:
        raise ValueError("ordering length does not match vertex count")
    for i in range(n):
        rank[i] = -1
    for i in range(n):
        v = perm[i]
        if v < 0 or v >= n or rank[v] != -1:
            raise ValueError("ordering is not a permutation")
        rank[v] = i
    # one writer per slot, so no atomics are needed
    for i in prange(n, nogil=True, schedule="static", num_threads=max(nthreads, 1)):
        v = perm[i]
        c = 0
        for x in range(offsets[v], offsets[v + 1]):
            if rank[neighbors[x]] > i:
                c = c + 1
        A[i] = c
    return np.asarray(A)


def best_suffix(const i64[::1] A):
    """Suffix sums of ``A`` and the first position maximizing B[i] / (n - i)."""
    cdef i64 n = A.shape[0]
    cdef i64[::1] B = np.zeros(n, dtype=np.int64)
    cdef i64 i, acc = 0, best = 0
    for i in range(n - 1, -1, -1):
        acc += A[i]
        B[i] = acc
    for i in range(1, n):
        # B[i]/(n-i) > B[best]/(n-best), exact in 64-bit for m, n < 2**31
        if B[i] * (n - best) > B[best] * (n - i):
            best = i
    return np.asarray(B), best


def add_loads(i64[::1] loads, const i64[::1] perm, const i64[::1] A, int nthreads=1):
    cdef i64 i, n = perm.shape[0]
    for i in prange(n, nogil=True, schedule="static", num_threads=max(nthreads, 1)):
        loads[perm[i]] += A[i]


def counting_sort(const i64[::1] keys):
    """Stable order of integer keys; bucket pass when the range is small."""
    cdef i64 n = keys.shape[0], i, k, hi = 0, lo = 0
    for i in range(n):
        if keys[i] > hi:
            hi = keys[i]
        if keys[i] < lo:
            lo = keys[i]
    if lo < 0 or hi > 4 * n + 16:
        return np.argsort(np.asarray(keys), kind="stable").astype(np.int64)
    cdef i64[::1] start = np.zeros(hi + 2, dtype=np.int64)
    cdef i64[::1] perm = np.empty(n, dtype=np.int64)
    for i in range(n):
        start[keys[i] + 1] += 1
    for k in range(hi + 1):
        start[k + 1] += start[k]
    for i in range(n):
        k = keys[i]
        perm[start[k]] = i
        start[k] += 1
    return np.asarray(perm)
