"""Pure Python/numpy kernels; drop-in twins of the compiled ``_kernels``."""
import heapq

import numpy as np


def threshold_peel(offsets, neighbors, thresholds):
    offsets = np.asarray(offsets, dtype=np.int64)
    n = len(offsets) - 1
    deg = np.diff(offsets).tolist()
    adj = np.asarray(neighbors, dtype=np.int64).tolist()
    off = offsets.tolist()
    thresholds = [int(t) for t in thresholds]
    maxdeg = max(deg, default=0)
    buckets = [[] for _ in range(maxdeg + 1)]
    for v, d in enumerate(deg):
        buckets[d].append(v)
    alive = [True] * n
    queued = [False] * n
    labels = [0] * n
    order = []
    rdeg = []
    rounds = 0
    for p in range(len(thresholds) - 1):
        if len(order) == n:
            break
        lo, hi = thresholds[p], thresholds[p + 1]
        frontier = []
        for x in range(lo, min(hi, maxdeg + 1)):
            for v in buckets[x]:
                if alive[v] and deg[v] == x and not queued[v]:
                    queued[v] = True
                    frontier.append(v)
            buckets[x] = []
        while frontier:
            rounds += 1
            frontier.sort()
            for v in frontier:
                alive[v] = False
                labels[v] = lo
                order.append(v)
                rdeg.append(deg[v])
            nxt = []
            for v in frontier:
                for u in adj[off[v]:off[v + 1]]:
                    if not alive[u]:
                        continue
                    deg[u] -= 1
                    d = deg[u]
                    if d < hi:
                        if not queued[u]:
                            queued[u] = True
                            nxt.append(u)
                    else:
                        buckets[d].append(u)
            frontier = nxt
    if len(order) != n:
        raise ValueError("thresholds do not cover the maximum degree")
    as_arr = lambda xs: np.asarray(xs, dtype=np.int64)
    return as_arr(labels), as_arr(order), as_arr(rdeg), rounds


def load_peel(offsets, neighbors, loads, batch=True):
    offsets = np.asarray(offsets, dtype=np.int64)
    n = len(offsets) - 1
    off = offsets.tolist()
    adj = np.asarray(neighbors, dtype=np.int64).tolist()
    key = (np.asarray(loads, dtype=np.int64) + np.diff(offsets)).tolist()
    heap = [(k, v) for v, k in enumerate(key)]
    heapq.heapify(heap)
    alive = [True] * n
    perm = []
    while heap:
        kmin, v = heap[0]
        if not alive[v] or key[v] != kmin:
            heapq.heappop(heap)
            continue
        group = []
        while heap and heap[0][0] == kmin:
            _, v = heapq.heappop(heap)
            if alive[v] and key[v] == kmin:
                alive[v] = False
                group.append(v)
                if not batch:
                    break
        perm.extend(group)
        for v in group:
            for u in adj[off[v]:off[v + 1]]:
                if alive[u]:
                    key[u] -= 1
                    heapq.heappush(heap, (key[u], u))
    return np.asarray(perm, dtype=np.int64)


def charge_counts(offsets, neighbors, perm, nthreads=1):
    offsets = np.asarray(offsets, dtype=np.int64)
    perm = np.asarray(perm, dtype=np.int64)
    n = len(offsets) - 1
    if len(perm) != n:
        raise ValueError("ordering length does not match vertex count")
    if n and (perm.min() < 0 or perm.max() >= n or len(np.unique(perm)) != n):
        raise ValueError("ordering is not a permutation")
    rank = np.empty(n, dtype=np.int64)
    rank[perm] = np.arange(n, dtype=np.int64)
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
    dst = np.asarray(neighbors, dtype=np.int64)
    rs, rd = rank[src], rank[dst]
    # each undirected edge appears twice; count it from its earlier endpoint
    return np.bincount(rs[rs < rd], minlength=n).astype(np.int64)


def best_suffix(A):
    A = np.asarray(A, dtype=np.int64)
    n = len(A)
    B = np.cumsum(A[::-1])[::-1].astype(np.int64)
    if n == 0:
        return B, 0
    approx = B / np.arange(n, 0, -1)
    top = approx.max()
    cands = np.flatnonzero(approx >= top * (1 - 1e-12))
    best = int(cands[0])
    for i in cands[1:].tolist():
        if int(B[i]) * (n - best) > int(B[best]) * (n - i):
            best = i
    return B, best


def add_loads(loads, perm, A, nthreads=1):
    loads[np.asarray(perm)] += np.asarray(A)


def counting_sort(keys):
    return np.argsort(np.asarray(keys, dtype=np.int64), kind="stable").astype(np.int64)
