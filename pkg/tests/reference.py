"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here touches the package kernels; graphs are plain edge sets.
"""
from fractions import Fraction
from itertools import combinations

import numpy as np


def edge_set(g):
    return {(int(u), int(v)) for u, v in g.edges()}


def adjacency(g):
    return {v: set(g.adj(v).tolist()) for v in range(g.n)}


def sequential_coreness(g):
    """Peel one minimum-degree vertex at a time; label = running max degree."""
    adj = adjacency(g)
    deg = {v: len(a) for v, a in adj.items()}
    alive = set(adj)
    labels = [0] * g.n
    D = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        D = max(D, deg[v])
        labels[v] = D
        alive.remove(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    return labels


def sequential_load_order(g, loads):
    adj = adjacency(g)
    deg = {v: len(a) for v, a in adj.items()}
    alive = set(adj)
    out = []
    while alive:
        v = min(alive, key=lambda x: (loads[x] + deg[x], x))
        out.append(v)
        alive.remove(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    return out


def suffix_densities(g, perm):
    """Density of the subgraph induced by perm[i:], counted from the edge set."""
    edges = edge_set(g)
    out = []
    for i in range(len(perm)):
        keep = set(int(v) for v in perm[i:])
        m = sum(1 for u, v in edges if u in keep and v in keep)
        out.append(Fraction(m, len(keep)))
    return out


def naive_densest(g):
    """(rho*, witness) over all subsets via itertools, same tie-break as the oracle."""
    edges = edge_set(g)
    best, wit = Fraction(-1), None
    for k in range(1, g.n + 1):
        for sub in combinations(range(g.n), k):
            s = set(sub)
            d = Fraction(sum(1 for u, v in edges if u in s and v in s), k)
            if d > best:
                best, wit = d, sub
    return best, wit


def k_core_vertices(g, k):
    """Vertex set of the k-core by repeated removal of low-degree vertices."""
    adj = adjacency(g)
    alive = set(adj)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if len(adj[v] & alive) < k:
                alive.remove(v)
                changed = True
    return alive


def random_graph(rng, n, p):
    iu = np.triu_indices(n, 1)
    mask = rng.random(len(iu[0])) < p
    mask[0] = True  # never empty
    return np.column_stack((iu[0][mask], iu[1][mask]))
