"""Exhaustive densest-subgraph oracle and executable pruning lemmas."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cores import exact_coreness
from .graph import Density, Graph

DEFAULT_LIMIT = 22


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    rho_star: Density
    witness: tuple[int, ...]  # dense ids, ascending


def subset_edge_counts(g: Graph) -> np.ndarray:
    """Edge count of the induced subgraph for every vertex bitmask.

    Built one vertex at a time: adding vertex k to a set S of lower vertices
    adds popcount(S & N(k)) edges, so the whole table costs O(2^n).
    """
    n = g.n
    counts = np.zeros(1 << n, dtype=np.int16)
    for k in range(n):
        nbr_mask = 0
        for u in g.adj(k).tolist():
            if u < k:
                nbr_mask |= 1 << u
        lower = np.arange(1 << k, dtype=np.uint32)
        counts[1 << k:1 << (k + 1)] = counts[:1 << k] + np.bitwise_count(
            lower & np.uint32(nbr_mask)).astype(np.int16)
    return counts


def brute_force_densest(g: Graph, limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Maximum density over all nonempty vertex subsets.

    Ties go to the smallest subset, then the lexicographically smallest id
    list.
    """
    if g.n > limit:
        raise OracleSizeError(f"oracle limited to {limit} vertices, graph has {g.n}")
    if g.n == 0:
        raise ValueError("empty graph has no densest subgraph")
    counts = subset_edge_counts(g)
    sizes = np.bitwise_count(np.arange(1 << g.n, dtype=np.uint32))
    best = None
    for k in range(1, g.n + 1):
        ek = int(counts[sizes == k].max())
        if best is None or Fraction(ek, k) > Fraction(*best):
            best = (ek, k)
    ek, k = best
    masks = np.flatnonzero((sizes == k) & (counts == ek))
    witness = min(tuple(v for v in range(g.n) if (int(m) >> v) & 1) for m in masks)
    return OracleResult(Density(ek, k), witness)


def check_degree_lemma(g: Graph, v: int) -> bool:
    """deg(v) < rho(g) implies removing v strictly raises the density."""
    d = int(g.degrees[v])
    if not d * g.n < g.m:
        return True
    if g.n == 1:
        return False
    return (g.m - d) * g.n > g.m * (g.n - 1)


def check_core_containment(g: Graph, k: int, limit: int = DEFAULT_LIMIT) -> bool:
    """Oracle witness lies inside the exact k-core."""
    labels = exact_coreness(g).labels
    witness = brute_force_densest(g, limit).witness
    return all(labels[v] >= k for v in witness)
