"""One refinement iteration: order the vertices, then charge every edge to
its earlier endpoint to get all suffix densities and the load increments."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .graph import Density, Graph

PEEL = "peel"
SORT = "sort"


@dataclass(frozen=True)
class Ordering:
    perm: np.ndarray
    kind: str


@dataclass(frozen=True)
class RefineOutcome:
    """Result of one density-and-load pass.

    ``best_prefix`` is 0-based: the best subgraph is induced by
    ``perm[best_prefix:]``.  ``charges[i]`` is the load added to ``perm[i]``
    and ``remaining[i]`` the edge count left once positions < i are peeled.
    """

    rho_max: Density
    best_prefix: int
    width: int
    charges: np.ndarray
    remaining: np.ndarray
    perm: np.ndarray

    def density_at(self, i: int) -> Density:
        return Density(int(self.remaining[i]), len(self.perm) - i)

    def densities(self) -> list[Density]:
        return [self.density_at(i) for i in range(len(self.perm))]

    def witness(self) -> np.ndarray:
        return self.perm[self.best_prefix:]


def new_loads(n: int) -> np.ndarray:
    return np.zeros(n, dtype=np.int64)


def load_peel_order(g: Graph, loads, batch: bool = True) -> Ordering:
    """Peel by minimum load + residual degree, all minimum-key vertices at once.

    ``batch=False`` peels one vertex per step (ties by id) with immediate
    degree updates, i.e. the sequential load ordering.
    """
    loads = np.ascontiguousarray(loads, dtype=np.int64)
    if len(loads) != g.n:
        raise ValueError(f"loads has length {len(loads)}, graph has {g.n} vertices")
    perm = kernels.load_peel(g.offsets, g.neighbors, loads, batch)
    return Ordering(perm, PEEL)


def load_sort_order(loads) -> Ordering:
    """Vertices by non-decreasing load, ties by ascending id."""
    loads = np.ascontiguousarray(loads, dtype=np.int64)
    n = len(loads)
    if n and int(loads.max() - loads.min()) <= 4 * n:
        perm = kernels.counting_sort(loads - loads.min())
    else:
        perm = np.argsort(loads, kind="stable").astype(np.int64)
    return Ordering(perm, SORT)


def density_and_load_update(g: Graph, o: Ordering, loads, threads: int = 1):
    """Charge each edge to the position of its earlier endpoint.

    Returns ``(loads', outcome)``; ``loads`` itself is not modified.  The
    suffix sum of the charges gives the edge count of every suffix subgraph,
    and the charges are exactly the peel-time degrees added to the loads.
    """
    perm = np.ascontiguousarray(o.perm, dtype=np.int64)
    if len(perm) != g.n:
        raise ValueError(f"ordering has {len(perm)} vertices, graph has {g.n}")
    A = kernels.charge_counts(g.offsets, g.neighbors, perm, threads)
    B, best = kernels.best_suffix(A)
    updated = np.array(loads, dtype=np.int64, copy=True)
    kernels.add_loads(updated, perm, A, threads)
    width = int(A.max()) if g.n else 0
    rho = Density(int(B[best]), g.n - best)
    return updated, RefineOutcome(rho, int(best), width, A, B, perm)


def charikar_peel(g: Graph) -> RefineOutcome:
    """Min-degree peeling with batch semantics; a 2-approximation."""
    zero = new_loads(g.n)
    _, out = density_and_load_update(g, load_peel_order(g, zero), zero)
    return out


def write_positions_csv(out: RefineOutcome, g: Graph, dest) -> None:
    n = len(out.perm)
    with open(Path(dest), "w") as fh:
        fh.write("position,orig_id,charge,remaining_edges,remaining_verts,density\n")
        for i in range(n):
            fh.write(f"{i},{g.orig_ids[out.perm[i]]},{out.charges[i]},{out.remaining[i]},"
                     f"{n - i},{out.remaining[i] / (n - i):.6f}\n")
