"""Exact and approximate k-core decomposition and core extraction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import kernels
from .graph import Graph, induced_subgraph


@dataclass(frozen=True)
class CoreDecomposition:
    """Per-vertex core labels for one graph.

    ``kind`` is ``"exact"`` or ``"approximate"``; for the latter every label
    lies within a factor ``factor`` of the true coreness in both directions.
    ``order`` and ``removal_degree`` record the peel sequence and each
    vertex's residual degree when it left.
    """

    labels: np.ndarray
    kmax: int
    kind: str
    peel_rounds: int
    factor: float = 1.0
    order: np.ndarray = field(default=None, repr=False)
    removal_degree: np.ndarray = field(default=None, repr=False)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"


def _decompose(g: Graph, thresholds, kind, factor) -> CoreDecomposition:
    if g.n == 0:
        raise ValueError("cannot decompose an empty graph")
    labels, order, rdeg, rounds = kernels.threshold_peel(
        g.offsets, g.neighbors, np.asarray(thresholds, dtype=np.int64))
    return CoreDecomposition(labels, int(labels.max()), kind, int(rounds),
                             factor, order, rdeg)


def exact_coreness(g: Graph) -> CoreDecomposition:
    """Bucketed parallel peeling: at threshold d, peel rounds of every vertex
    with residual degree <= d until none is left, then raise d."""
    return _decompose(g, np.arange(g.max_degree + 2), "exact", 1.0)


def geometric_thresholds(c: float, max_degree: int) -> np.ndarray:
    """0, then distinct values of ceil(c**i), up to one past ``max_degree``."""
    step = Fraction(c)
    out = [0, 1]
    x = Fraction(1)
    while out[-1] <= max_degree:
        x *= step
        t = math.ceil(x)
        if t > out[-1]:
            out.append(t)
    return np.asarray(out, dtype=np.int64)


def approx_coreness(g: Graph, c: float = 1.5) -> CoreDecomposition:
    """c-approximate coreness by geometric-threshold batch peeling.

    A vertex that leaves in the phase with bounds [t, t') has true coreness
    in [t, t' - 1], and consecutive thresholds satisfy t' - 1 < c * t, so the
    label t is within a factor c of the coreness.
    """
    if not c > 1:
        raise ValueError(f"approximation factor must exceed 1, got {c}")
    return _decompose(g, geometric_thresholds(c, g.max_degree), "approximate", c)


def get_core(g: Graph, d: CoreDecomposition, k: int) -> Graph:
    """Induced subgraph on vertices labelled at least ``k``."""
    return induced_subgraph(g, np.asarray(d.labels) >= k)


def write_coreness_csv(g: Graph, d: CoreDecomposition, dest) -> None:
    rows = np.column_stack((g.orig_ids, d.labels))
    with open(Path(dest), "w") as fh:
        fh.write("orig_id,coreness\n")
        np.savetxt(fh, rows, fmt="%d", delimiter=",")
