"""Pruning-and-refining driver.

Prune to a core that must contain every densest subgraph, then run greedy
load-based refinement iterations, shrinking the core whenever the best
density found raises the lower bound.
"""
from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Callable

import numpy as np

from .cores import CoreDecomposition, approx_coreness, exact_coreness
from .graph import Density, Graph, GraphStats, induced_subgraph, stats
from .refine import PEEL, SORT, density_and_load_update, load_peel_order, load_sort_order

PRUNING_MODES = ("none", "exact", "approx", "hybrid")
ALGORITHMS = (PEEL, SORT)


class InvariantError(RuntimeError):
    """An internal guarantee failed (e.g. pruning emptied the graph)."""


@dataclass(frozen=True)
class RunConfig:
    algorithm: str = PEEL
    pruning: str = "exact"
    iterations: int | None = 20
    epsilon: float = 0.1
    approx_factor: float = 1.5
    threads: int = 1
    reset_loads: bool = False
    iteration_cap: int = 1000

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.pruning not in PRUNING_MODES:
            raise ValueError(f"pruning must be one of {PRUNING_MODES}, got {self.pruning!r}")
        if self.iterations is not None and self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if not self.approx_factor > 1:
            raise ValueError("approx_factor must exceed 1")
        if self.threads < 1:
            raise ValueError("threads must be positive")


@dataclass
class InitRecord:
    core_kind: str
    kmax: int | None
    approx_kmax: int | None
    lower_bound: Fraction | None
    n: int
    m: int
    pruned_n: int
    pruned_m: int
    core_ms: float
    init_ms: float


@dataclass
class IterRecord:
    iter: int
    density: Density
    best: Density
    n: int
    m: int
    width: int
    ms: float


@dataclass
class RunTrace:
    init: InitRecord
    iterations: list[IterRecord] = field(default_factory=list)
    total_ms: float = 0.0


@dataclass
class RunResult:
    best_density: Density
    witness: np.ndarray  # original ids, ascending
    trace: RunTrace


def default_iterations(g_stats: GraphStats, L, epsilon: float, cap: int = 1000) -> int:
    """max(10, ceil((max_degree / L) * ln(n) / epsilon^2)), clamped to ``cap``."""
    if L < 1:
        raise ValueError("lower bound must be at least 1")
    raw = (g_stats.max_degree / float(L)) * math.log(max(g_stats.n, 1)) / epsilon ** 2
    return min(cap, max(10, math.ceil(raw - 1e-9)))


def measure_width(trace: RunTrace) -> tuple[list[int], int]:
    widths = [r.width for r in trace.iterations]
    return widths, max(widths, default=0)


def _ceil(x) -> int:
    return math.ceil(Fraction(x))


def _label_threshold(d: CoreDecomposition, k: int) -> int:
    # approximate labels can undershoot coreness by the factor
    return k if d.is_exact else _ceil(Fraction(k) / Fraction(d.factor))


def _initial_cores(g: Graph, cfg: RunConfig):
    """Returns (base graph, decomposition on it, lower bound, approx kmax)."""
    c = Fraction(cfg.approx_factor)
    if cfg.pruning == "exact":
        d = exact_coreness(g)
        return g, d, Fraction(_ceil(Fraction(d.kmax, 2))), None
    da = approx_coreness(g, cfg.approx_factor)
    L = Fraction(_ceil(Fraction(da.kmax) / (2 * c)))
    if cfg.pruning == "approx":
        return g, da, L, da.kmax
    # hybrid: shrink with approximate labels, then exact cores on the remainder
    base = induced_subgraph(g, da.labels >= _label_threshold(da, _ceil(L)))
    d = exact_coreness(base)
    return base, d, Fraction(_ceil(Fraction(d.kmax, 2))), da.kmax


def run(g: Graph, cfg: RunConfig = RunConfig(),
        on_iteration: Callable | None = None) -> RunResult:
    """Run the framework on ``g``.

    ``on_iteration(i, graph, ordering, loads_before, outcome)`` is called after
    every refinement pass, mainly for invariant checks.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    t_start = time.perf_counter()
    if cfg.pruning == "none":
        cur, labels, d, L, akmax = g, None, None, None, None
        core_ms = 0.0
    else:
        base, d, L, akmax = _initial_cores(g, cfg)
        core_ms = (time.perf_counter() - t_start) * 1e3
        labels = d.labels
        threshold = _ceil(L)
        keep = labels >= _label_threshold(d, threshold)
        cur, labels = induced_subgraph(base, keep), labels[keep]
    if cur.n == 0:
        raise InvariantError("initial pruning removed every vertex")
    init_ms = (time.perf_counter() - t_start) * 1e3
    init = InitRecord(
        core_kind=cfg.pruning,
        kmax=None if d is None or not d.is_exact else d.kmax,
        approx_kmax=akmax,
        lower_bound=L,
        n=g.n, m=g.m, pruned_n=cur.n, pruned_m=cur.m,
        core_ms=core_ms, init_ms=init_ms,
    )
    trace = RunTrace(init)

    T = cfg.iterations
    if T is None:
        lb = L if L is not None else max(Fraction(1), cur.density().as_fraction())
        T = default_iterations(stats(cur), max(lb, Fraction(1)), cfg.epsilon, cfg.iteration_cap)

    best = cur.density()
    witness = cur.orig_ids
    loads = np.zeros(cur.n, dtype=np.int64)
    for i in range(1, T + 1):
        t0 = time.perf_counter()
        if cfg.algorithm == PEEL:
            order = load_peel_order(cur, loads)
        else:
            order = load_sort_order(loads)
        before = loads
        loads, out = density_and_load_update(cur, order, loads, cfg.threads)
        if on_iteration is not None:
            on_iteration(i, cur, order, before, out)
        n_it, m_it = cur.n, cur.m
        if out.rho_max > best:
            best = out.rho_max
            witness = cur.orig_ids[out.witness()]
            if L is not None:
                L = max(L, best.as_fraction())
                if _ceil(L) > threshold:
                    threshold = _ceil(L)
                    keep = labels >= _label_threshold(d, threshold)
                    cur, labels, loads = induced_subgraph(cur, keep), labels[keep], loads[keep]
                    if cfg.reset_loads:
                        loads = np.zeros(cur.n, dtype=np.int64)
                    if cur.n == 0:
                        raise InvariantError(f"pruning to the {threshold}-core emptied the graph")
        trace.iterations.append(IterRecord(i, out.rho_max, best, n_it, m_it, out.width,
                                           (time.perf_counter() - t0) * 1e3))
    trace.total_ms = (time.perf_counter() - t_start) * 1e3
    return RunResult(best, np.sort(witness), trace)


def witness_graph(g: Graph, result: RunResult) -> Graph:
    return induced_subgraph(g, np.isin(g.orig_ids, result.witness))


def format_density(d: Density, places: int = 6) -> str:
    """Decimal rendering rounded half-even from the exact ratio."""
    with localcontext() as ctx:
        ctx.prec = 60
        q = Decimal(d.edges) / Decimal(d.verts)
        return str(q.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def density_json(d: Density) -> dict:
    f = d.as_fraction()
    return {"num": f.numerator, "den": f.denominator, "float": float(format_density(d))}


TIMING_KEYS = ("init_ms", "total_ms")


def summary(g: Graph, result: RunResult, cfg: RunConfig, input_name: str = "") -> dict:
    init = result.trace.init
    wg = witness_graph(g, result)
    if wg.density() != result.best_density:
        raise InvariantError("witness density does not reproduce the best density")
    return {
        "input": input_name,
        "config": asdict(cfg),
        "kmax": init.kmax,
        "approx_kmax": init.approx_kmax,
        "L0": None if init.lower_bound is None else density_json(
            Density(init.lower_bound.numerator, init.lower_bound.denominator)),
        "pruned_n": init.pruned_n,
        "pruned_m": init.pruned_m,
        "best_density": density_json(result.best_density),
        "best_density_float": density_json(result.best_density)["float"],
        "witness_size": wg.n,
        "witness_edges": wg.m,
        "iterations": len(result.trace.iterations),
        "init_ms": round(init.init_ms, 3),
        "total_ms": round(result.trace.total_ms, 3),
        "max_width": measure_width(result.trace)[1],
    }


TRACE_COLUMNS = ("iter", "density_num", "density_den", "density_float", "n", "m", "width", "ms")


def write_trace_csv(trace: RunTrace, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for r in trace.iterations:
        w.writerow((r.iter, r.density.edges, r.density.verts, format_density(r.density),
                    r.n, r.m, r.width, f"{r.ms:.3f}"))
