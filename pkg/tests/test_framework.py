import io
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import clique
from prdense.cores import exact_coreness
from prdense.framework import (InvariantError, RunConfig, default_iterations, format_density,
                               measure_width, run, summary, witness_graph, write_trace_csv)
from prdense.graph import Density, GraphStats, from_edges
from prdense.oracle import brute_force_densest
from reference import random_graph

pytestmark = pytest.mark.usefixtures("each_backend")

ALL_MODES = [(a, p) for a in ("peel", "sort") for p in ("none", "exact", "approx", "hybrid")]


def two_cliques_and_tail():
    # K6 on 0..5, K4 on 10..13, bridge 5-10, path 13-20-21-22
    e = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    e += [(10 + i, 10 + j) for i in range(4) for j in range(i + 1, 4)]
    e += [(5, 10), (13, 20), (20, 21), (21, 22)]
    return from_edges(e)


@pytest.mark.parametrize("algorithm,pruning", ALL_MODES)
def test_k4_single_iteration(k4, algorithm, pruning):
    res = run(k4, RunConfig(algorithm=algorithm, pruning=pruning, iterations=1))
    assert res.best_density == Density(3, 2)
    assert res.witness.tolist() == [0, 1, 2, 3]


def test_k4_width_every_iteration(k4):
    res = run(k4, RunConfig(iterations=5))
    widths, top = measure_width(res.trace)
    assert widths == [3] * 5
    assert top == 3


def test_prune_nothing_when_core_is_whole_graph():
    g = clique(7)
    res = run(g, RunConfig(iterations=2))
    init = res.trace.init
    assert (init.pruned_n / init.n, init.pruned_m / init.m) == (1.0, 1.0)


@pytest.mark.parametrize("algorithm,pruning", ALL_MODES)
def test_finds_planted_clique(algorithm, pruning):
    g = two_cliques_and_tail()
    res = run(g, RunConfig(algorithm=algorithm, pruning=pruning, iterations=10))
    assert res.best_density == Density(15, 6)
    assert res.witness.tolist() == [0, 1, 2, 3, 4, 5]
    assert witness_graph(g, res).density() == res.best_density


def test_exact_pruning_shrinks_and_trace_is_monotone():
    g = two_cliques_and_tail()
    res = run(g, RunConfig(iterations=6))
    init = res.trace.init
    assert init.kmax == 5
    assert init.lower_bound == 3
    assert (init.pruned_n, init.pruned_m) == (10, 22)
    best = [r.best for r in res.trace.iterations]
    assert all(a <= b for a, b in zip(best, best[1:]))
    sizes = [(r.n, r.m) for r in res.trace.iterations]
    assert all(a[0] >= b[0] and a[1] >= b[1] for a, b in zip(sizes, sizes[1:]))
    # ceil(15/6) = 3 is not above the initial threshold, so no re-prune here
    assert sizes[-1] == (10, 22)


def bipartite_with_halo():
    # K_{10,100} has kmax=10 but density 100/11, so one iteration lifts ceil(L) from 5 to 10
    e = [(i, 1000 + j) for i in range(10) for j in range(100)]
    halo = list(range(2000, 2050))
    e += [(halo[i], halo[(i + s) % 50]) for i in range(50) for s in (1, 2, 3)]
    e += [(2000, 0)]
    return from_edges(e)


def test_prune_drops_sparse_ring():
    # K10 plus a 4-regular circulant: kmax=9 gives L=5, which removes the ring
    e = [(i, j) for i in range(10) for j in range(i + 1, 10)]
    ring = list(range(100, 160))
    e += [(ring[i], ring[(i + s) % 60]) for i in range(60) for s in (1, 2)]
    e += [(0, 100)]
    g = from_edges(e)
    res = run(g, RunConfig(pruning="exact", iterations=3))
    assert res.trace.init.kmax == 9
    assert res.trace.init.pruned_n == 10
    assert res.best_density == Density(45, 10)


def test_repruning_drops_vertices_and_keeps_survivor_loads(rng):
    seen = []

    def hook(i, g, order, loads, out):
        seen.append((g.n, g.orig_ids.copy(), loads.copy()))

    g = bipartite_with_halo()
    res = run(g, RunConfig(pruning="exact", iterations=4), on_iteration=hook)
    assert res.best_density == Density(1000, 110)
    ns = [s[0] for s in seen]
    assert ns[0] == 160 and ns[-1] == 110
    # survivors keep their loads across the prune
    assert seen[-1][2].sum() > 0


def test_reset_loads_flag():
    seen = []
    g = bipartite_with_halo()
    run(g, RunConfig(iterations=2, reset_loads=True),
        on_iteration=lambda i, h, o, loads, out: seen.append(loads.copy()))
    assert seen[1].sum() == 0


def test_pruning_modes_agree(rng):
    for _ in range(15):
        g = from_edges(random_graph(rng, 60, rng.uniform(0.05, 0.3)))
        for algorithm in ("peel", "sort"):
            seqs = {}
            for pruning in ("exact", "hybrid"):
                res = run(g, RunConfig(algorithm=algorithm, pruning=pruning, iterations=8))
                seqs[pruning] = [r.best for r in res.trace.iterations]
            assert seqs["exact"] == seqs["hybrid"]


def test_safety_and_approximation_small_graphs(rng):
    for _ in range(40):
        n = int(rng.integers(3, 15))
        g = from_edges(random_graph(rng, n, rng.uniform(0.15, 0.8)))
        opt = brute_force_densest(g)
        star_ids = set(g.orig_ids[list(opt.witness)].tolist())
        for pruning in ("exact", "approx", "hybrid"):

            def hook(i, h, order, loads, out):
                assert star_ids <= set(h.orig_ids.tolist())

            res = run(g, RunConfig(pruning=pruning, iterations=1), on_iteration=hook)
            assert 2 * res.best_density.as_fraction() >= opt.rho_star.as_fraction()
            kmax = exact_coreness(g).kmax
            assert res.best_density.as_fraction() >= Fraction(kmax, 2)


def test_epsilon_sets_iterations():
    g = two_cliques_and_tail()
    res = run(g, RunConfig(iterations=None, epsilon=0.5))
    # pruned graph: n=10, max degree 6, L=3
    assert len(res.trace.iterations) == default_iterations(GraphStats(10, 22, 6), 3, 0.5)


def test_default_iterations_examples():
    assert default_iterations(GraphStats(round(math.e), 0, 5), 5, 1.0) == 10
    assert default_iterations(GraphStats(math.e ** 2, 0, 100), 50, 0.5) == 16
    assert default_iterations(GraphStats(10**6, 0, 10**6), 1, 0.5) == 1000
    assert default_iterations(GraphStats(10**6, 0, 10**6), 1, 0.5, cap=50) == 50
    with pytest.raises(ValueError):
        default_iterations(GraphStats(10, 0, 5), 0, 0.5)


@pytest.mark.parametrize("kwargs", [
    {"iterations": 0}, {"epsilon": 0}, {"epsilon": 1.0}, {"approx_factor": 1.0},
    {"algorithm": "flow"}, {"pruning": "lp"}, {"threads": 0},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_empty_input_rejected():
    from prdense.graph import induced_subgraph
    empty = induced_subgraph(clique(3), [False] * 3)
    with pytest.raises(ValueError):
        run(empty, RunConfig())


def test_format_density_half_even():
    assert format_density(Density(31, 2)) == "15.500000"
    assert format_density(Density(1, 3)) == "0.333333"
    assert format_density(Density(2, 3)) == "0.666667"
    # exactly halfway at the 7th decimal: 0.0000005 -> even
    assert format_density(Density(1, 2_000_000)) == "0.000000"
    assert format_density(Density(3, 2_000_000)) == "0.000002"


def test_summary_and_trace_csv(k4):
    cfg = RunConfig(iterations=2)
    res = run(k4, cfg)
    doc = summary(k4, res, cfg, "k4.txt")
    assert doc["best_density"] == {"num": 3, "den": 2, "float": 1.5}
    assert (doc["witness_size"], doc["witness_edges"], doc["kmax"]) == (4, 6, 3)
    assert doc["max_width"] == 3 and doc["iterations"] == 2
    buf = io.StringIO()
    write_trace_csv(res.trace, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "iter,density_num,density_den,density_float,n,m,width,ms"
    assert lines[1].startswith("1,6,4,1.500000,4,6,3,")


def test_summary_detects_broken_witness(k4):
    cfg = RunConfig(iterations=1)
    res = run(k4, cfg)
    res.witness = np.array([0, 1])
    with pytest.raises(InvariantError):
        summary(k4, res, cfg)
