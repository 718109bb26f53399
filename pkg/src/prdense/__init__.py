"""Approximate densest subgraphs by core pruning plus load-based greedy refinement."""
from .cores import CoreDecomposition, approx_coreness, exact_coreness, get_core
from .framework import RunConfig, RunResult, default_iterations, measure_width, run, summary
from .graph import Density, Graph, induced_subgraph, parse_edge_list, stats
from .oracle import brute_force_densest
from .refine import (charikar_peel, density_and_load_update, load_peel_order,
                     load_sort_order)

__all__ = [
    "CoreDecomposition", "Density", "Graph", "RunConfig", "RunResult",
    "approx_coreness", "brute_force_densest", "charikar_peel", "default_iterations",
    "density_and_load_update", "exact_coreness", "get_core", "induced_subgraph",
    "load_peel_order", "load_sort_order", "measure_width", "parse_edge_list", "run",
    "stats", "summary",
]
