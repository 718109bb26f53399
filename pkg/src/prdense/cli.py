"""Command-line front end.

Exit codes: 0 ok, 2 bad flags, 3 I/O or parse failure, 4 internal invariant
breach, 5 input too large for the oracle, 6 cache built from another input.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import kernels
from .cores import exact_coreness, get_core, write_coreness_csv
from .framework import (InvariantError, RunConfig, format_density, run, summary,
                        write_trace_csv)
from .graph import (CacheMismatchError, Density, EmptyGraphError, GraphFormatError,
                    content_hash, is_cache, load_cache, load_graph, save_cache,
                    write_edge_list)
from .oracle import DEFAULT_LIMIT, OracleSizeError, brute_force_densest
from .refine import PEEL, SORT

log = logging.getLogger("prdense")

EXIT_FLAGS, EXIT_IO, EXIT_INVARIANT, EXIT_OVERSIZE, EXIT_CACHE = 2, 3, 4, 5, 6
ALGORITHM_FLAGS = {"greedy": PEEL, "sorting": SORT}


class FlagError(Exception):
    pass


def _threads(value):
    if value is None:
        value = os.environ.get("DENSEST_THREADS", "1")
    if str(value) == "max":
        return os.cpu_count() or 1
    try:
        t = int(value)
    except ValueError:
        raise FlagError(f"--threads must be a positive integer or 'max', got {value!r}")
    if t < 1:
        raise FlagError("--threads must be positive")
    return t


def _config(args) -> RunConfig:
    iterations = args.iterations
    if args.iterations is not None and args.epsilon is not None:
        log.warning("both --iterations and --epsilon given; using --iterations %d", iterations)
    elif args.iterations is None and args.epsilon is None:
        iterations = 20
    try:
        return RunConfig(
            algorithm=ALGORITHM_FLAGS[args.algorithm],
            pruning=args.pruning,
            iterations=iterations,
            epsilon=args.epsilon if args.epsilon is not None else 0.1,
            approx_factor=args.approx_factor,
            threads=_threads(args.threads),
            reset_loads=args.reset_loads,
        )
    except ValueError as exc:
        raise FlagError(str(exc))


def _load(args):
    return load_graph(args.input, cache=getattr(args, "cache", None))


def cmd_run(args, out) -> int:
    cfg = _config(args)
    if args.repeats < 1:
        raise FlagError("--repeats must be positive")
    g = _load(args)
    results = [run(g, cfg) for _ in range(args.repeats)]
    result = results[0]
    doc = summary(g, result, cfg, str(args.input))
    # densities are deterministic; only timings are averaged
    doc["init_ms"] = round(sum(r.trace.init.init_ms for r in results) / len(results), 3)
    doc["total_ms"] = round(sum(r.trace.total_ms for r in results) / len(results), 3)
    doc["repeats"] = args.repeats
    if args.trace_csv:
        with open(args.trace_csv, "w") as fh:
            write_trace_csv(result.trace, fh)
    if args.witness_out:
        Path(args.witness_out).write_text("".join(f"{v}\n" for v in result.witness.tolist()))
    json.dump(doc, out, indent=2)
    out.write("\n")
    return 0


def cmd_trace(args, out) -> int:
    cfg = _config(args)
    g = _load(args)
    result = run(g, cfg)
    write_trace_csv(result.trace, out)
    return 0


def cmd_stats(args, out) -> int:
    g = _load(args)
    d = exact_coreness(g)
    k = -(-d.kmax // 2)
    core = get_core(g, d, k)
    rows = [
        ("n", g.n),
        ("m", g.m),
        ("max_degree", g.max_degree),
        ("kmax", d.kmax),
        ("peel_rounds", d.peel_rounds),
        (f"core_{k}_n", core.n),
        (f"core_{k}_m", core.m),
        ("vertex_ratio", f"{core.n / g.n:.3f} ({core.n}/{g.n})"),
        ("edge_ratio", f"{core.m / g.m:.3f} ({core.m}/{g.m})"),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        out.write(f"{name:<{width}}  {value}\n")
    if args.coreness_csv:
        write_coreness_csv(g, d, args.coreness_csv)
    return 0


def cmd_oracle(args, out) -> int:
    g = _load(args)
    res = brute_force_densest(g, args.limit)
    f = res.rho_star.as_fraction()
    shown = Density(f.numerator, f.denominator)
    ids = sorted(int(g.orig_ids[v]) for v in res.witness)
    out.write(f"{f.numerator}/{f.denominator} = {format_density(shown)}, "
              f"witness [{','.join(map(str, ids))}]\n")
    return 0


def cmd_convert(args, out) -> int:
    src = Path(args.input)
    if is_cache(src):
        g = load_cache(src, expect_hash=content_hash(args.verify) if args.verify else None)
        write_edge_list(g, args.output)
    else:
        g = load_graph(src)
        save_cache(g, args.output, content_hash(src))
    log.info("wrote %s (n=%d, m=%d)", args.output, g.n, g.m)
    return 0


def _add_run_flags(p):
    p.add_argument("--algorithm", choices=sorted(ALGORITHM_FLAGS), default="greedy")
    p.add_argument("--pruning", choices=["none", "exact", "approx", "hybrid"], default="exact")
    p.add_argument("--iterations", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--approx-factor", type=float, default=1.5)
    p.add_argument("--threads", help="worker count or 'max' (default: $DENSEST_THREADS or 1)")
    p.add_argument("--reset-loads", action="store_true",
                   help="zero the loads whenever the graph is re-pruned")
    p.add_argument("--seed", type=int, default=0, help="accepted for compatibility; runs are deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prdense", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--backend", choices=["compiled", "pure"],
                        help="kernel implementation (default: compiled when built)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="approximate densest subgraph, JSON summary on stdout")
    p.add_argument("--input", required=True)
    p.add_argument("--cache", help="binary cache sidecar for the text input")
    _add_run_flags(p)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--trace-csv")
    p.add_argument("--witness-out", help="write witness original ids, one per line")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("trace", help="per-iteration trace CSV on stdout")
    p.add_argument("--input", required=True)
    p.add_argument("--cache")
    _add_run_flags(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("stats", help="graph sizes with core pruning ratios")
    p.add_argument("--input", required=True)
    p.add_argument("--cache")
    p.add_argument("--coreness-csv", help="dump orig_id,coreness")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("oracle", help="exact densest subgraph of a small graph")
    p.add_argument("--input", required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("convert", help="text edge list <-> binary cache")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--verify", help="text file the cache must have been built from")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.backend:
        try:
            kernels.use_backend(args.backend)
        except RuntimeError as exc:
            log.error("%s", exc)
            return EXIT_FLAGS
    try:
        return args.func(args, sys.stdout)
    except FlagError as exc:
        parser.error(str(exc))
    except CacheMismatchError as exc:
        log.error("%s", exc)
        return EXIT_CACHE
    except OracleSizeError as exc:
        log.error("%s", exc)
        return EXIT_OVERSIZE
    except InvariantError as exc:
        log.error("internal invariant violated: %s", exc)
        return EXIT_INVARIANT
    except (OSError, GraphFormatError, EmptyGraphError) as exc:
        log.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
