"""Command-line entry point: ``clusterdist <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .distances import DistanceMeasure, pairwise
from .experiment import (
    ExperimentConfig,
    export_distance_matrix,
    load_config,
    run_experiment,
)
from .graph import load_edge_list, save_edge_list
from .metrics import cluster_summaries
from .ppm import BENCHMARK_GRAPHS, PpmParams, generate_ppm, load_assignment, save_assignment
from .stats import pearson

log = logging.getLogger("clusterdist")

_MEASURE_NAMES = [m.value for m in DistanceMeasure]


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="base RNG seed")
    common.add_argument("--output-dir", type=Path, default=None, help="where output files go")
    common.add_argument(
        "--threads", type=int, default=None,
        help="worker processes (default: $CLUSTERDIST_WORKERS or 1)",
    )
    return common


def _open_out(args, default_name: str):
    if args.output_dir is None:
        return sys.stdout, False
    args.output_dir.mkdir(parents=True, exist_ok=True)
    return open(args.output_dir / default_name, "w", encoding="utf-8", newline=""), True


def cmd_generate(args) -> int:
    if args.benchmark_graph:
        params = BENCHMARK_GRAPHS[args.benchmark_graph]
        name = args.name or args.benchmark_graph
    else:
        if None in (args.clusters, args.cluster_size, args.p_intra, args.p_inter):
            raise SystemExit(
                "generate: give --benchmark-graph or all of "
                "--clusters/--cluster-size/--p-intra/--p-inter"
            )
        params = PpmParams(args.clusters, args.cluster_size, args.p_intra, args.p_inter)
        name = args.name or "graph"
    if args.seed is not None:
        params = params.with_seed(args.seed)
    g, assignment = generate_ppm(params)
    out = args.output_dir or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    save_edge_list(g, out / f"{name}.edges")
    save_assignment(assignment, out / f"{name}.clusters")
    print(f"{name}: {g.vertex_count} vertices, {g.edge_count} edges, seed {params.seed} -> {out}")
    return 0


def _read_pairs(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise SystemExit(f"{path}:{lineno}: expected 'u v'")
            yield int(parts[0]), int(parts[1])


def cmd_distances(args) -> int:
    g = load_edge_list(args.graph)
    if args.pairs:
        pairs = _read_pairs(args.pairs)
    else:
        n = g.vertex_count
        pairs = ((u, v) for u in range(n) for v in range(u + 1, n))
    fh, close = _open_out(args, f"distances_{args.measure}.csv")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["u", "v", args.measure])
        for d in pairwise(g, args.measure, pairs):
            writer.writerow([d.u, d.v, repr(d.value)])
    finally:
        if close:
            fh.close()
    return 0


def cmd_summarize(args) -> int:
    g = load_edge_list(args.graph)
    assignment = load_assignment(args.assignment, g.vertex_count)
    fh, close = _open_out(args, "summaries.csv")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["cluster_id", "n_k", "intra_edges", "density", "mean_jaccard", "mean_otoc", "mean_burt"]
        )
        for s in cluster_summaries(g, assignment):
            writer.writerow([
                s.cluster_id, s.n_k, s.intra_edges, f"{s.density:.6g}",
                f"{s.mean_jaccard:.6g}", f"{s.mean_otoc:.6g}", f"{s.mean_burt:.6g}",
            ])
    finally:
        if close:
            fh.close()
    return 0


def cmd_correlate(args) -> int:
    """Correlate density with each mean-distance column of a summary CSV."""
    with open(args.summaries, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    groups = {}
    for row in rows:
        key = row[args.group_by] if args.group_by else "all"
        groups.setdefault(key, []).append(row)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["group", "measure", "rho", "n_points"])
    for key, members in groups.items():
        density = [float(r["density"]) for r in members]
        for m in DistanceMeasure:
            corr = pearson(density, [float(r[f"mean_{m.value}"]) for r in members])
            writer.writerow([key, m.value, str(corr), corr.n_points])
    return 0


def _print_tables(result) -> None:
    def f(x, spec):
        return "NA" if x is None else format(x, spec)

    print("p_inter  global J/O/B            intra J/O/B             rho J/O/B (grouped)")
    for row in result.grouped:
        print(
            f"{row['p_inter']:<7.2f}"
            f"  {f(row['global_jaccard'], '.3f')} {f(row['global_otoc'], '.3f')} {f(row['global_burt'], '7.2f')}"
            f"   {f(row['intra_jaccard'], '.3f')} {f(row['intra_otoc'], '.3f')} {f(row['intra_burt'], '7.2f')}"
            f"   {f(row['rho_jaccard'], '.3f')} {f(row['rho_otoc'], '.3f')} {f(row['rho_burt'], '.3f')}"
        )
    for row in result.pooled:
        if row["replicate"] == "all":
            print(f"pooled (p_inter != 0) {row['measure']:>8}: {f(row['rho'], '.3f')}  n={row['n_points']}")


def cmd_experiment(args) -> int:
    if args.config:
        config = load_config(args.config)
        if args.builtin_benchmark:
            seen = {name for name, _ in config.graphs}
            extra = [(n, p) for n, p in ExperimentConfig.benchmark().graphs if n not in seen]
            config.graphs = extra + config.graphs
    elif args.builtin_benchmark:
        config = ExperimentConfig.benchmark()
    else:
        raise SystemExit("experiment: give --config PATH and/or --builtin-benchmark")
    if args.seed is not None:
        config.graphs = [(n, p.with_seed(p.seed + args.seed)) for n, p in config.graphs]
    if args.seeds is not None:
        config.seeds_per_graph = args.seeds
    if args.output_dir is not None:
        config.output_dir = args.output_dir
    if config.output_dir is None:
        config.output_dir = Path("results")
    if args.threads is not None:
        config.workers = args.threads
    if args.sampled_global:
        config.exact_global_means = False
    result = run_experiment(config)
    _print_tables(result)
    print(f"CSV files written to {config.output_dir}")
    for failure in result.failures:
        print(f"FAILED {failure.graph} seed {failure.seed}: {failure.message}", file=sys.stderr)
    return 0 if result.ok else 1


def cmd_export_matrix(args) -> int:
    g = load_edge_list(args.graph)
    path = args.out
    if path is None:
        out = args.output_dir or Path(".")
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"matrix_{args.measure}.csv"
    export_distance_matrix(g, args.measure, path, max_entries=args.max_entries)
    print(f"wrote {g.vertex_count}x{g.vertex_count} {args.measure} matrix to {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterdist",
        description="Shared-connectivity vertex distances and planted-partition benchmarks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("generate", parents=[common], help="draw a planted-partition graph")
    p.add_argument("--benchmark-graph", choices=list(BENCHMARK_GRAPHS))
    p.add_argument("--clusters", type=int)
    p.add_argument("--cluster-size", type=int)
    p.add_argument("--p-intra", type=float)
    p.add_argument("--p-inter", type=float)
    p.add_argument("--name")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("distances", parents=[common], help="distances for vertex pairs")
    p.add_argument("graph", type=Path, help="edge-list file")
    p.add_argument("--measure", choices=_MEASURE_NAMES, default="jaccard")
    p.add_argument("--pairs", type=Path, help="file of 'u v' lines (default: all pairs)")
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("summarize", parents=[common], help="per-cluster density and mean distances")
    p.add_argument("graph", type=Path)
    p.add_argument("assignment", type=Path)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("correlate", parents=[common], help="Pearson rho of density vs mean distances")
    p.add_argument("summaries", type=Path, help="summaries.csv or per_cluster.csv")
    p.add_argument("--group-by", help="column to split on, e.g. graph")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("experiment", parents=[common], help="run the planted-partition benchmark")
    p.add_argument("--config", type=Path, help="TOML experiment description")
    p.add_argument("--builtin-benchmark", action="store_true", help="use the ten standard graphs")
    p.add_argument("--seeds", type=int, help="replicates per graph")
    p.add_argument("--sampled-global", action="store_true", help="estimate global means from sampled pairs")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("export-matrix", parents=[common], help="dense distance matrix as CSV")
    p.add_argument("graph", type=Path)
    p.add_argument("--measure", choices=_MEASURE_NAMES, default="jaccard")
    p.add_argument("--out", type=Path)
    p.add_argument("--max-entries", type=int, default=25_000_000)
    p.set_defaults(func=cmd_export_matrix)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except BrokenPipeError:
        # Downstream closed the pipe (e.g. `| head`); not an error.
        sys.stderr.close()
        return 0
    except (OSError, ValueError, IndexError) as exc:
        print(f"clusterdist {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
