"""Planted-partition benchmark: generate graphs, summarise clusters, correlate.

Each (graph, replicate) pair is an independent unit. Replicate ``r`` of a
graph whose parameters carry seed ``s`` is generated with seed ``s + r``.
Units may run in worker processes; results are joined in configuration order
so the output never depends on scheduling.
"""

from __future__ import annotations

import csv
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .distances import DistanceMeasure, distance_rows
from .graph import Graph
from .metrics import cluster_summaries, global_mean_distances
from .ppm import BENCHMARK_GRAPHS, PpmParams, generate_ppm
from .stats import CorrelationResult, pearson, pooled

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = [
    "CSV_HEADERS",
    "ExperimentConfig",
    "ExperimentResult",
    "UnitFailure",
    "emit_csv",
    "export_distance_matrix",
    "load_config",
    "resolve_workers",
    "run_experiment",
]

log = logging.getLogger(__name__)

WORKERS_ENV = "CLUSTERDIST_WORKERS"
MATRIX_MAX_ENTRIES = 25_000_000

_MEASURES = list(DistanceMeasure)
_SUFFIX = {m: m.value for m in _MEASURES}

CSV_HEADERS = {
    "per_cluster": [
        "graph", "seed", "cluster_id", "n_k", "density",
        "mean_jaccard", "mean_otoc", "mean_burt",
    ],
    "per_graph": [
        "graph", "replicate", "seed", "p_intra", "p_inter",
        "rho_jaccard", "rho_otoc", "rho_burt",
        "global_jaccard", "global_otoc", "global_burt",
    ],
    "grouped": [
        "p_inter", "n_runs",
        "global_jaccard", "global_otoc", "global_burt",
        "intra_jaccard", "intra_otoc", "intra_burt",
        "rho_jaccard", "rho_otoc", "rho_burt",
        "graph_rho_jaccard", "graph_rho_otoc", "graph_rho_burt",
    ],
    "pooled": ["replicate", "measure", "rho", "n_points"],
}


@dataclass
class ExperimentConfig:
    graphs: list = field(default_factory=list)
    seeds_per_graph: int = 1
    output_dir: Path | None = None
    exact_global_means: bool = True
    global_pair_budget: int = 200_000
    workers: int | None = None

    def __post_init__(self):
        self.graphs = [(str(name), params) for name, params in self.graphs]
        names = [name for name, _ in self.graphs]
        if len(set(names)) != len(names):
            raise ValueError(f"graph names must be unique, got {names}")
        if self.seeds_per_graph < 1:
            raise ValueError("seeds_per_graph must be >= 1")
        if self.output_dir is not None:
            self.output_dir = Path(self.output_dir)

    @classmethod
    def benchmark(cls, base_seed: int = 0, **kwargs) -> "ExperimentConfig":
        """The ten benchmark graphs G1..G10 (50 clusters each)."""
        graphs = [(name, p.with_seed(p.seed + base_seed)) for name, p in BENCHMARK_GRAPHS.items()]
        return cls(graphs=graphs, **kwargs)


def load_config(path) -> ExperimentConfig:
    """Read a TOML experiment description.

    Top-level keys mirror :class:`ExperimentConfig`; each ``[[graphs]]`` table
    needs ``name``, ``num_clusters``, ``cluster_size``, ``p_intra``,
    ``p_inter`` and optionally ``seed``. ``builtin_benchmark = true`` prepends the
    ten standard graphs.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    base_seed = int(raw.pop("base_seed", 0))
    graphs = []
    if raw.pop("builtin_benchmark", False):
        graphs.extend((n, p.with_seed(p.seed + base_seed)) for n, p in BENCHMARK_GRAPHS.items())
    for i, entry in enumerate(raw.pop("graphs", [])):
        entry = dict(entry)
        try:
            name = entry.pop("name")
            params = PpmParams(
                num_clusters=int(entry.pop("num_clusters")),
                cluster_size=int(entry.pop("cluster_size")),
                p_intra=float(entry.pop("p_intra")),
                p_inter=float(entry.pop("p_inter")),
                seed=int(entry.pop("seed", 0)) + base_seed,
            )
        except KeyError as exc:
            raise ValueError(f"{path}: graphs[{i}] is missing {exc.args[0]!r}") from None
        if entry:
            raise ValueError(f"{path}: graphs[{i}] has unknown keys {sorted(entry)}")
        graphs.append((name, params))
    known = {"seeds_per_graph", "output_dir", "exact_global_means", "global_pair_budget", "workers"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"{path}: unknown keys {sorted(unknown)}")
    return ExperimentConfig(graphs=graphs, **raw)


def resolve_workers(requested: int | None = None) -> int:
    """Explicit request, else ``$CLUSTERDIST_WORKERS``, else 1."""
    if requested is None:
        requested = int(os.environ.get(WORKERS_ENV, "1"))
    return max(1, requested)


@dataclass(frozen=True)
class UnitFailure:
    graph: str
    seed: int
    message: str


@dataclass
class ExperimentResult:
    per_cluster: list = field(default_factory=list)
    per_graph: list = field(default_factory=list)
    grouped: list = field(default_factory=list)
    pooled: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _run_unit(name: str, params: PpmParams, replicate: int, exact: bool, budget: int):
    seed = params.seed + replicate
    try:
        g, assignment = generate_ppm(params.with_seed(seed))
        summaries = cluster_summaries(g, assignment)
        densities = [s.density for s in summaries]
        rhos = {m: pearson(densities, [s.mean(m) for s in summaries]) for m in _MEASURES}
        n = g.vertex_count
        pair_budget = None if exact else min(budget, n * (n - 1) // 2)
        means = global_mean_distances(g, pair_budget=pair_budget, seed=seed)
    except Exception as exc:  # recorded per unit; the remaining runs proceed
        return UnitFailure(name, seed, f"{type(exc).__name__}: {exc}")
    cluster_rows = [
        {
            "graph": name, "seed": seed, "cluster_id": s.cluster_id, "n_k": s.n_k,
            "density": s.density, "mean_jaccard": s.mean_jaccard,
            "mean_otoc": s.mean_otoc, "mean_burt": s.mean_burt,
        }
        for s in summaries
    ]
    graph_row = {
        "graph": name, "replicate": replicate, "seed": seed,
        "p_intra": params.p_intra, "p_inter": params.p_inter,
    }
    for m in _MEASURES:
        graph_row[f"rho_{_SUFFIX[m]}"] = rhos[m].rho
        graph_row[f"global_{_SUFFIX[m]}"] = means[m]
    return cluster_rows, graph_row


def _mean_or_none(values):
    values = [v for v in values if v is not None]
    return math.fsum(values) / len(values) if values else None


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    units = [
        (name, params, r, config.exact_global_means, config.global_pair_budget)
        for name, params in config.graphs
        for r in range(config.seeds_per_graph)
    ]
    result = ExperimentResult()
    workers = resolve_workers(config.workers)
    if workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(units))) as pool:
            outcomes = list(pool.map(_run_unit, *zip(*units)))
    else:
        outcomes = [_run_unit(*u) for u in units]

    for outcome in outcomes:
        if isinstance(outcome, UnitFailure):
            log.error("unit %s seed %d failed: %s", outcome.graph, outcome.seed, outcome.message)
            result.failures.append(outcome)
            continue
        cluster_rows, graph_row = outcome
        result.per_cluster.extend(cluster_rows)
        result.per_graph.append(graph_row)

    by_graph_seed = {}
    for row in result.per_cluster:
        by_graph_seed.setdefault((row["graph"], row["seed"]), []).append(row)

    def points(runs, m):
        sets = []
        for row in runs:
            rows = by_graph_seed[(row["graph"], row["seed"])]
            sets.append(([c["density"] for c in rows], [c[f"mean_{_SUFFIX[m]}"] for c in rows]))
        try:
            return pooled(sets)
        except ValueError:
            return CorrelationResult(None, sum(len(s[0]) for s in sets))

    # Summary rows, one per distinct p_inter in ascending order. The
    # rho_* columns correlate the clusters of all graphs sharing p_inter
    # (pooled per replicate, then averaged over replicates); graph_rho_* is
    # the plain mean of the per-graph coefficients.
    for p_inter in sorted({row["p_inter"] for row in result.per_graph}):
        runs = [row for row in result.per_graph if row["p_inter"] == p_inter]
        clusters = [c for row in runs for c in by_graph_seed[(row["graph"], row["seed"])]]
        reps = sorted({row["replicate"] for row in runs})
        grouped = {"p_inter": p_inter, "n_runs": len(runs)}
        for m in _MEASURES:
            sfx = _SUFFIX[m]
            grouped[f"global_{sfx}"] = _mean_or_none([row[f"global_{sfx}"] for row in runs])
            grouped[f"intra_{sfx}"] = _mean_or_none([c[f"mean_{sfx}"] for c in clusters])
            grouped[f"rho_{sfx}"] = _mean_or_none(
                [points([r for r in runs if r["replicate"] == rep], m).rho for rep in reps]
            )
            grouped[f"graph_rho_{sfx}"] = _mean_or_none([row[f"rho_{sfx}"] for row in runs])
        result.grouped.append(grouped)

    # Pooled rows over every graph with p_inter != 0, per replicate and overall.
    pooled_runs = [row for row in result.per_graph if row["p_inter"] != 0]
    replicates = sorted({row["replicate"] for row in pooled_runs})
    for rep in [*replicates, "all"] if pooled_runs else []:
        runs = [row for row in pooled_runs if rep == "all" or row["replicate"] == rep]
        for m in _MEASURES:
            corr = points(runs, m)
            result.pooled.append(
                {"replicate": rep, "measure": m.value, "rho": corr.rho, "n_points": corr.n_points}
            )

    if config.output_dir is not None:
        emit_csv(result, config.output_dir)
    return result


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.6g}"
    return str(value)


def emit_csv(result: ExperimentResult, output_dir) -> dict[str, Path]:
    """Write ``per_cluster.csv``, ``per_graph.csv``, ``grouped.csv`` and ``pooled.csv``.

    Floats carry 6 significant digits; undefined correlations are written
    as ``NA``.
    """
    output_dir = Path(output_dir)
    paths = {}
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        for table, header in CSV_HEADERS.items():
            path = output_dir / f"{table}.csv"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(header)
                for row in getattr(result, table):
                    writer.writerow([_fmt(row[col]) for col in header])
            paths[table] = path
    except OSError as exc:
        raise OSError(f"cannot write experiment CSVs to {output_dir}: {exc}") from exc
    return paths


def export_distance_matrix(
    g: Graph, measure, path, max_entries: int = MATRIX_MAX_ENTRIES
) -> Path:
    """Write the dense ``|V| x |V|`` distance matrix as CSV (zero diagonal)."""
    measure = DistanceMeasure.parse(measure)
    n = g.vertex_count
    if n * n > max_entries:
        raise ValueError(
            f"a {n} x {n} matrix exceeds the budget of {max_entries} entries; "
            "stream the pairs you need with distances.pairwise instead"
        )
    path = Path(path)
    dense = g.adjacency.toarray().astype(np.float32)
    with open(path, "w", encoding="utf-8") as fh:
        for r0 in range(0, n, 512):
            r1 = min(r0 + 512, n)
            block = distance_rows(g, measure, r0, r1, dense)
            block[np.arange(r1 - r0), np.arange(r0, r1)] = 0.0
            np.savetxt(fh, block, fmt="%.17g", delimiter=",")
    return path
