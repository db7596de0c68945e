"""Seeded planted-partition graphs with equal-sized ground-truth clusters.

Reproducibility contract
------------------------
Vertices are laid out cluster by cluster: cluster ``c`` owns the contiguous
block ``c*n_k .. (c+1)*n_k - 1``. A single ``numpy.random.Generator`` backed
by PCG64 (``numpy.random.default_rng(seed)``) draws one uniform double in
``[0, 1)`` per unordered vertex pair, visiting pairs ``(i, j)`` with ``i < j``
in lexicographic order. The pair becomes an edge iff its draw is strictly
below ``p_intra`` (same cluster) or ``p_inter`` (different clusters).
Draws are consumed in row-sized chunks, which yields the same stream as a
single bulk draw.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb

import numpy as np

from .graph import Graph, GraphError, _from_canonical

__all__ = [
    "MAX_VERTICES",
    "BENCHMARK_GRAPHS",
    "ClusterAssignment",
    "PpmParams",
    "expected_edge_counts",
    "expected_neighborhood_growth",
    "generate_ppm",
    "load_assignment",
    "save_assignment",
]

MAX_VERTICES = 50_000

_ROW_CHUNK_PAIRS = 1 << 21


@dataclass(frozen=True)
class PpmParams:
    num_clusters: int
    cluster_size: int
    p_intra: float
    p_inter: float
    seed: int = 0

    def __post_init__(self):
        if self.num_clusters < 1:
            raise ValueError(f"num_clusters must be >= 1, got {self.num_clusters}")
        if self.cluster_size < 1:
            raise ValueError(f"cluster_size must be >= 1, got {self.cluster_size}")
        for name in ("p_intra", "p_inter"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def vertex_count(self) -> int:
        return self.num_clusters * self.cluster_size

    def with_seed(self, seed: int) -> "PpmParams":
        return PpmParams(self.num_clusters, self.cluster_size, self.p_intra, self.p_inter, seed)


# name -> (p_intra, p_inter, n_k); every graph has 50 clusters.
_BENCHMARK_ROWS = [
    ("G1", 1.0, 0.0, 45),
    ("G2", 0.9, 0.1, 37),
    ("G3", 0.9, 0.15, 42),
    ("G4", 0.9, 0.2, 50),
    ("G5", 0.8, 0.1, 53),
    ("G6", 0.8, 0.15, 38),
    ("G7", 0.8, 0.2, 44),
    ("G8", 0.7, 0.1, 39),
    ("G9", 0.7, 0.15, 46),
    ("G10", 0.7, 0.2, 53),
]

# Seeds are spaced so that replicate r of graph i (seed + r) never collides.
BENCHMARK_GRAPHS: dict[str, PpmParams] = {
    name: PpmParams(50, n_k, p_in, p_out, seed=1000 * i)
    for i, (name, p_in, p_out, n_k) in enumerate(_BENCHMARK_ROWS)
}


class ClusterAssignment:
    """Vertex -> cluster labels together with the per-cluster member lists."""

    def __init__(self, labels):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if len(labels) and labels.min() < 0:
            raise ValueError("cluster ids must be non-negative")
        self.labels = labels
        self.labels.flags.writeable = False
        k = int(labels.max()) + 1 if len(labels) else 0
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(k + 1))
        self.members = [order[bounds[c] : bounds[c + 1]] for c in range(k)]

    @classmethod
    def blocks(cls, num_clusters: int, cluster_size: int) -> "ClusterAssignment":
        return cls(np.repeat(np.arange(num_clusters), cluster_size))

    @property
    def num_clusters(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, ClusterAssignment):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"ClusterAssignment(vertices={len(self.labels)}, clusters={self.num_clusters})"


def generate_ppm(params: PpmParams, max_vertices: int = MAX_VERTICES):
    """Draw a planted-partition graph; returns ``(graph, assignment)``.

    Same ``params`` (seed included) always give the same graph.
    """
    n = params.vertex_count
    if n > max_vertices:
        raise GraphError(
            f"{params.num_clusters} x {params.cluster_size} = {n} vertices exceeds "
            f"the limit of {max_vertices}"
        )
    rng = np.random.default_rng(params.seed)
    nk = params.cluster_size
    labels = np.arange(n, dtype=np.int64) // nk

    lo_parts, hi_parts = [], []
    row = 0
    while row < n - 1:
        # Gather whole rows until the chunk holds ~_ROW_CHUNK_PAIRS pairs.
        stop = row
        pairs = 0
        while stop < n - 1 and (pairs == 0 or pairs + (n - 1 - stop) <= _ROW_CHUNK_PAIRS):
            pairs += n - 1 - stop
            stop += 1
        lengths = n - 1 - np.arange(row, stop)
        i = np.repeat(np.arange(row, stop), lengths)
        offsets = np.arange(pairs) - np.repeat(np.cumsum(lengths) - lengths, lengths)
        j = i + 1 + offsets
        draws = rng.random(pairs)
        prob = np.where(labels[i] == labels[j], params.p_intra, params.p_inter)
        hit = draws < prob
        lo_parts.append(i[hit])
        hi_parts.append(j[hit])
        row = stop

    if lo_parts:
        lo = np.concatenate(lo_parts)
        hi = np.concatenate(hi_parts)
    else:
        lo = hi = np.empty(0, dtype=np.int64)
    return _from_canonical(n, lo, hi), ClusterAssignment(labels)


def expected_edge_counts(params: PpmParams) -> tuple[float, float]:
    """Mean intra- and inter-cluster edge counts."""
    k, nk = params.num_clusters, params.cluster_size
    intra_pairs = k * comb(nk, 2)
    inter_pairs = comb(k * nk, 2) - intra_pairs
    return intra_pairs * params.p_intra, inter_pairs * params.p_inter


def expected_neighborhood_growth(params: PpmParams) -> tuple[float, float]:
    """Growth rates of degree and of shared-neighbor count with ``p_inter``.

    ``degree_rate = 2 * p_inter * (|V| - n_k)`` approximates how fast the
    denominators of the Jaccard and Otsuka-Ochiai ratios grow;
    ``shared_rate = p_inter**2 * (|V| - n_k)`` is the much slower growth of
    their common-neighbor numerators.
    """
    outside = params.vertex_count - params.cluster_size
    return 2.0 * params.p_inter * outside, params.p_inter**2 * outside


def save_assignment(assignment: ClusterAssignment, path) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for v, c in enumerate(assignment.labels.tolist()):
            fh.write(f"{v} {c}\n")
    os.replace(tmp, path)


def load_assignment(path, vertex_count: int | None = None) -> ClusterAssignment:
    """Read ``vertex cluster`` lines; every vertex must be labelled exactly once."""
    seen = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'vertex cluster', got {line!r}")
            try:
                v, c = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-integer field in {line!r}")
            if v < 0 or c < 0:
                raise ValueError(f"{path}:{lineno}: negative id")
            if v in seen:
                raise ValueError(f"{path}:{lineno}: vertex {v} labelled twice")
            seen[v] = c
    n = vertex_count if vertex_count is not None else (max(seen) + 1 if seen else 0)
    missing = [v for v in range(n) if v not in seen]
    if missing or any(v >= n for v in seen):
        raise ValueError(f"{path}: assignment does not cover vertices 0..{n - 1} exactly")
    return ClusterAssignment([seen[v] for v in range(n)])
