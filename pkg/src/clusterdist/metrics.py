"""Cluster-level aggregates: intra-cluster density and mean intra-cluster distances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distances import DistanceMeasure, _from_counts, _row_counts, distance_values
from .graph import Graph
from .ppm import ClusterAssignment

__all__ = [
    "ClusterSummary",
    "ClusterSizeError",
    "cluster_summaries",
    "global_mean_distance",
    "global_mean_distances",
    "intra_cluster_density",
    "mean_intra_cluster_distance",
]

# Above this vertex count the exact all-pairs mean switches from a dense
# float32 product to blocked sparse products.
_DENSE_LIMIT = 8192
_BLOCK_ROWS = 512


class ClusterSizeError(ValueError):
    """Cluster with fewer than two members: density and pair means are 0/0."""


@dataclass(frozen=True)
class ClusterSummary:
    cluster_id: int
    n_k: int
    intra_edges: int
    density: float
    mean_jaccard: float
    mean_otoc: float
    mean_burt: float

    def mean(self, measure) -> float:
        measure = DistanceMeasure.parse(measure)
        return {
            DistanceMeasure.JACCARD: self.mean_jaccard,
            DistanceMeasure.OTSUKA_OCHIAI: self.mean_otoc,
            DistanceMeasure.BURT: self.mean_burt,
        }[measure]


def _members(g: Graph, members) -> np.ndarray:
    m = np.asarray(members, dtype=np.int64).ravel()
    if len(m) < 2:
        raise ClusterSizeError(f"cluster has {len(m)} member(s); at least 2 are required")
    if m.min() < 0 or m.max() >= g.vertex_count:
        raise IndexError(f"cluster member outside [0, {g.vertex_count})")
    if len(np.unique(m)) != len(m):
        raise ValueError("cluster members must be distinct")
    return m


def _intra_counts(g: Graph, m: np.ndarray):
    """Degrees, overlaps and adjacency for every unordered member pair."""
    A = g.adjacency
    rows = A[m]
    shared = (rows @ rows.T).toarray()
    adjacent = rows[:, m].toarray()
    iu, ju = np.triu_indices(len(m), 1)
    deg = g.degrees[m]
    return deg[iu], deg[ju], shared[iu, ju], adjacent[iu, ju]


def intra_cluster_density(g: Graph, members) -> tuple[int, float]:
    """``(|E_kk|, |E_kk| / C(n_k, 2))`` for the subgraph induced by ``members``."""
    m = _members(g, members)
    inside = np.zeros(g.vertex_count, dtype=bool)
    inside[m] = True
    edges = int(sum(np.count_nonzero(inside[g.neighbors(v)]) for v in m)) // 2
    return edges, edges / (0.5 * len(m) * (len(m) - 1))


def mean_intra_cluster_distance(g: Graph, members, measure) -> float:
    """Mean distance over the ``C(n_k, 2)`` unordered member pairs.

    Summation is exactly rounded (``math.fsum``), so member order never
    changes the result.
    """
    measure = DistanceMeasure.parse(measure)
    m = _members(g, members)
    values = _from_counts(measure, *_intra_counts(g, m))
    return math.fsum(values.tolist()) / len(values)


def cluster_summaries(g: Graph, assignment: ClusterAssignment) -> list[ClusterSummary]:
    if len(assignment) != g.vertex_count:
        raise ValueError(
            f"assignment labels {len(assignment)} vertices, graph has {g.vertex_count}"
        )
    out = []
    for cid, members in enumerate(assignment.members):
        if len(members) < 2:
            raise ClusterSizeError(
                f"cluster {cid} has {len(members)} member(s); at least 2 are required"
            )
        m = _members(g, members)
        counts = _intra_counts(g, m)
        npairs = len(counts[0])
        intra_edges = int(counts[3].sum())
        means = [
            math.fsum(_from_counts(measure, *counts).tolist()) / npairs
            for measure in DistanceMeasure
        ]
        out.append(
            ClusterSummary(
                cluster_id=cid,
                n_k=len(m),
                intra_edges=intra_edges,
                density=intra_edges / (0.5 * len(m) * (len(m) - 1)),
                mean_jaccard=means[0],
                mean_otoc=means[1],
                mean_burt=means[2],
            )
        )
    return out


def _pair_from_index(n: int, idx: np.ndarray):
    """Map lexicographic upper-triangle indices to ``(i, j)`` with ``i < j``."""
    rows = np.arange(n, dtype=np.int64)
    starts = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(starts, idx, side="right") - 1
    j = idx - starts[i] + i + 1
    return i, j


def _exact_sums(g: Graph, measures) -> list[float]:
    n = g.vertex_count
    dense = g.adjacency.toarray().astype(np.float32) if n <= _DENSE_LIMIT else None
    partial = [[] for _ in measures]
    for r0 in range(0, n - 1, _BLOCK_ROWS):
        r1 = min(r0 + _BLOCK_ROWS, n - 1)
        counts = _row_counts(g, r0, r1, dense)
        upper = np.arange(n)[None, :] > np.arange(r0, r1)[:, None]
        for acc, measure in zip(partial, measures):
            acc.append(float(np.sum(_from_counts(measure, *counts)[upper])))
    return [math.fsum(acc) for acc in partial]


def global_mean_distance(
    g: Graph, measure, pair_budget: int | None = None, seed: int | None = None
) -> float:
    """Mean distance over vertex pairs, ignoring cluster membership.

    With ``pair_budget=None`` every one of the ``C(|V|, 2)`` pairs is visited.
    Otherwise the result is an estimate from ``pair_budget`` distinct pairs
    drawn uniformly with ``numpy.random.default_rng(seed)``.
    """
    measure = DistanceMeasure.parse(measure)
    n = g.vertex_count
    if n < 2:
        raise ValueError("global mean needs at least 2 vertices")
    total_pairs = n * (n - 1) // 2
    if pair_budget is None:
        return _exact_sums(g, [measure])[0] / total_pairs
    if not 1 <= pair_budget <= total_pairs:
        raise ValueError(f"pair_budget must lie in [1, {total_pairs}], got {pair_budget}")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(total_pairs, size=pair_budget, replace=False))
    i, j = _pair_from_index(n, idx)
    partial = [
        float(np.sum(distance_values(g, measure, i[s : s + 65536], j[s : s + 65536])))
        for s in range(0, pair_budget, 65536)
    ]
    return math.fsum(partial) / pair_budget


def global_mean_distances(
    g: Graph, pair_budget: int | None = None, seed: int | None = None
) -> dict[DistanceMeasure, float]:
    """:func:`global_mean_distance` for all three measures in one sweep."""
    measures = list(DistanceMeasure)
    n = g.vertex_count
    if pair_budget is not None or n < 2:
        return {m: global_mean_distance(g, m, pair_budget, seed) for m in measures}
    total_pairs = n * (n - 1) // 2
    return {m: s / total_pairs for m, s in zip(measures, _exact_sums(g, measures))}
