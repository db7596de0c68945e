"""Vertex-to-vertex distances based on shared connectivity.

All three measures look only at open neighborhoods ``c_u`` and ``c_v``:

* Jaccard        ``1 - |c_u & c_v| / |c_u | c_v|``
* Otsuka-Ochiai  ``1 - |c_u & c_v| / sqrt(|c_u| * |c_v|)``
* Burt           Euclidean distance between adjacency rows ``u`` and ``v``
                 with coordinates ``u`` and ``v`` left out.

Burt is evaluated through ``b**2 = |c_u ^ c_v| - 2*A_uv``: the symmetric
difference contains ``u`` and ``v`` exactly when they are adjacent, and those
are the two coordinates the row comparison skips.

When both neighborhoods are empty Jaccard and Otsuka-Ochiai are 0; when only
one is empty they are 1.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .graph import Graph

__all__ = [
    "DistanceMeasure",
    "PairDistance",
    "burt",
    "distance",
    "distance_rows",
    "distance_values",
    "jaccard",
    "otsuka_ochiai",
    "pairwise",
]


class DistanceMeasure(str, enum.Enum):
    JACCARD = "jaccard"
    OTSUKA_OCHIAI = "otoc"
    BURT = "burt"

    @classmethod
    def parse(cls, name) -> "DistanceMeasure":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        aliases = {"ochiai": "otoc", "otsuka_ochiai": "otoc", "cosine": "otoc"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(
                f"unknown distance measure {name!r}; choose from "
                + ", ".join(m.value for m in cls)
            ) from None


@dataclass(frozen=True)
class PairDistance:
    u: int
    v: int
    value: float


def _jaccard(du: int, dv: int, shared: int) -> float:
    union = du + dv - shared
    if union == 0:
        return 0.0
    return (union - shared) / union


def _otoc(du: int, dv: int, shared: int) -> float:
    if du == 0 or dv == 0:
        return 0.0 if du == dv else 1.0
    scale = math.sqrt(du * dv)
    return (scale - shared) / scale


def _burt(du: int, dv: int, shared: int, adjacent: bool) -> float:
    return math.sqrt(du + dv - 2 * shared - 2 * int(adjacent))


def jaccard(g: Graph, u, v) -> float:
    """Jaccard distance between the neighborhoods of ``u`` and ``v``.

    >>> from clusterdist.graph import figure_one_graph
    >>> jaccard(figure_one_graph(), 2, 0)
    0.75
    """
    return _jaccard(g.degree(u), g.degree(v), g.common_neighbor_count(u, v))


def otsuka_ochiai(g: Graph, u, v) -> float:
    return _otoc(g.degree(u), g.degree(v), g.common_neighbor_count(u, v))


def burt(g: Graph, u, v) -> float:
    """Burt's distance; 0 for any two members of an isolated clique."""
    return _burt(g.degree(u), g.degree(v), g.common_neighbor_count(u, v), g.has_edge(u, v))


_SCALAR = {
    DistanceMeasure.JACCARD: jaccard,
    DistanceMeasure.OTSUKA_OCHIAI: otsuka_ochiai,
    DistanceMeasure.BURT: burt,
}


def distance(g: Graph, measure, u, v) -> float:
    return _SCALAR[DistanceMeasure.parse(measure)](g, u, v)


def _from_counts(measure: DistanceMeasure, du, dv, shared, adjacent) -> np.ndarray:
    """Vectorised measure evaluation from degree / overlap arrays."""
    du = np.asarray(du, dtype=np.float64)
    dv = np.asarray(dv, dtype=np.float64)
    shared = np.asarray(shared, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        if measure is DistanceMeasure.JACCARD:
            union = du + dv - shared
            out = np.where(union > 0, (union - shared) / union, 0.0)
        elif measure is DistanceMeasure.OTSUKA_OCHIAI:
            scale = np.sqrt(du * dv)
            out = np.where(scale > 0, (scale - shared) / scale, np.where(du == dv, 0.0, 1.0))
        else:
            sq = du + dv - 2.0 * shared - 2.0 * np.asarray(adjacent, dtype=np.float64)
            out = np.sqrt(sq)
    return out


def distance_values(g: Graph, measure, us, vs) -> np.ndarray:
    """Distances for the pairs ``zip(us, vs)`` as a float64 array."""
    measure = DistanceMeasure.parse(measure)
    us = np.asarray(us, dtype=np.int64).ravel()
    vs = np.asarray(vs, dtype=np.int64).ravel()
    if us.shape != vs.shape:
        raise ValueError("us and vs must have the same length")
    if len(us) == 0:
        return np.empty(0, dtype=np.float64)
    n = g.vertex_count
    bad = (us < 0) | (us >= n) | (vs < 0) | (vs >= n)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise IndexError(f"pair ({us[i]}, {vs[i]}) has a vertex outside [0, {n})")
    A = g.adjacency
    shared = np.asarray(A[us].multiply(A[vs]).sum(axis=1)).ravel()
    adjacent = np.asarray(A[us, vs]).ravel() if measure is DistanceMeasure.BURT else 0
    deg = g.degrees
    return _from_counts(measure, deg[us], deg[vs], shared, adjacent)


def distance_rows(g: Graph, measure, start: int, stop: int, dense=None) -> np.ndarray:
    """Rows ``start:stop`` of the full ``|V| x |V|`` distance matrix.

    ``dense`` may carry a precomputed float32 copy of the adjacency matrix;
    0/1 products in float32 stay exact for degrees below 2**24.
    """
    measure = DistanceMeasure.parse(measure)
    return _from_counts(measure, *_row_counts(g, start, stop, dense))


def _row_counts(g: Graph, start: int, stop: int, dense=None):
    A = g.adjacency
    if dense is not None:
        shared = dense[start:stop] @ dense.T
        adj = dense[start:stop]
    else:
        shared = (A[start:stop] @ A.T).toarray()
        adj = A[start:stop].toarray()
    deg = g.degrees
    return deg[start:stop, None], deg[None, :], shared, adj


def pairwise(
    g: Graph, measure, pairs: Iterable, chunk_size: int = 4096
) -> Iterator[PairDistance]:
    """Lazily yield a :class:`PairDistance` for each requested pair, in order.

    Pairs are consumed in chunks of ``chunk_size`` and evaluated together.
    """
    measure = DistanceMeasure.parse(measure)
    it = iter(pairs)
    while True:
        chunk = list(itertools.islice(it, chunk_size))
        if not chunk:
            return
        arr = np.asarray(chunk, dtype=np.int64).reshape(-1, 2)
        values = distance_values(g, measure, arr[:, 0], arr[:, 1])
        for (u, v), value in zip(arr.tolist(), values.tolist()):
            yield PairDistance(u, v, value)
