"""Immutable undirected simple graphs in compressed sparse row form.

Every vertex ``v`` owns a sorted slice ``indices[indptr[v]:indptr[v + 1]]``
holding its open neighborhood (``v`` itself is never included).
"""

from __future__ import annotations

import os
from functools import cached_property
from typing import Iterable

import numpy as np
import scipy.sparse as sp

__all__ = [
    "Graph",
    "GraphError",
    "EdgeListFormatError",
    "build_graph",
    "figure_one_graph",
    "load_edge_list",
    "save_edge_list",
]


class GraphError(ValueError):
    """Invalid graph input (self-loop, out-of-range endpoint, ...)."""


class EdgeListFormatError(GraphError):
    def __init__(self, path, lineno: int, message: str):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


class Graph:
    """Undirected, unweighted simple graph on vertices ``0 .. vertex_count-1``.

    Build instances with :func:`build_graph`; the constructor trusts its
    arguments and only freezes them.
    """

    def __init__(self, indptr: np.ndarray, indices: np.ndarray):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    @property
    def vertex_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.diff(self.indptr)
        deg.flags.writeable = False
        return deg

    def _check(self, v) -> int:
        v = int(v)
        if not 0 <= v < self.vertex_count:
            raise IndexError(
                f"vertex {v} out of range for graph with {self.vertex_count} vertices"
            )
        return v

    def neighbors(self, v) -> np.ndarray:
        """Sorted open neighborhood of ``v`` as a read-only view."""
        v = self._check(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v) -> int:
        v = self._check(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u, v) -> bool:
        nbrs = self.neighbors(u)
        v = self._check(v)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def common_neighbor_count(self, u, v) -> int:
        """``|c_u & c_v|`` from the two sorted neighbor lists."""
        a = self.neighbors(u)
        b = self.neighbors(v)
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 0:
            return 0
        # Locate each element of the shorter list inside the longer one.
        pos = np.searchsorted(b, a)
        pos[pos == len(b)] = 0
        return int(np.count_nonzero(b[pos] == a))

    def edges(self) -> np.ndarray:
        """``(|E|, 2)`` array of edges with ``u < v``, lexicographically sorted."""
        src = np.repeat(np.arange(self.vertex_count, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix sharing this graph's index arrays."""
        n = self.vertex_count
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.indptr, other.indptr) and np.array_equal(
            self.indices, other.indices
        )

    def __hash__(self):
        return hash((self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"


def build_graph(vertex_count: int, edges: Iterable) -> Graph:
    """Build a :class:`Graph` from unordered vertex pairs.

    Duplicate pairs (in either orientation) collapse to a single edge.
    Self-loops and out-of-range endpoints raise :class:`GraphError`.

    >>> g = build_graph(3, [(0, 1), (1, 2)])
    >>> g.degrees.tolist()
    [1, 2, 1]
    """
    n = int(vertex_count)
    if n < 0:
        raise GraphError(f"vertex_count must be non-negative, got {n}")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges)
    if arr.size == 0:
        arr = np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError("edges must be a sequence of vertex pairs")
    arr = arr.astype(np.int64, copy=False)

    bad = (arr < 0) | (arr >= n)
    if bad.any():
        row = int(np.flatnonzero(bad.any(axis=1))[0])
        raise GraphError(
            f"edge {tuple(arr[row].tolist())} has an endpoint outside [0, {n})"
        )
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        row = int(np.flatnonzero(loops)[0])
        raise GraphError(f"self-loop {tuple(arr[row].tolist())} is not allowed")

    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keys = np.unique(lo * max(n, 1) + hi)
    lo, hi = keys // max(n, 1), keys % max(n, 1)
    return _from_canonical(n, lo, hi)


def _from_canonical(n: int, lo: np.ndarray, hi: np.ndarray) -> Graph:
    """CSR from deduplicated ``lo < hi`` edge arrays."""
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(indptr, dst[order])


def figure_one_graph() -> Graph:
    """Two triangles ``{0,1,2}`` and ``{3,4,5}`` bridged by the edge ``2-3``.

    Vertex ``i`` here is ``v_{i+1}`` in the usual 1-based drawing.
    """
    return build_graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


_HEADER = "%% vertices"


def load_edge_list(path, vertex_count: int | None = None, remap: bool = False):
    """Read an edge-list file.

    One edge per line as two whitespace-separated non-negative integers.
    Lines starting with ``#`` and blank lines are skipped. A header line
    ``%% vertices N`` fixes the vertex count; otherwise ``max id + 1`` is used
    (or ``vertex_count`` if given).

    With ``remap=True`` the ids present in the file are relabelled densely in
    increasing order and ``(graph, mapping)`` is returned, where
    ``mapping[new_id] == original_id``.
    """
    declared = vertex_count
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("%%"):
                parts = line.split()
                if len(parts) != 3 or " ".join(parts[:2]) != _HEADER:
                    raise EdgeListFormatError(path, lineno, f"bad header {line!r}")
                try:
                    declared = int(parts[2])
                except ValueError:
                    raise EdgeListFormatError(path, lineno, f"bad vertex count {parts[2]!r}")
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListFormatError(path, lineno, f"expected 2 fields, got {len(parts)}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListFormatError(path, lineno, f"non-integer vertex id in {line!r}")
            if u < 0 or v < 0:
                raise EdgeListFormatError(path, lineno, "negative vertex id")
            if u == v:
                raise EdgeListFormatError(path, lineno, f"self-loop ({u}, {v})")
            if declared is not None and not remap and max(u, v) >= declared:
                raise EdgeListFormatError(
                    path, lineno, f"vertex id {max(u, v)} >= declared count {declared}"
                )
            pairs.append((u, v))

    arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    if remap:
        mapping, inverse = np.unique(arr, return_inverse=True)
        arr = inverse.reshape(-1, 2)
        n = len(mapping)
        return build_graph(n, arr), mapping
    if declared is None:
        declared = int(arr.max()) + 1 if len(arr) else 0
    return build_graph(declared, arr)


def save_edge_list(g: Graph, path) -> None:
    """Write ``g`` with a ``%% vertices`` header so isolated vertices survive."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(f"{_HEADER} {g.vertex_count}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
    os.replace(tmp, path)
