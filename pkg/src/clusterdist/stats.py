"""Pearson correlation with an explicit undefined result for constant series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["CorrelationResult", "VARIANCE_FLOOR", "pearson", "pooled"]

VARIANCE_FLOOR = 1e-15


@dataclass(frozen=True)
class CorrelationResult:
    rho: float | None
    n_points: int

    @property
    def defined(self) -> bool:
        return self.rho is not None

    def __str__(self) -> str:
        return "NA" if self.rho is None else f"{self.rho:.6g}"


def pearson(xs: Sequence[float], ys: Sequence[float]) -> CorrelationResult:
    """Sample Pearson coefficient, computed on mean-centred data.

    Returns ``rho=None`` when either series has sample variance below
    :data:`VARIANCE_FLOOR`.

    >>> pearson([1, 2, 3], [6, 4, 2]).rho
    -1.0
    >>> str(pearson([5, 5, 5], [1, 2, 3]))
    'NA'
    """
    x = np.asarray(xs, dtype=np.float64).ravel()
    y = np.asarray(ys, dtype=np.float64).ravel()
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    dx = x - math.fsum(x.tolist()) / n
    dy = y - math.fsum(y.tolist()) / n
    sxx = math.fsum((dx * dx).tolist())
    syy = math.fsum((dy * dy).tolist())
    if sxx / (n - 1) < VARIANCE_FLOOR or syy / (n - 1) < VARIANCE_FLOOR:
        return CorrelationResult(None, n)
    sxy = math.fsum((dx * dy).tolist())
    rho = sxy / math.sqrt(sxx * syy)
    return CorrelationResult(min(1.0, max(-1.0, rho)), n)


def pooled(point_sets, average_coefficients: bool = False) -> CorrelationResult:
    """Correlation across several ``(xs, ys)`` point sets.

    By default all points are concatenated and correlated once. With
    ``average_coefficients=True`` the result is the plain mean of the
    per-set coefficients instead (sets with undefined coefficients are
    skipped; undefined if none remain).
    """
    sets = [(np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64)) for xs, ys in point_sets]
    if not sets or all(len(xs) == 0 for xs, _ in sets):
        raise ValueError("pooled correlation needs at least one non-empty point set")
    total = sum(len(xs) for xs, _ in sets)
    if average_coefficients:
        rhos = [pearson(xs, ys).rho for xs, ys in sets if len(xs)]
        rhos = [r for r in rhos if r is not None]
        return CorrelationResult(math.fsum(rhos) / len(rhos) if rhos else None, total)
    xs = np.concatenate([s[0] for s in sets])
    ys = np.concatenate([s[1] for s in sets])
    return pearson(xs, ys)
