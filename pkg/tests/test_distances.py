import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterdist.distances import (
    DistanceMeasure,
    PairDistance,
    burt,
    distance,
    distance_rows,
    distance_values,
    jaccard,
    otsuka_ochiai,
    pairwise,
)
from clusterdist.graph import build_graph
from clusterdist.ppm import BENCHMARK_GRAPHS, generate_ppm

from conftest import burt_sq_oracle, dense, jaccard_oracle, otoc_oracle, random_graph

K45 = build_graph(45, [(u, v) for u in range(45) for v in range(u + 1, 45)])
TRIANGLE = build_graph(3, [(0, 1), (1, 2), (0, 2)])


# Figure 1 in 1-based labels: v1=0, v2=1, v3=2, v4=3, v5=4, v6=5.


def test_jaccard_figure_one(fig1):
    assert jaccard(fig1, 2, 0) == 0.75
    assert jaccard(fig1, 2, 3) == 1.0


def test_jaccard_identical_neighborhoods():
    path = build_graph(3, [(0, 1), (1, 2)])
    assert jaccard(path, 0, 2) == 0.0


def test_clique_values():
    assert jaccard(K45, 3, 9) == 2 / 45
    assert otsuka_ochiai(K45, 3, 9) == 1 / 44
    assert burt(K45, 3, 9) == 0.0


def test_otoc_figure_one(fig1):
    assert otsuka_ochiai(fig1, 2, 0) == pytest.approx(1 - 1 / math.sqrt(6), abs=1e-15)
    assert otsuka_ochiai(fig1, 2, 0) == pytest.approx(0.5918, abs=5e-5)
    assert otsuka_ochiai(fig1, 2, 3) == 1.0


def test_burt_figure_one(fig1):
    assert burt(fig1, 0, 2) == 1.0
    assert burt(fig1, 2, 3) == 2.0


def test_zero_degree_conventions():
    g = build_graph(4, [(2, 3)])
    assert jaccard(g, 0, 1) == 0.0
    assert otsuka_ochiai(g, 0, 1) == 0.0
    assert jaccard(g, 0, 2) == 1.0
    assert otsuka_ochiai(g, 0, 2) == 1.0
    assert burt(g, 0, 1) == 0.0
    assert burt(g, 0, 2) == 1.0


def test_shared_edge_only_is_maximal():
    g = build_graph(2, [(0, 1)])
    assert jaccard(g, 0, 1) == 1.0
    assert burt(g, 0, 1) == 0.0


def test_out_of_range():
    with pytest.raises(IndexError):
        jaccard(TRIANGLE, 0, 3)
    with pytest.raises(IndexError, match=r"\(1, 7\)"):
        list(pairwise(TRIANGLE, "burt", [(0, 1), (1, 7)]))


def test_measure_parsing():
    assert DistanceMeasure.parse("Jaccard") is DistanceMeasure.JACCARD
    assert DistanceMeasure.parse("otsuka-ochiai") is DistanceMeasure.OTSUKA_OCHIAI
    assert DistanceMeasure.parse(DistanceMeasure.BURT) is DistanceMeasure.BURT
    with pytest.raises(ValueError, match="unknown distance measure"):
        DistanceMeasure.parse("cosine-ish")


def test_pairwise_triangle():
    out = list(pairwise(TRIANGLE, "jaccard", [(0, 1), (0, 2), (1, 2)]))
    assert [(d.u, d.v) for d in out] == [(0, 1), (0, 2), (1, 2)]
    assert all(d.value == pytest.approx(2 / 3, abs=1e-15) for d in out)


def test_pairwise_empty_and_lazy():
    assert list(pairwise(TRIANGLE, "jaccard", [])) == []

    def endless():
        while True:
            yield (0, 1)

    stream = pairwise(TRIANGLE, "otoc", endless(), chunk_size=8)
    assert next(stream) == PairDistance(0, 1, 0.5)


def test_pairwise_g1_intra_burt_all_zero():
    g, assignment = generate_ppm(BENCHMARK_GRAPHS["G1"])
    pairs = [(int(u), int(v)) for m in assignment.members[:5] for u in m for v in m if u < v]
    assert all(d.value == 0.0 for d in pairwise(g, "burt", pairs))


@pytest.mark.parametrize("measure", list(DistanceMeasure))
def test_vectorised_matches_scalar(measure, rng):
    g = random_graph(rng, 40, 0.25)
    us = rng.integers(0, 40, 500)
    vs = rng.integers(0, 40, 500)
    fast = distance_values(g, measure, us, vs)
    slow = [distance(g, measure, u, v) for u, v in zip(us, vs)]
    assert np.array_equal(fast, slow)


@pytest.mark.parametrize("measure", list(DistanceMeasure))
def test_distance_rows_match_pairs(measure, rng):
    g = random_graph(rng, 30, 0.3)
    full = distance_rows(g, measure, 0, 30)
    dense_adj = g.adjacency.toarray().astype(np.float32)
    assert np.array_equal(full, distance_rows(g, measure, 0, 30, dense_adj))
    iu, ju = np.triu_indices(30, 1)
    assert np.array_equal(full[iu, ju], distance_values(g, measure, iu, ju))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 24), p=st.floats(0, 1), seed=st.integers(0, 2**32 - 1))
def test_against_set_oracles(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    A = dense(g)
    for u in range(n):
        for v in range(n):
            assert jaccard(g, u, v) == pytest.approx(jaccard_oracle(A, u, v), abs=1e-14)
            assert otsuka_ochiai(g, u, v) == pytest.approx(otoc_oracle(A, u, v), abs=1e-14)
            assert burt(g, u, v) == math.sqrt(burt_sq_oracle(A, u, v))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 40), p=st.floats(0.05, 0.95), seed=st.integers(0, 2**32 - 1))
def test_symmetry_range_and_pseudometric_identity(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    nbrs = [set(g.neighbors(v).tolist()) for v in range(n)]
    for u in range(n):
        for v in range(u, n):
            for measure in DistanceMeasure:
                assert distance(g, measure, u, v) == distance(g, measure, v, u)
            z, o, b = jaccard(g, u, v), otsuka_ochiai(g, u, v), burt(g, u, v)
            assert 0.0 <= z <= 1.0 and 0.0 <= o <= 1.0
            assert 0.0 <= b <= math.sqrt(max(n - 2, 0))
            assert (z == 0.0) == (nbrs[u] == nbrs[v])
            assert (o == 0.0) == (nbrs[u] == nbrs[v])


@settings(max_examples=60, deadline=None)
@given(n=st.integers(3, 64), p=st.floats(0, 1), seed=st.integers(0, 2**32 - 1))
def test_jaccard_triangle_inequality(n, p, seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, p)
    for x, y, z in rng.integers(0, n, size=(20, 3)):
        assert jaccard(g, x, z) <= jaccard(g, x, y) + jaccard(g, y, z) + 1e-15


@pytest.mark.parametrize("n", [2, 3, 5, 12, 45])
def test_isolated_clique_inequality(n):
    # Clique on 0..n-1 plus an unrelated edge elsewhere.
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)] + [(n, n + 1)]
    g = build_graph(n + 2, edges)
    for u, v in [(0, 1), (0, n - 1)]:
        if u == v:
            continue
        shared = g.common_neighbor_count(u, v)
        union = g.degree(u) + g.degree(v) - shared
        assert shared < union
        assert jaccard(g, u, v) == pytest.approx(2 / n, abs=1e-15)
        assert otsuka_ochiai(g, u, v) == pytest.approx(1 / (n - 1), abs=1e-15)
