import numpy as np
import pytest
from _graphs import random_digraph

from motifcensus.canonical import class_table
from motifcensus.graph import DirectedGraph, UndirectedSkeleton
from motifcensus.motif3 import (
    compute_vertex_vars,
    count3_directed,
    count3_undirected,
    list_triangles,
    line_classes,
    vertex_pattern_frequencies,
)
from motifcensus.oracle import oracle_histogram


def _complete(n):
    return UndirectedSkeleton.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _cycle(n):
    return UndirectedSkeleton.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_triangle_listing():
    assert len(list_triangles(_complete(4))) == 4
    assert len(list_triangles(_cycle(5))) == 0
    tri = list_triangles(_complete(5))
    assert len(tri) == 10
    assert (np.diff(tri, axis=1) > 0).all()
    assert len({tuple(t) for t in tri.tolist()}) == 10


def test_vertex_vars_bidirected_triangle():
    g = DirectedGraph.from_edges([(u, v) for u in range(3) for v in range(3) if u != v])
    vv = compute_vertex_vars(g)
    for v in range(3):
        d = vv.of(v)
        assert d["n_a"] == 2 and d["mb_aa"] == 1
        assert sum(x for key, x in d.items() if key not in ("n_a", "mb_aa")) == 0


def test_vertex_vars_cycle():
    vv = compute_vertex_vars(DirectedGraph.from_edges([(0, 1), (1, 2), (2, 0)]))
    assert vv.of(0)["m_bc"] == 1
    assert sum(vv.of(0).values()) - 2 == 1  # n_b + n_c + m_bc


def test_vertex_vars_star_zero():
    g = DirectedGraph.from_edges([(0, 1), (1, 0), (0, 2), (3, 0), (0, 4)])
    assert not compute_vertex_vars(g).counters.any()


def test_counter_sum_is_three_triangles():
    rng = np.random.default_rng(1)
    g = random_digraph(30, 120, 0.3, rng)
    vv = compute_vertex_vars(g)
    assert vv.counters.sum() == 3 * len(list_triangles(g))


def test_star_center_frequencies():
    # centre 0 with a in A, b in B, c in C
    g = DirectedGraph.from_edges([(0, 1), (1, 0), (0, 2), (3, 0)])
    h = count3_directed(g)
    t = class_table(3, True)
    lines = line_classes()
    assert h.nonzero() == {lines[1]: 1, lines[2]: 1, lines[3]: 1}
    assert t.class_of([[0, 1, 0], [1, 0, 1], [0, 0, 0]]) == lines[1]


def test_bidirected_triangle_census():
    g = DirectedGraph.from_edges([(u, v) for u in range(3) for v in range(3) if u != v])
    h = count3_directed(g)
    assert h.total == 1 and h.counts[class_table(3, True).class_of(np.ones((3, 3)) - np.eye(3))] == 1


def test_pattern_lines_cover_all_classes():
    assert sorted(set(line_classes().values())) == list(range(13))


def test_frequencies_non_negative():
    rng = np.random.default_rng(2)
    g = random_digraph(40, 200, 0.3, rng)
    for freq in vertex_pattern_frequencies(compute_vertex_vars(g)).values():
        assert (freq >= 0).all()


def test_undirected_examples():
    t = class_table(3, False)
    h = count3_undirected(_cycle(5))
    assert h.counts.tolist() == [5, 0] if t.divisors[0] == 1 else [0, 5]
    h = count3_undirected(_complete(4))
    assert h.total == 4 and h.counts.max() == 4


@pytest.mark.parametrize("seed", range(12))
def test_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    g = random_digraph(int(rng.integers(5, 40)), int(rng.integers(10, 150)), [0, 0.3, 1][seed % 3], rng)
    assert count3_directed(g) == oracle_histogram(g, 3).histogram
    s = g.skeleton()
    assert count3_undirected(s) == oracle_histogram(s, 3).histogram


def test_isolated_vertex_does_not_change_counts():
    rng = np.random.default_rng(9)
    g = random_digraph(20, 50, 0.3, rng)
    h = DirectedGraph(g.n + 1, g.src, g.dst)
    assert count3_directed(g) == count3_directed(h)
