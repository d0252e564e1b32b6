import io

import numpy as np
import pytest
from _graphs import random_digraph

from motifcensus.graph import (
    DirectedGraph,
    EmptyGraphError,
    GraphParseError,
    UndirectedSkeleton,
    adjacency_of_set,
    dumps_edge_list,
    load_edge_list,
    partition_neighbors,
    skeleton,
)


def test_load_partitions():
    g, rep = load_edge_list(b"0 1\n1 0\n0 2\n")
    assert g.n == 3
    assert g.bi_nbrs[0] == [1]
    assert g.out_nbrs[0] == [2]
    assert g.in_nbrs[2] == [0]
    assert rep.m == 3


def test_load_comments_and_labels():
    g, _ = load_edge_list(b"a b\nb a\n# c\n% also a comment\n\n")
    assert g.n == 2
    assert g.n_bidirected == 1
    assert g.labels == ("a", "b")


def test_load_drops_loops_and_duplicates():
    g, rep = load_edge_list(b"0 0\n0 1\n0 1\n")
    assert (g.n, g.m) == (2, 1)
    assert rep.dropped_self_loops == 1
    assert rep.dropped_duplicates == 1


def test_isolated_vertex_option():
    text = b"x x\na b\n"
    g, rep = load_edge_list(text)
    assert g.n == 2 and rep.dropped_isolated == 1
    g, rep = load_edge_list(text, drop_isolated=False)
    assert g.n == 3 and g.labels == ("x", "a", "b")


def test_parse_error_line_number():
    with pytest.raises(GraphParseError) as exc:
        load_edge_list(b"0 1\n# ok\n1 2 3\n")
    assert exc.value.line == 3


def test_empty_graph():
    with pytest.raises(EmptyGraphError):
        load_edge_list(b"# nothing\n")


def test_text_stream_and_path(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("u v\nv w\n")
    g1, _ = load_edge_list(str(p))
    g2, _ = load_edge_list(io.StringIO("u v\nv w\n"))
    assert g1 == g2 and g1.labels == g2.labels


def test_partition_example():
    g = DirectedGraph.from_edges([(0, 1), (1, 0), (0, 2), (3, 0)])
    part = partition_neighbors(g)[0]
    assert (part.a, part.b, part.c) == ([1], [2], [3])
    assert part.sizes == (1, 1, 1)


def test_partition_single_arc_and_bidirected_triangle():
    g = DirectedGraph.from_edges([(0, 1)])
    p = partition_neighbors(g)[0]
    assert (p.a, p.b, p.c) == ([], [1], [])
    tri = DirectedGraph.from_edges([(u, v) for u in range(3) for v in range(3) if u != v])
    assert all(len(p.a) == 2 for p in partition_neighbors(tri))


def test_skeleton_examples():
    assert skeleton(DirectedGraph.from_edges([(0, 1), (1, 0)])).edges() == [(0, 1)]
    assert skeleton(DirectedGraph.from_edges([(0, 1)])).edges() == [(0, 1)]
    empty = DirectedGraph(3, [], [])
    assert skeleton(empty).m == 0


def test_adjacency_of_set():
    path = DirectedGraph.from_edges([(0, 1), (1, 2)])
    assert adjacency_of_set(path, {1}) == {0, 2}
    assert adjacency_of_set(path, {0, 1, 2}) == set()
    star = UndirectedSkeleton.from_edges(5, [(0, i) for i in range(1, 5)])
    assert adjacency_of_set(star, {0}) == {1, 2, 3, 4}


def test_constructor_rejects_bad_input():
    with pytest.raises(ValueError):
        DirectedGraph(2, [0], [0])
    with pytest.raises(ValueError):
        DirectedGraph(2, [0, 0], [1, 1])
    with pytest.raises(ValueError):
        DirectedGraph(2, [0], [2])


@pytest.mark.parametrize("seed", range(5))
def test_invariants_random(seed):
    rng = np.random.default_rng(seed)
    g = random_digraph(30, 90, 0.3, rng)
    es = g.edge_set
    bi, out, inn = g.bi_nbrs, g.out_nbrs, g.in_nbrs
    s = g.skeleton()
    for v in range(g.n):
        sets = set(bi[v]), set(out[v]), set(inn[v])
        assert not (sets[0] & sets[1] or sets[0] & sets[2] or sets[1] & sets[2])
        assert sets[0] | sets[1] | sets[2] == set(s.neighbors(v).tolist())
        for u in out[v]:
            assert v in inn[u] and (v, u) in es and (u, v) not in es
        for u in bi[v]:
            assert v in bi[u]
    assert g.m == sum(map(len, out)) + sum(map(len, bi))
    assert np.array_equal(g.degree_triples().sum(axis=1), s.degree())


def test_round_trip_by_labels():
    rng = np.random.default_rng(11)
    g = random_digraph(25, 70, 0.3, rng)
    g = DirectedGraph(g.n, g.src, g.dst, [f"v{i}" for i in range(g.n)])
    h, _ = load_edge_list(dumps_edge_list(g).encode())
    by_label = lambda x: {(x.labels[u], x.labels[v]) for u, v in x.edge_set}  # noqa: E731
    assert h.n == g.n and by_label(h) == by_label(g)
    perm = [int(lab[1:]) for lab in h.labels]
    assert h.relabeled(perm) == g


def test_relation_and_reverse():
    g = DirectedGraph.from_edges([(0, 1), (1, 2), (2, 1)])
    assert g.relation(0, 1) == 2 and g.relation(1, 0) == 3 and g.relation(1, 2) == 1
    assert g.relation(0, 2) == 0
    assert g.reversed().edge_set == {(1, 0), (1, 2), (2, 1)}
