import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motifcensus.canonical import (
    REL_BI,
    REL_IN,
    REL_OUT,
    VAR_BACK,
    VAR_BI,
    VAR_FWD,
    VAR_NONE,
    AdjacencyCode,
    CanonicalError,
    _build_table,
    canonical_code,
    class_table,
    compress,
    correction_divisor,
    enumerate_classes,
    expand,
    pack,
    pattern_graph,
    pattern_lookup,
    permute,
    type_index,
    type_name,
    unpack,
)
from motifcensus.census import align_anchor
from motifcensus.graph import DirectedGraph


def _mat(k, arcs, both=()):
    m = np.zeros((k, k), dtype=np.uint8)
    for i, j in arcs:
        m[i, j] = 1
    for i, j in both:
        m[i, j] = m[j, i] = 1
    return m


def test_three_cycle_orientations_share_code():
    a = canonical_code(_mat(3, [(0, 1), (1, 2), (2, 0)]))
    b = canonical_code(_mat(3, [(0, 2), (2, 1), (1, 0)]))
    assert a == b


def test_bidirected_triangle_code():
    c = canonical_code(_mat(3, [], both=[(0, 1), (1, 2), (0, 2)]))
    assert c.matrix().sum() == 6
    assert c.matrix_string() == "011/101/110"


def test_canonical_is_minimum_over_permutations():
    rng = np.random.default_rng(0)
    for _ in range(50):
        m = (rng.random((4, 4)) < 0.4).astype(np.uint8)
        np.fill_diagonal(m, 0)
        c = canonical_code(m).bits
        assert c == min(pack(permute(m, p)) for p in itertools.permutations(range(4)))


@settings(max_examples=300, deadline=None)
@given(st.integers(3, 5).flatmap(lambda k: st.tuples(
    st.just(k),
    st.lists(st.booleans(), min_size=k * k, max_size=k * k),
    st.permutations(list(range(k))),
)))
def test_permutation_invariance(args):
    k, bits, perm = args
    m = np.array(bits, dtype=np.uint8).reshape(k, k)
    np.fill_diagonal(m, 0)
    assert canonical_code(m) == canonical_code(permute(m, perm))
    sym = m | m.T
    assert canonical_code(sym, directed=False) == canonical_code(permute(sym, perm), directed=False)


def test_bulk_permutation_invariance():
    rng = np.random.default_rng(42)
    for _ in range(10_000 // 50):
        k = int(rng.integers(3, 6))
        m = (rng.random((k, k)) < 0.5).astype(np.uint8)
        np.fill_diagonal(m, 0)
        ref = canonical_code(m)
        for _ in range(50):
            assert canonical_code(permute(m, rng.permutation(k))) == ref


def test_canonical_code_rejects_order():
    with pytest.raises(CanonicalError):
        canonical_code(np.zeros((2, 2), dtype=np.uint8))
    with pytest.raises(CanonicalError):
        canonical_code(np.zeros((6, 6), dtype=np.uint8))


def test_adjacency_code_validation_and_strings():
    with pytest.raises(CanonicalError):
        AdjacencyCode(3, 1 << 8)  # bit (0, 0)
    with pytest.raises(CanonicalError):
        AdjacencyCode(3, pack(_mat(3, [(0, 1)])), directed=False)
    c = AdjacencyCode(3, pack(_mat(3, [(0, 1), (1, 2)])))
    assert AdjacencyCode.from_matrix_string(c.matrix_string()) == c
    assert c.hex == f"{c.bits:03x}"


def test_compress_round_trip():
    for k in (3, 4):
        for directed in (True, False):
            rng = np.random.default_rng(k)
            for _ in range(30):
                m = (rng.random((k, k)) < 0.5).astype(np.uint8)
                if not directed:
                    m = np.triu(m, 1)
                    m = m | m.T
                np.fill_diagonal(m, 0)
                code = pack(m)
                assert expand(compress(code, k, directed), k, directed) == code
                assert np.array_equal(unpack(code, k), m)


@pytest.mark.parametrize("k,directed,count", [
    (3, True, 13), (4, True, 199), (5, True, 9364), (3, False, 2), (4, False, 6), (5, False, 21),
])
def test_class_counts(k, directed, count):
    t = enumerate_classes(k, directed)
    assert len(t) == count
    assert np.all(np.diff(t.codes.astype(np.int64)) > 0)
    assert (t.divisors >= 1).all()


def test_class_table_deterministic():
    a, b = _build_table(4, True), _build_table(4, True)
    assert np.array_equal(a.codes, b.codes) and np.array_equal(a.divisors, b.divisors)
    assert np.array_equal(a.lookup, b.lookup)


def test_class_of_is_rank_of_canonical_code():
    t = class_table(4, True)
    for cid in range(0, len(t), 17):
        rep = t.representative(cid)
        assert t.class_of(permute(rep, [3, 1, 0, 2])) == cid
        assert canonical_code(rep).bits == int(t.codes[cid])
    with pytest.raises(CanonicalError):
        t.class_of(_mat(4, [(0, 1), (2, 3)]))


def test_divisor_examples():
    und4 = class_table(4, False)
    c4 = und4.class_of(_mat(4, [], both=[(0, 1), (1, 2), (2, 3), (3, 0)]))
    p4 = und4.class_of(_mat(4, [], both=[(0, 1), (1, 2), (2, 3)]))
    assert correction_divisor(und4, c4) == 4
    assert correction_divisor(und4, p4) == 1
    und5 = class_table(5, False)
    c5 = und5.class_of(_mat(5, [], both=[(i, (i + 1) % 5) for i in range(5)]))
    assert correction_divisor(und5, c5) == 5
    und3 = class_table(3, False)
    assert sorted(und3.divisors.tolist()) == [1, 3]


def test_lookup_shapes_and_symmetry():
    l4, l5 = pattern_lookup(4, True), pattern_lookup(5, True)
    assert l4.cls.shape == (2, 15, 15, 4)
    assert l5.cls.shape == (13, 63, 63, 4)
    assert (l5.cls >= 0).all() and (l4.cls >= 0).all()
    for lk in (l4, l5):
        diag = np.arange(lk.n_types)
        assert np.array_equal(lk.cls[:, diag, diag, VAR_FWD], lk.cls[:, diag, diag, VAR_BACK])


def _bidirected_kind(lookup):
    kinds = lookup.anchors.kinds
    return next(k for k in range(len(kinds)) if (kinds.representative(k) | np.eye(kinds.k, dtype=np.uint8)).all())


def test_lookup4_cells():
    lk = pattern_lookup(4, True)
    t4 = class_table(4, True)
    kb = _bidirected_kind(lk)
    aa = type_index((REL_BI, REL_BI))
    a1, a2 = type_index((REL_BI, 0)), type_index((0, REL_BI))
    # u=0, v=1, v1=2, v2=3
    k4e = _mat(4, [], both=[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    assert lk.cls[kb, aa, aa, VAR_NONE] == t4.class_of(k4e)
    p4 = _mat(4, [], both=[(2, 0), (0, 1), (1, 3)])
    assert lk.cls[kb, a1, a2, VAR_NONE] == t4.class_of(p4)


def test_lookup4_matches_hand_built_variations():
    """v1 bidirected to u only, v2 bidirected to both, each v1-v2 edge variant."""
    lk = pattern_lookup(4, True)
    t4 = class_table(4, True)
    base = [(0, 1), (0, 2), (0, 3), (1, 3)]  # u=0, v=1, v1=2, v2=3
    drawn = {
        VAR_NONE: _mat(4, [], both=base),
        VAR_FWD: _mat(4, [(2, 3)], both=base),
        VAR_BACK: _mat(4, [(3, 2)], both=base),
        VAR_BI: _mat(4, [], both=base + [(2, 3)]),
    }
    for var, m in drawn.items():
        g = DirectedGraph.from_matrix(m)
        kind, (u, v) = align_anchor(g, (0, 1), lk.anchors)
        t1 = type_index((g.relation(u, 2), g.relation(v, 2)))
        t2 = type_index((g.relation(u, 3), g.relation(v, 3)))
        assert lk.cls[kind, t1, t2, var] == t4.class_of(m)
    assert {type_name(t1, 2), type_name(t2, 2)} <= {"(A,-)", "(-,A)", "(A,A)"}


def test_lookup5_named_cells():
    lk = pattern_lookup(5, True)
    t5 = class_table(5, True)
    kb = None
    for k in range(len(lk.anchors.kinds)):
        rep = lk.anchors.kinds.representative(k)
        if rep.sum() == 4 and (rep == rep.T).all():
            kb = k  # all-bidirected P3, centre at vertex 2 in the representative
    rep = lk.anchors.kinds.representative(kb)
    ends = [i for i in range(3) if rep[i].sum() == 1]
    rel = lambda i: tuple(REL_BI if j == i else 0 for j in range(3))  # noqa: E731
    m = pattern_graph(lk, kb, type_index(rel(ends[0])), type_index(rel(ends[1])), VAR_NONE)
    p5 = _mat(5, [], both=[(0, 1), (1, 2), (2, 3), (3, 4)])
    assert t5.class_of(m) == t5.class_of(p5)
    assert lk.cls[kb, type_index(rel(ends[0])), type_index(rel(ends[1])), VAR_NONE] == t5.class_of(p5)

    k3 = next(k for k in range(len(lk.anchors.kinds)) if lk.anchors.kinds.representative(k).sum() == 6)
    aaa = type_index((REL_BI,) * 3)
    k5e = np.ones((5, 5), dtype=np.uint8) - np.eye(5, dtype=np.uint8)
    k5e[3, 4] = k5e[4, 3] = 0
    assert lk.cls[k3, aaa, aaa, VAR_NONE] == t5.class_of(k5e)


def test_lookup5_matches_hand_built_variations():
    """Bidirected path p1-p2-p3; v1 in set(A,B,-), v2 in set(-,-,C)."""
    lk = pattern_lookup(5, True)
    t5 = class_table(5, True)
    # p1=0, p2=1, p3=2, v1=3, v2=4
    both = [(0, 1), (1, 2), (0, 3)]
    arcs = [(1, 3), (4, 2)]
    drawn = {
        VAR_NONE: _mat(5, arcs, both),
        VAR_FWD: _mat(5, arcs + [(3, 4)], both),
        VAR_BACK: _mat(5, arcs + [(4, 3)], both),
        VAR_BI: _mat(5, arcs, both + [(3, 4)]),
    }
    for var, m in drawn.items():
        g = DirectedGraph.from_matrix(m)
        kind, p = align_anchor(g, (0, 1, 2), lk.anchors)
        t1 = type_index(tuple(g.relation(x, 3) for x in p))
        t2 = type_index(tuple(g.relation(x, 4) for x in p))
        assert lk.cls[kind, t1, t2, var] == t5.class_of(m)
    g = DirectedGraph.from_matrix(drawn[VAR_NONE])
    assert tuple(g.relation(x, 3) for x in (0, 1, 2)) == (REL_BI, REL_OUT, 0)
    assert tuple(g.relation(x, 4) for x in (0, 1, 2)) == (0, 0, REL_IN)


def test_lookup_cells_rebuild_to_their_class():
    rng = np.random.default_rng(3)
    for k in (4, 5):
        lk = pattern_lookup(k, True)
        for _ in range(200):
            kind = int(rng.integers(lk.n_kinds))
            t1, t2 = rng.integers(lk.n_types, size=2)
            var = int(rng.integers(4))
            m = pattern_graph(lk, kind, int(t1), int(t2), var)
            assert lk.table.class_of(m) == lk.cls[kind, t1, t2, var]


def test_undirected_lookup_unused_cells():
    lk = pattern_lookup(4, False)
    b1 = type_index((REL_OUT, 0))
    assert (lk.cls[:, b1] == -1).all()
    assert (lk.cls[..., VAR_FWD] == -1).all()
    a1 = type_index((REL_BI, 0))
    assert (lk.cls[:, a1, a1, VAR_NONE] >= 0).all()
