"""Size-5 census from connected triples.

Every induced P3 or K3 ``(p1, p2, p3)`` is an anchor. Its adjacency splits by
the relation of each outside vertex to p1, p2 and p3 (7 sets undirected, 63
directed). The 5-pattern formed with any two outside vertices depends only on
the anchor's class, their two sets and the edge between them, so per-anchor
frequencies follow from set sizes and inter-set arc counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels
from .canonical import pattern_lookup, type_index, type_name
from .census import MotifHistogram, align_anchor, anchor_raw_counts, divide, timed
from .graph import DirectedGraph, UndirectedSkeleton
from .motif4 import apply_set_sums, count_set_arcs

UNDIRECTED_SET_NAMES = {
    (1, 0, 0): "X1",
    (0, 1, 0): "X2",
    (0, 0, 1): "X3",
    (1, 1, 0): "Y12",
    (1, 0, 1): "Y13",
    (0, 1, 1): "Y23",
    (1, 1, 1): "Z",
}


@dataclass(frozen=True)
class TripleJob:
    """A connected induced triple; a P3 is stored as (end, center, end)."""

    p: tuple[int, int, int]
    kind: str  # "P3" or "K3"
    delta: int = -1  # class among the connected 3-vertex classes, once classified
    order: tuple[int, int, int] | None = None  # p rearranged onto delta's representative


def list_triples(s: UndirectedSkeleton | DirectedGraph) -> np.ndarray:
    """(T, 3) array of connected triples: P3 rows are (end, center, end) with
    ends increasing, K3 rows sorted."""
    return _kernels.list_triples(s.indptr, s.indices)


def iter_triple_jobs(s: UndirectedSkeleton | DirectedGraph) -> Iterator[TripleJob]:
    for a, b, c in list_triples(s).tolist():
        closed = c in s.neighbors(a)
        yield TripleJob((a, b, c), "K3" if closed else "P3")


def classify_triple_directed(g: DirectedGraph, t: TripleJob) -> TripleJob:
    lookup = pattern_lookup(5, True)
    delta, order = align_anchor(g, t.p, lookup.anchors)
    return TripleJob(t.p, t.kind, delta, order)


# ---------------------------------------------------------------------------
# undirected


@dataclass(frozen=True)
class TripleSetsUndirected:
    job: TripleJob
    sets: dict[str, frozenset[int]]
    m: Counter = field(default_factory=Counter)  # keys like ("X1", "X3"), sorted by name

    def n(self, name: str) -> int:
        return len(self.sets.get(name, ()))


def triple_sets_undirected(s: UndirectedSkeleton, t: TripleJob) -> TripleSetsUndirected:
    p = t.p
    nbrs = [set(s.neighbors(x).tolist()) for x in p]
    label: dict[int, str] = {}
    for w in set().union(*nbrs) - set(p):
        label[w] = UNDIRECTED_SET_NAMES[tuple(int(w in nb) for nb in nbrs)]
    sets: dict[str, set[int]] = {}
    for w, name in label.items():
        sets.setdefault(name, set()).add(w)
    m: Counter = Counter()
    for x, lx in label.items():
        for y in s.neighbors(x).tolist():
            if y > x and y in label:
                m[tuple(sorted((lx, label[y])))] += 1
    return TripleSetsUndirected(t, {k: frozenset(v) for k, v in sets.items()}, m)


@timed
def count5_undirected(s: UndirectedSkeleton, workers: int = 1) -> MotifHistogram:
    lookup = pattern_lookup(5, False)
    raw = anchor_raw_counts(s.indptr, s.indices, s.rel, list_triples(s), lookup, workers)
    return MotifHistogram(5, False, divide(raw, lookup.table))


# ---------------------------------------------------------------------------
# directed


@dataclass(frozen=True)
class TripleSetsDirected:
    """Up to 63 nonempty sets keyed by set index, plus sparse arc counters."""

    job: TripleJob
    sets: dict[int, frozenset[int]]
    arcs: Counter = field(default_factory=Counter)
    biarcs: Counter = field(default_factory=Counter)

    def named(self) -> dict[str, frozenset[int]]:
        return {type_name(t, 3): v for t, v in sorted(self.sets.items())}


def triple_sets_directed(g: DirectedGraph, t: TripleJob) -> TripleSetsDirected:
    """Partition adj of the triple by (relation to p1, p2, p3) in the aligned order."""
    if t.order is None:
        t = classify_triple_directed(g, t)
    p = t.order
    label: dict[int, int] = {}
    for w in set().union(*(g.neighbors(x).tolist() for x in p)) - set(p):
        label[w] = type_index(tuple(g.relation(x, w) for x in p))
    sets: dict[int, set[int]] = {}
    for w, ti in label.items():
        sets.setdefault(ti, set()).add(w)
    arcs, biarcs = count_set_arcs(g, label)
    return TripleSetsDirected(t, {k: frozenset(v) for k, v in sets.items()}, arcs, biarcs)


@timed
def count5_directed(g: DirectedGraph, workers: int = 1) -> MotifHistogram:
    lookup = pattern_lookup(5, True)
    raw = anchor_raw_counts(g.indptr, g.indices, g.rel, list_triples(g), lookup, workers)
    return MotifHistogram(5, True, divide(raw, lookup.table))


def count5_directed_reference(g: DirectedGraph) -> MotifHistogram:
    """Per-triple evaluation over explicit sets; same result as count5_directed, slower."""
    lookup = pattern_lookup(5, True)
    raw = np.zeros(len(lookup.table), dtype=np.int64)
    for job in iter_triple_jobs(g):
        ts = triple_sets_directed(g, job)
        sizes = {ti: len(v) for ti, v in ts.sets.items()}
        apply_set_sums(lookup.cls[ts.job.delta], sizes, ts.arcs, ts.biarcs, raw)
    return MotifHistogram(5, True, divide(raw, lookup.table))


def delta_counts(g: DirectedGraph) -> Counter:
    """Number of triples per 3-vertex class, from the triple listing."""
    lookup = pattern_lookup(5, True)
    return Counter(align_anchor(g, p, lookup.anchors)[0] for p in list_triples(g).tolist())

