"""Brute-force census: enumerate connected induced k-subgraphs and classify each.

Slow by design; it shares only the graph type and the class tables with the
fast counters, so agreement between the two is a meaningful check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .canonical import MAX_K, MIN_K, ClassTable, class_table, pair_list
from .census import MotifHistogram
from .graph import DirectedGraph, UndirectedSkeleton

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleReport:
    k: int
    directed: bool
    histogram: MotifHistogram
    total: int
    elapsed: float


def _adjacency(g: DirectedGraph | UndirectedSkeleton) -> list[set[int]]:
    return [set(g.neighbors(v).tolist()) for v in range(g.n)]


def enumerate_connected_induced(
    g: DirectedGraph | UndirectedSkeleton, k: int
) -> Iterator[tuple[int, ...]]:
    """Every vertex set of size ``k`` with a connected skeleton, exactly once.

    ESU scheme: a set is grown from its smallest vertex, and a candidate may
    only join through the vertex that first made it adjacent to the set.
    """
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"k must be in {MIN_K}..{MAX_K}, got {k}")
    adj = _adjacency(g)

    def extend(sub: list[int], closed: set[int], ext: list[int], root: int):
        if len(sub) == k:
            yield tuple(sub)
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            new = [u for u in adj[w] if u > root and u not in closed]
            sub.append(w)
            yield from extend(sub, closed | adj[w], ext + new, root)
            sub.pop()

    for v in range(g.n):
        ext = [u for u in adj[v] if u > v]
        yield from extend([v], adj[v] | {v}, ext, v)


def _classifier(g, k: int, directed: bool):
    pairs = pair_list(k, directed)
    p = len(pairs)
    shifts = [(i, j, 1 << (p - 1 - t)) for t, (i, j) in enumerate(pairs)]
    if directed:
        es = g.edge_set
    else:
        es = {(u, w) for u in range(g.n) for w in g.neighbors(u).tolist()}
    lookup = class_table(k, directed).lookup

    def classify(sub: tuple[int, ...]) -> int:
        code = 0
        for i, j, bit in shifts:
            if (sub[i], sub[j]) in es:
                code |= bit
        return int(lookup[code])

    return classify


def estimate_subgraphs(g: DirectedGraph | UndirectedSkeleton, k: int) -> int:
    """Upper bound on the number of connected induced k-sets.

    Every such set is two adjacent vertices away from a connected anchor of
    k-2 vertices, so sum C(|adj(anchor)|, 2) over anchors bounds it; anchors
    of three vertices are bounded coarsely through the maximum degree.
    """
    deg = np.diff(g.indptr).astype(object)
    c2 = lambda x: x * (x - 1) // 2  # noqa: E731
    if k == 3:
        return int(sum(c2(d) for d in deg))
    if k == 4:
        total = 0
        for u in range(g.n):
            for w in g.neighbors(u).tolist():
                if u < w:
                    total += c2(deg[u] + deg[w])
        return int(total)
    from .motif5 import list_triples

    d = np.diff(g.indptr)[list_triples(g)].sum(axis=1).astype(object)
    return int(sum(c2(x) for x in d))


def oracle_histogram(
    g: DirectedGraph | UndirectedSkeleton,
    k: int,
    directed: bool | None = None,
    budget: int = DEFAULT_BUDGET,
) -> OracleReport:
    """Census by enumeration. ``directed`` defaults to the input's type."""
    if directed is None:
        directed = isinstance(g, DirectedGraph)
    if directed and not isinstance(g, DirectedGraph):
        raise TypeError("directed census needs a DirectedGraph")
    est = estimate_subgraphs(g, k)
    if est > budget:
        raise BudgetExceeded(
            f"up to {est} connected {k}-subgraphs, over the oracle budget of {budget}"
        )
    t0 = time.perf_counter()
    table: ClassTable = class_table(k, directed)
    classify = _classifier(g, k, directed)
    counts = np.zeros(len(table), dtype=np.int64)
    total = 0
    for sub in enumerate_connected_induced(g, k):
        cid = classify(sub)
        if cid < 0:
            raise AssertionError(f"enumerated a disconnected set {sub}")
        counts[cid] += 1
        total += 1
        if total > budget:
            raise BudgetExceeded(f"more than {budget} connected {k}-subgraphs")
    elapsed = time.perf_counter() - t0
    hist = MotifHistogram(k, directed, counts, elapsed)
    return OracleReport(k, directed, hist, total, elapsed)


def audit_divisor(table: ClassTable, class_id: int) -> int:
    """Raw multiplicity of a class when its representative is counted alone."""
    from .census import anchor_raw_counts
    from .canonical import pattern_lookup

    rep = table.representative(class_id)
    g = DirectedGraph.from_matrix(rep)
    rel = g.rel if table.directed else g.skeleton().rel
    lookup = pattern_lookup(table.k, table.directed)
    anchors = _anchors_for(g, table.k)
    raw = anchor_raw_counts(g.indptr, g.indices, rel, anchors, lookup)
    others = np.delete(raw, class_id)
    if others.any():
        raise AssertionError(f"class {class_id} representative tallied into other classes")
    return int(raw[class_id])


def _anchors_for(g, k: int) -> np.ndarray:
    from . import motif4, motif5

    if k == 3:
        return np.arange(g.n, dtype=np.int64).reshape(-1, 1)
    if k == 4:
        return motif4.skeleton_edges(g)
    return motif5.list_triples(g)
