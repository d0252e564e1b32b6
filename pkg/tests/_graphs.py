"""Seeded random graph generators shared by the tests."""

import numpy as np

from motifcensus.graph import DirectedGraph


def random_digraph(n: int, arcs: int, bi_fraction: float, rng) -> DirectedGraph:
    """About ``arcs`` arcs on ``n`` vertices; ``bi_fraction`` of connected pairs are bidirected."""
    pairs_max = n * (n - 1) // 2
    p = min(pairs_max, max(1, round(arcs / (1 + bi_fraction))))
    iu, ju = np.triu_indices(n, 1)
    pick = rng.choice(len(iu), size=p, replace=False)
    u, v = iu[pick], ju[pick]
    nb = round(bi_fraction * p)
    flip = rng.random(p) < 0.5
    src = np.where(flip, v, u)
    dst = np.where(flip, u, v)
    src = np.concatenate([src, dst[:nb]])
    dst = np.concatenate([dst, src[:nb]])
    return DirectedGraph(n, src, dst)


def fast_random_digraph(n: int, arcs: int, rng, skew: float = 0.0) -> DirectedGraph:
    """Large sparse digraph; ``skew`` > 0 draws sources from a power-law weight."""
    w = None
    if skew:
        w = 1.0 / np.arange(1, n + 1) ** skew
        w /= w.sum()
    keys = np.empty(0, dtype=np.int64)
    while len(keys) < arcs:
        need = 2 * (arcs - len(keys)) + 16
        a = rng.choice(n, size=need, p=w)
        b = rng.integers(0, n, need)
        ok = a != b
        new = (a * n + b)[ok]
        keys = np.concatenate([keys, new])
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
    keys = keys[:arcs]
    return DirectedGraph(n, keys // n, keys % n)
