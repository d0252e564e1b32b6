"""One entry point for the accelerated census of any supported order."""

from __future__ import annotations

from .canonical import MAX_K, MIN_K
from .census import MotifHistogram
from .graph import DirectedGraph, UndirectedSkeleton
from .motif3 import count3_directed, count3_undirected
from .motif4 import count4_directed, count4_undirected
from .motif5 import count5_directed, count5_undirected


def census(
    g: DirectedGraph | UndirectedSkeleton, k: int, directed: bool = True, workers: int = 1
) -> MotifHistogram:
    """Histogram of connected induced k-subgraphs.

    With ``directed=False`` a DirectedGraph is reduced to its skeleton first.
    """
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"k must be in {MIN_K}..{MAX_K}, got {k}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if directed:
        if not isinstance(g, DirectedGraph):
            raise TypeError("directed census needs a DirectedGraph")
        if k == 3:
            return count3_directed(g)
        if k == 4:
            return count4_directed(g, workers)
        return count5_directed(g, workers)
    s = g.skeleton() if isinstance(g, DirectedGraph) else g
    if k == 3:
        return count3_undirected(s)
    if k == 4:
        return count4_undirected(s)
    return count5_undirected(s, workers)
