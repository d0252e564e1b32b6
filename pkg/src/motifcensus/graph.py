"""Directed graphs with per-vertex neighbor partitions, and edge-list I/O."""

from __future__ import annotations

import functools
import io
import logging
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .canonical import REL_BI, REL_IN, REL_OUT

log = logging.getLogger(__name__)


class GraphParseError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmptyGraphError(ValueError):
    pass


@dataclass(frozen=True)
class LoadReport:
    n: int
    m: int
    dropped_self_loops: int
    dropped_duplicates: int
    dropped_isolated: int


class _CSR:
    """Sorted adjacency in compressed-row form: ``indices[indptr[v]:indptr[v+1]]``."""

    indptr: np.ndarray
    indices: np.ndarray

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)


class UndirectedSkeleton(_CSR):
    """Undirected simple graph; the skeleton of a digraph or a graph in its own right."""

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedSkeleton":
        arr = np.array([(u, v) for u, v in edges if u != v], dtype=np.int64).reshape(-1, 2)
        both = np.concatenate([arr, arr[:, ::-1]])
        keys = np.unique(both[:, 0] * n + both[:, 1]) if len(both) else np.empty(0, np.int64)
        own, nbr = np.divmod(keys, n) if n else (keys, keys)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(own, minlength=n), out=indptr[1:])
        return cls(n, indptr, nbr)

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @functools.cached_property
    def rel(self) -> np.ndarray:
        """Relation codes for the counting kernels: every skeleton edge acts bidirected."""
        return np.full(len(self.indices), REL_BI, dtype=np.int8)

    @functools.cached_property
    def adj(self) -> list[list[int]]:
        return [self.neighbors(v).tolist() for v in range(self.n)]

    @functools.cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (u, int(w)) for u in range(self.n) for w in self.neighbors(u) if u < w
        )

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def relation(self, v: int, u: int) -> int:
        return REL_BI if self.has_edge(u, v) and u != v else 0

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_set)


class DirectedGraph(_CSR):
    """Simple digraph on dense vertex ids ``0..n-1``.

    Stores the skeleton adjacency (sorted) together with a relation code per
    entry: for owner ``v`` and neighbor ``u`` the code is ``REL_BI`` when both
    arcs exist, ``REL_OUT`` for ``v -> u`` only and ``REL_IN`` for ``u -> v``
    only. The three partitions of a vertex neighborhood are read off that code.
    """

    def __init__(self, n: int, src, dst, labels: Sequence[str] | None = None):
        src = np.asarray(src, dtype=np.int64).reshape(-1)
        dst = np.asarray(dst, dtype=np.int64).reshape(-1)
        if len(src) != len(dst):
            raise ValueError("src and dst lengths differ")
        if len(src) and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise ValueError("vertex id out of range")
        if (src == dst).any():
            raise ValueError("self-loops are not allowed")
        keys = src * n + dst
        uniq = np.unique(keys)
        if len(uniq) != len(keys):
            raise ValueError("duplicate ordered pairs")
        self.n = int(n)
        self.src, self.dst = np.divmod(uniq, n) if n else (uniq, uniq)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("label count does not match n")
        self._build_skeleton()

    def _build_skeleton(self) -> None:
        n = self.n
        own = np.concatenate([self.src, self.dst])
        nbr = np.concatenate([self.dst, self.src])
        rel = np.concatenate(
            [np.full(len(self.src), REL_OUT, np.int8), np.full(len(self.src), REL_IN, np.int8)]
        )
        keys = own * n + nbr
        order = np.argsort(keys, kind="stable")
        keys, rel = keys[order], rel[order]
        uniq, first, counts = np.unique(keys, return_index=True, return_counts=True)
        rel = rel[first]
        rel[counts == 2] = REL_BI
        own, nbr = np.divmod(uniq, n) if n else (uniq, uniq)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(own, minlength=n), out=self.indptr[1:])
        self.indices = np.ascontiguousarray(nbr, dtype=np.int64)
        self.rel = np.ascontiguousarray(rel, dtype=np.int8)

    # -- construction helpers

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[int, int]], n: int | None = None, labels=None
    ) -> "DirectedGraph":
        """Build from integer pairs; self-loops and repeats are dropped silently."""
        pairs = {(int(u), int(v)) for u, v in edges if u != v}
        if n is None:
            n = 1 + max((max(p) for p in pairs), default=-1)
        arr = np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2)
        return cls(n, arr[:, 0], arr[:, 1], labels)

    @classmethod
    def from_matrix(cls, adj) -> "DirectedGraph":
        a = np.asarray(adj, dtype=bool).copy()
        np.fill_diagonal(a, False)
        src, dst = np.nonzero(a)
        return cls(a.shape[0], src, dst)

    # -- basic quantities

    @property
    def m(self) -> int:
        return len(self.src)

    @functools.cached_property
    def n_bidirected(self) -> int:
        return int((self.rel == REL_BI).sum()) // 2

    @functools.cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(self.src.tolist(), self.dst.tolist()))

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self.edge_set

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        a[self.src, self.dst] = 1
        return a

    def _part(self, code: int) -> list[list[int]]:
        out = []
        for v in range(self.n):
            lo, hi = self.indptr[v], self.indptr[v + 1]
            sel = self.rel[lo:hi] == code
            out.append(self.indices[lo:hi][sel].tolist())
        return out

    @functools.cached_property
    def bi_nbrs(self) -> list[list[int]]:
        return self._part(REL_BI)

    @functools.cached_property
    def out_nbrs(self) -> list[list[int]]:
        return self._part(REL_OUT)

    @functools.cached_property
    def in_nbrs(self) -> list[list[int]]:
        return self._part(REL_IN)

    def degree_triples(self) -> np.ndarray:
        """Per-vertex (bidirected, out-only, in-only) neighbor counts."""
        own = np.repeat(np.arange(self.n), np.diff(self.indptr))
        out = np.zeros((self.n, 3), dtype=np.int64)
        for col, code in enumerate((REL_BI, REL_OUT, REL_IN)):
            out[:, col] = np.bincount(own[self.rel == code], minlength=self.n)
        return out

    def relation(self, v: int, u: int) -> int:
        """Relation code of ``u`` as seen from ``v`` (0 when not adjacent)."""
        nb = self.neighbors(v)
        i = int(np.searchsorted(nb, u))
        if i < len(nb) and nb[i] == u:
            return int(self.rel[self.indptr[v] + i])
        return 0

    def skeleton(self) -> UndirectedSkeleton:
        return skeleton(self)

    def reversed(self) -> "DirectedGraph":
        return DirectedGraph(self.n, self.dst, self.src, self.labels)

    def relabeled(self, perm: Sequence[int]) -> "DirectedGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        labels = [None] * self.n
        for v, lab in enumerate(self.labels):
            labels[p[v]] = lab
        return DirectedGraph(self.n, p[self.src], p[self.dst], labels)

    def induced(self, vertices: Sequence[int]) -> np.ndarray:
        """0/1 adjacency matrix of the induced subgraph, rows in the given order."""
        vs = list(vertices)
        k = len(vs)
        out = np.zeros((k, k), dtype=np.uint8)
        es = self.edge_set
        for i, u in enumerate(vs):
            for j, w in enumerate(vs):
                if i != j and (u, w) in es:
                    out[i, j] = 1
        return out

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.n == other.n and self.edge_set == other.edge_set

    __hash__ = None

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, m={self.m}, bidirected={self.n_bidirected})"


@dataclass(frozen=True)
class NeighborPartition:
    """A^v, B^v, C^v for one vertex, with their sizes."""

    a: list[int]
    b: list[int]
    c: list[int]

    @property
    def sizes(self) -> tuple[int, int, int]:
        return len(self.a), len(self.b), len(self.c)


def partition_neighbors(g: DirectedGraph) -> list[NeighborPartition]:
    return [
        NeighborPartition(g.bi_nbrs[v], g.out_nbrs[v], g.in_nbrs[v]) for v in range(g.n)
    ]


def skeleton(g: DirectedGraph) -> UndirectedSkeleton:
    return UndirectedSkeleton(g.n, g.indptr.copy(), g.indices.copy())


def adjacency_of_set(g: DirectedGraph | UndirectedSkeleton, vertices: Iterable[int]) -> set[int]:
    """Vertices outside ``vertices`` adjacent to at least one of them."""
    s = set(vertices)
    out: set[int] = set()
    for v in s:
        out.update(g.neighbors(v).tolist())
    return out - s


# ---------------------------------------------------------------------------
# edge-list text format


def _read_pairs(stream: IO[str]) -> list[tuple[str, str]]:
    pairs = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected 2 tokens, found {len(tokens)}", lineno)
        pairs.append((tokens[0], tokens[1]))
    return pairs


def load_edge_list(
    source: str | bytes | IO, drop_isolated: bool = True
) -> tuple[DirectedGraph, LoadReport]:
    """Parse a whitespace-separated ``source target`` edge list.

    ``source`` is a path, raw bytes, or an open text/binary stream. Vertex
    tokens are arbitrary strings, numbered in order of first appearance.
    """
    if isinstance(source, bytes):
        stream: IO[str] = io.StringIO(source.decode("utf-8"))
    elif isinstance(source, str):
        stream = open(source, encoding="utf-8")
    elif isinstance(source, io.TextIOBase):
        stream = source
    else:
        stream = io.TextIOWrapper(source, encoding="utf-8")
    try:
        pairs = _read_pairs(stream)
    finally:
        if isinstance(source, str):
            stream.close()

    ids: dict[str, int] = {}
    loops = 0
    seen: set[tuple[int, int]] = set()
    dups = 0
    for s, t in pairs:
        u = ids.setdefault(s, len(ids))
        v = ids.setdefault(t, len(ids))
        if u == v:
            loops += 1
            continue
        if (u, v) in seen:
            dups += 1
            continue
        seen.add((u, v))
    labels = list(ids)
    dropped_isolated = 0
    if drop_isolated:
        used = sorted({x for e in seen for x in e})
        dropped_isolated = len(labels) - len(used)
        if dropped_isolated:
            remap = {old: new for new, old in enumerate(used)}
            seen = {(remap[u], remap[v]) for u, v in seen}
            labels = [labels[old] for old in used]
    if not labels:
        raise EmptyGraphError("edge list contains no vertices")
    arr = np.array(sorted(seen), dtype=np.int64).reshape(-1, 2)
    g = DirectedGraph(len(labels), arr[:, 0], arr[:, 1], labels)
    report = LoadReport(g.n, g.m, loops, dups, dropped_isolated)
    if loops or dups:
        log.info("dropped %d self-loops and %d duplicate arcs", loops, dups)
    return g, report


def write_edge_list(g: DirectedGraph, stream: IO[str]) -> None:
    for u, v in zip(g.src.tolist(), g.dst.tolist()):
        stream.write(f"{g.labels[u]} {g.labels[v]}\n")


def dumps_edge_list(g: DirectedGraph) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()
