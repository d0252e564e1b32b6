"""Size-3 census from per-vertex neighbor counters.

Around each vertex ``v`` the neighbors split into A (both arcs), B (``v -> x``
only) and C (``x -> v`` only). Counting the arcs inside and between those
three sets, which only requires the triangles of the skeleton, gives every
3-vertex pattern through ``v`` in closed form.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .canonical import REL_BI, REL_IN, REL_OUT, class_table
from .census import CountingError, MotifHistogram, check_bound, divide, timed
from .graph import DirectedGraph, UndirectedSkeleton

VAR_NAMES = (
    "m_aa", "m_ab", "m_ac",
    "m_ba", "m_bb", "m_bc",
    "m_ca", "m_cb", "m_cc",
    "mb_aa", "mb_ab", "mb_ac", "mb_bb", "mb_bc", "mb_cc",
)  # fmt: skip
"""Counter columns; ``m_xy`` counts arcs from set x to set y, ``mb_xy`` bidirected pairs."""


@dataclass(frozen=True, eq=False)
class VertexVars:
    """Partition sizes and the fifteen arc counters for every vertex."""

    n_a: np.ndarray
    n_b: np.ndarray
    n_c: np.ndarray
    counters: np.ndarray  # shape (n, 15), columns as VAR_NAMES

    def __getattr__(self, name):
        try:
            col = VAR_NAMES.index(name)
        except ValueError:
            raise AttributeError(name) from None
        return self.counters[:, col]

    def of(self, v: int) -> dict[str, int]:
        out = {"n_a": int(self.n_a[v]), "n_b": int(self.n_b[v]), "n_c": int(self.n_c[v])}
        out.update({k: int(x) for k, x in zip(VAR_NAMES, self.counters[v])})
        return out


def list_triangles(s: UndirectedSkeleton | DirectedGraph) -> np.ndarray:
    """Every skeleton triangle once, as a sorted row; (T, 3) int array."""
    return _kernels.list_triangles(s.indptr, s.indices)


def compute_vertex_vars(g: DirectedGraph, triangles: np.ndarray | None = None) -> VertexVars:
    if triangles is None:
        triangles = list_triangles(g)
    own = np.repeat(np.arange(g.n), np.diff(g.indptr))
    sizes = [np.bincount(own[g.rel == c], minlength=g.n) for c in (REL_BI, REL_OUT, REL_IN)]
    counters = _kernels.vertex_vars(g.indptr, g.indices, g.rel, triangles)
    return VertexVars(*sizes, counters)


def _choose2(x: np.ndarray) -> np.ndarray:
    return x * (x - 1) // 2


# Each line: (set of x, set of y, arc between x and y) around the center v = vertex 0.
# The arc is "x>y", "y>x", "x=y" (both) or None.
_LINE_PATTERNS = {
    1: ("A", "B", None),
    2: ("A", "C", None),
    3: ("B", "C", None),
    4: ("A", "A", None),
    5: ("B", "B", None),
    6: ("C", "C", None),
    7: ("A", "A", "x=y"),
    8: ("B", "C", "x>y"),
    9: ("A", "B", "x>y"),
    10: ("B", "A", "x>y"),
    11: ("A", "A", "x>y"),
    12: ("C", "A", "x>y"),
    13: ("C", "B", "x>y"),
}


def _pattern_matrix(sx: str, sy: str, arc: str | None) -> np.ndarray:
    m = np.zeros((3, 3), dtype=np.uint8)
    for w, s in ((1, sx), (2, sy)):
        if s in "AB":
            m[0, w] = 1
        if s in "AC":
            m[w, 0] = 1
    if arc in ("x>y", "x=y"):
        m[1, 2] = 1
    if arc in ("y>x", "x=y"):
        m[2, 1] = 1
    return m


@functools.lru_cache(maxsize=None)
def line_classes() -> dict[int, int]:
    """Line number -> class ID, resolved by canonicalizing each pattern."""
    t = class_table(3, True)
    return {line: t.class_of(_pattern_matrix(*spec)) for line, spec in _LINE_PATTERNS.items()}


def vertex_pattern_frequencies(vv: VertexVars) -> dict[int, np.ndarray]:
    """Per-vertex frequency of each line's pattern (arrays of length n)."""
    na, nb, nc = vv.n_a, vv.n_b, vv.n_c
    return {
        1: na * nb - vv.m_ab - vv.m_ba - vv.mb_ab,
        2: na * nc - vv.m_ac - vv.m_ca - vv.mb_ac,
        3: nb * nc - vv.m_bc - vv.m_cb - vv.mb_bc,
        4: _choose2(na) - vv.m_aa - vv.mb_aa,
        5: _choose2(nb) - vv.m_bb - vv.mb_bb,
        6: _choose2(nc) - vv.m_cc - vv.mb_cc,
        7: vv.mb_aa,
        8: vv.m_bc,
        9: vv.m_ab + vv.mb_cc,
        10: vv.m_ba + vv.m_ac + vv.mb_bc,
        11: vv.mb_ab + vv.mb_ac + vv.m_aa,
        12: vv.m_ca + vv.mb_bb,
        13: vv.m_cb + vv.m_bb + vv.m_cc,
    }


@timed
def count3_directed(g: DirectedGraph) -> MotifHistogram:
    table = class_table(3, True)
    vv = compute_vertex_vars(g)
    deg = vv.n_a + vv.n_b + vv.n_c
    check_bound(float(_choose2(deg.astype(np.float64)).sum()))
    raw = np.zeros(len(table), dtype=np.int64)
    for line, freq in vertex_pattern_frequencies(vv).items():
        if (freq < 0).any():
            v = int(np.flatnonzero(freq < 0)[0])
            raise CountingError(f"negative frequency for pattern line {line} at vertex {v}")
        raw[line_classes()[line]] += int(freq.sum())
    return MotifHistogram(3, True, divide(raw, table))


@timed
def count3_undirected(s: UndirectedSkeleton) -> MotifHistogram:
    table = class_table(3, False)
    deg = s.degree()
    check_bound(float(_choose2(deg.astype(np.float64)).sum()))
    triangles = len(list_triangles(s))
    paths = int(_choose2(deg).sum()) - 3 * triangles
    counts = np.zeros(len(table), dtype=np.int64)
    counts[table.class_of([[0, 1, 0], [1, 0, 1], [0, 1, 0]])] = paths
    counts[table.class_of([[0, 1, 1], [1, 0, 1], [1, 1, 0]])] = triangles
    return MotifHistogram(3, False, counts)
