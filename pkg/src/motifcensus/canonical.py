"""Canonical forms and isomorphism-class tables for digraphs on at most 5 vertices.

A graph of order ``k`` is identified by its adjacency matrix packed row-major
into a ``k*k``-bit integer, most significant bit first, so that reading the
binary expansion left to right spells out the matrix rows. The canonical code
of a graph is the minimum packed code over all ``k!`` relabelings.

Everything the counting kernels need at run time is generated here, once:

* class tables mapping every labeled graph to the rank of its canonical code
  among the connected classes,
* correction divisors (how many anchors see each class),
* pattern lookups: for an anchor (vertex, edge or connected triple) of a given
  kind and two outside vertices with given relations to the anchor, the class
  of the resulting induced subgraph.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MIN_K = 3
MAX_K = 5

# relation codes of a vertex ``w`` to an anchor vertex ``p``, shared with the kernels
REL_NONE = 0
REL_BI = 1  # p <-> w       (w in A(p))
REL_OUT = 2  # p -> w only  (w in B(p))
REL_IN = 3  # w -> p only   (w in C(p))

# variants of the edge between the two outside vertices v1, v2
VAR_NONE = 0
VAR_FWD = 1  # v1 -> v2
VAR_BACK = 2  # v2 -> v1
VAR_BI = 3


class CanonicalError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AdjacencyCode:
    """Packed adjacency matrix of a graph on ``k`` vertices."""

    k: int
    bits: int
    directed: bool = True

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise CanonicalError(f"order {self.k} outside 1..{MAX_K}")
        if self.bits < 0 or self.bits >= 1 << (self.k * self.k):
            raise CanonicalError(f"code {self.bits:#x} does not fit a {self.k}x{self.k} matrix")
        m = unpack(self.bits, self.k)
        if m.diagonal().any():
            raise CanonicalError("diagonal bits must be zero")
        if not self.directed and (m != m.T).any():
            raise CanonicalError("undirected code must be symmetric")

    @property
    def hex(self) -> str:
        width = (self.k * self.k + 3) // 4
        return f"{self.bits:0{width}x}"

    def matrix(self) -> np.ndarray:
        return unpack(self.bits, self.k)

    def matrix_string(self) -> str:
        """Rows of the 0/1 matrix joined by ``/``, e.g. ``011/000/000``."""
        return "/".join("".join(str(int(b)) for b in row) for row in self.matrix())

    @classmethod
    def from_matrix_string(cls, text: str, directed: bool = True) -> "AdjacencyCode":
        rows = text.strip().split("/")
        k = len(rows)
        if any(len(r) != k or set(r) - {"0", "1"} for r in rows):
            raise CanonicalError(f"malformed adjacency string {text!r}")
        return cls(k, int("".join(rows), 2), directed)


def pack(adj) -> int:
    """Pack a square 0/1 matrix (nested sequences or ndarray) into an int."""
    m = np.asarray(adj, dtype=np.uint8)
    k = m.shape[0]
    code = 0
    for bit in m.reshape(-1):
        code = (code << 1) | int(bool(bit))
    if m.shape != (k, k):
        raise CanonicalError(f"adjacency must be square, got {m.shape}")
    return code


def unpack(code: int, k: int) -> np.ndarray:
    n = k * k
    flat = [(code >> (n - 1 - t)) & 1 for t in range(n)]
    return np.array(flat, dtype=np.uint8).reshape(k, k)


def pair_list(k: int, directed: bool) -> list[tuple[int, int]]:
    """Off-diagonal cells that carry information, in row-major order."""
    if directed:
        return [(i, j) for i in range(k) for j in range(k) if i != j]
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


def _full_bit(k: int, i: int, j: int) -> int:
    return k * k - 1 - (i * k + j)


def compress(code: int, k: int, directed: bool) -> int:
    """Drop the always-zero (and, if undirected, mirrored) bits.

    The map is order preserving on valid codes, so minima commute with it.
    """
    pairs = pair_list(k, directed)
    p = len(pairs)
    out = 0
    for t, (i, j) in enumerate(pairs):
        if (code >> _full_bit(k, i, j)) & 1:
            out |= 1 << (p - 1 - t)
    return out


def expand(ccode: int, k: int, directed: bool) -> int:
    pairs = pair_list(k, directed)
    p = len(pairs)
    out = 0
    for t, (i, j) in enumerate(pairs):
        if (ccode >> (p - 1 - t)) & 1:
            out |= 1 << _full_bit(k, i, j)
            if not directed:
                out |= 1 << _full_bit(k, j, i)
    return out


def permute(adj: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Relabel vertex ``i`` as ``perm[i]``."""
    k = len(perm)
    out = np.zeros((k, k), dtype=np.uint8)
    p = np.asarray(perm)
    out[np.ix_(p, p)] = adj
    return out


def is_connected(adj) -> bool:
    m = np.asarray(adj, dtype=bool)
    k = m.shape[0]
    if k == 0:
        return False
    s = m | m.T
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in np.flatnonzero(s[u]):
            w = int(w)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == k


def canonical_code(adj, directed: bool = True) -> AdjacencyCode:
    """Minimum packed code over all relabelings of a graph with 3..5 vertices.

    ``adj`` is a square 0/1 matrix; for ``directed=False`` it is symmetrized.
    """
    m = np.asarray(adj, dtype=np.uint8)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise CanonicalError(f"adjacency must be square, got shape {m.shape}")
    k = m.shape[0]
    if not MIN_K <= k <= MAX_K:
        raise CanonicalError(f"canonical labeling supports {MIN_K}..{MAX_K} vertices, got {k}")
    return _canonical_any(m, directed)


def _canonical_any(m: np.ndarray, directed: bool) -> AdjacencyCode:
    k = m.shape[0]
    m = m.copy()
    np.fill_diagonal(m, 0)
    if not directed:
        m = m | m.T
    best = min(pack(permute(m, p)) for p in itertools.permutations(range(k)))
    return AdjacencyCode(k, best, directed)


# ---------------------------------------------------------------------------
# vectorized canonicalization of every labeled graph of a given order


def _perm_chunk_tables(k: int, directed: bool, perms: list[tuple[int, ...]]) -> np.ndarray:
    """tables[p, c, byte] = image under perm p of the c-th 8-bit chunk."""
    pairs = pair_list(k, directed)
    p = len(pairs)
    index = {pr: t for t, pr in enumerate(pairs)}
    nchunks = max(1, (p + 7) // 8)
    tables = np.zeros((len(perms), nchunks, 256), dtype=np.uint32)
    byte = np.arange(256, dtype=np.uint32)
    for pi, perm in enumerate(perms):
        for t, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            if not directed and a > b:
                a, b = b, a
            dst = p - 1 - index[(a, b)]
            src = p - 1 - t
            c, off = divmod(src, 8)
            tables[pi, c] |= ((byte >> off) & 1) << dst
    return tables


def _canonical_all(k: int, directed: bool) -> np.ndarray:
    """Canonical compressed code of every compressed code of order ``k``."""
    p = len(pair_list(k, directed))
    codes = np.arange(1 << p, dtype=np.uint32)
    perms = list(itertools.permutations(range(k)))
    tables = _perm_chunk_tables(k, directed, perms)
    chunks = [((codes >> (8 * c)) & 0xFF).astype(np.intp) for c in range(tables.shape[1])]
    best = codes.copy()
    for pi in range(len(perms)):
        img = tables[pi, 0][chunks[0]]
        for c in range(1, len(chunks)):
            img |= tables[pi, c][chunks[c]]
        np.minimum(best, img, out=best)
    return best


def _connected_mask(ccodes: np.ndarray, k: int, directed: bool) -> np.ndarray:
    return np.array(
        [is_connected(unpack(expand(int(c), k, directed), k)) for c in ccodes], dtype=bool
    )


@dataclass(frozen=True, eq=False)
class ClassTable:
    """All connected isomorphism classes of order ``k``.

    ``codes`` holds the canonical full codes in increasing order; a class ID is
    the position in that array. ``lookup`` maps every compressed labeled code
    to its class ID, or -1 when the labeled graph is disconnected.
    """

    k: int
    directed: bool
    codes: np.ndarray
    lookup: np.ndarray
    divisors: np.ndarray

    def __len__(self) -> int:
        return len(self.codes)

    def code(self, class_id: int) -> AdjacencyCode:
        return AdjacencyCode(self.k, int(self.codes[class_id]), self.directed)

    def representative(self, class_id: int) -> np.ndarray:
        return unpack(int(self.codes[class_id]), self.k)

    @functools.cached_property
    def index(self) -> dict[int, int]:
        return {int(c): i for i, c in enumerate(self.codes)}

    def class_of(self, adj) -> int:
        """Class ID of a labeled graph; raises for a disconnected one."""
        m = np.asarray(adj, dtype=np.uint8)
        if m.shape != (self.k, self.k):
            raise CanonicalError(f"expected a {self.k}x{self.k} matrix, got {m.shape}")
        if not self.directed:
            m = m | m.T
        cid = int(self.lookup[compress(pack(m), self.k, self.directed)])
        if cid < 0:
            raise CanonicalError("graph is not connected")
        return cid

    def class_of_code(self, code: AdjacencyCode) -> int:
        return self.class_of(code.matrix())


def _anchor_sets(k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(k), k - 2))


def divisor_of(adj: np.ndarray) -> int:
    """How many connected (k-2)-vertex anchors see both remaining vertices.

    For k=3 the anchors are single vertices, for k=4 skeleton edges, for k=5
    connected triples. Each induced k-subgraph is tallied once per such anchor.
    """
    m = np.asarray(adj, dtype=bool)
    k = m.shape[0]
    s = m | m.T
    count = 0
    for anchor in _anchor_sets(k):
        if not is_connected(s[np.ix_(anchor, anchor)]):
            continue
        rest = [v for v in range(k) if v not in anchor]
        if all(s[v, list(anchor)].any() for v in rest):
            count += 1
    return count


def _build_table(k: int, directed: bool) -> ClassTable:
    canon = _canonical_all(k, directed)
    uniq = np.unique(canon)
    connected = uniq[_connected_mask(uniq, k, directed)]
    # compressed order equals full-code order, so ranks agree
    rank = np.full(1 << len(pair_list(k, directed)), -1, dtype=np.int32)
    rank[connected] = np.arange(len(connected), dtype=np.int32)
    lookup = rank[canon]
    full = np.array([expand(int(c), k, directed) for c in connected], dtype=np.int64)
    if k >= MIN_K:
        divisors = np.array([divisor_of(unpack(int(c), k)) for c in full], dtype=np.int64)
        if (divisors < 1).any():
            raise CanonicalError(f"class with zero divisor at k={k}")
    else:
        divisors = np.ones(len(full), dtype=np.int64)
    return ClassTable(k, directed, full, lookup, divisors)


@functools.lru_cache(maxsize=None)
def class_table(k: int, directed: bool = True) -> ClassTable:
    if not 1 <= k <= MAX_K:
        raise CanonicalError(f"class tables exist for orders 1..{MAX_K}, got {k}")
    return _build_table(k, directed)


def enumerate_classes(k: int, directed: bool = True) -> ClassTable:
    """Connected isomorphism classes of order ``k`` in {3, 4, 5}."""
    if not MIN_K <= k <= MAX_K:
        raise CanonicalError(f"k must be in {MIN_K}..{MAX_K}, got {k}")
    return class_table(k, directed)


def correction_divisor(table: ClassTable, class_id: int) -> int:
    return int(table.divisors[class_id])


# ---------------------------------------------------------------------------
# anchors: labeled anchor graph -> (kind, vertex ordering aligned to the kind's representative


@dataclass(frozen=True, eq=False)
class AnchorTable:
    """Alignment of labeled anchors of order ``a`` with their class representatives.

    For a labeled anchor ``q`` with compressed code ``c``: ``kind[c]`` is its
    class among connected order-``a`` graphs and ``order[c]`` a permutation so
    that ``p_i = q[order[c][i]]`` reproduces the representative exactly.
    ``kind[c]`` is -1 for disconnected anchors.
    """

    a: int
    directed: bool
    kinds: ClassTable
    kind: np.ndarray
    order: np.ndarray
    pair_i: np.ndarray
    pair_j: np.ndarray


@functools.lru_cache(maxsize=None)
def anchor_table(a: int, directed: bool = True) -> AnchorTable:
    kinds = class_table(a, directed)
    pairs = pair_list(a, directed)
    p = len(pairs)
    kind = np.full(1 << p, -1, dtype=np.int32)
    order = np.zeros((1 << p, a), dtype=np.int32)
    perms = list(itertools.permutations(range(a)))
    for c in range(1 << p):
        q = unpack(expand(c, a, directed), a)
        kid = int(kinds.lookup[c])
        if kid < 0:
            continue
        rep = int(kinds.codes[kid])
        for sigma in perms:
            # p_i = q_sigma(i): edge (i, j) present iff q has (sigma(i), sigma(j))
            aligned = q[np.ix_(sigma, sigma)]
            if pack(aligned) == rep:
                kind[c] = kid
                order[c] = sigma
                break
        else:
            raise CanonicalError(f"anchor code {c} matches no ordering of its representative")
    pi = np.array([i for i, _ in pairs], dtype=np.int32)
    pj = np.array([j for _, j in pairs], dtype=np.int32)
    return AnchorTable(a, directed, kinds, kind, order, pi, pj)


# ---------------------------------------------------------------------------
# pattern lookups


def n_types(a: int) -> int:
    """Number of neighbor sets around an anchor of order ``a`` (3, 15 or 63)."""
    return 4**a - 1


def type_index(relations: Sequence[int]) -> int:
    """Set index of a vertex from its relation codes to p_1..p_a (not all none)."""
    d = 0
    for r in relations:
        d = 4 * d + r
    if d == 0:
        raise CanonicalError("vertex has no relation to the anchor")
    return d - 1


def type_relations(t: int, a: int) -> tuple[int, ...]:
    d = t + 1
    out = []
    for _ in range(a):
        out.append(d % 4)
        d //= 4
    return tuple(reversed(out))


def type_name(t: int, a: int) -> str:
    """Readable set label, e.g. ``(A,B,-)``."""
    letters = "-ABC"
    return "(" + ",".join(letters[r] for r in type_relations(t, a)) + ")"


@dataclass(frozen=True, eq=False)
class PatternLookup:
    """``cls[kind, t1, t2, variant]`` = class of anchor + v1 in t1 + v2 in t2.

    The anchor is the representative of ``kind`` with vertices 0..a-1, v1 is
    vertex a and v2 vertex a+1; ``variant`` is the v1-v2 edge
    (none, v1->v2, v2->v1, both). Cells that cannot occur (undirected tables
    only use relation A and variants none/both) hold -1.
    """

    k: int
    directed: bool
    anchors: AnchorTable
    table: ClassTable
    cls: np.ndarray

    @property
    def n_kinds(self) -> int:
        return self.cls.shape[0]

    @property
    def n_types(self) -> int:
        return self.cls.shape[1]


def _pattern_codes(rep: np.ndarray, k: int, directed: bool) -> np.ndarray:
    """Full codes for every (t1, t2, variant) around one anchor representative."""
    a = k - 2
    nt = n_types(a)
    v1, v2 = a, a + 1

    def bit(i, j):
        return np.int64(1) << _full_bit(k, i, j)

    base = np.int64(0)
    for i in range(a):
        for j in range(a):
            if rep[i, j]:
                base |= bit(i, j)

    def attach(v):
        out = np.zeros(nt, dtype=np.int64)
        for t in range(nt):
            c = 0
            for i, r in enumerate(type_relations(t, a)):
                if r == REL_BI:
                    c |= int(bit(i, v)) | int(bit(v, i))
                elif r == REL_OUT:
                    c |= int(bit(i, v))
                elif r == REL_IN:
                    c |= int(bit(v, i))
            out[t] = c
        return out

    var = np.array([0, bit(v1, v2), bit(v2, v1), bit(v1, v2) | bit(v2, v1)], dtype=np.int64)
    return base | attach(v1)[:, None, None] | attach(v2)[None, :, None] | var[None, None, :]


def _compress_array(full: np.ndarray, k: int, directed: bool) -> np.ndarray:
    pairs = pair_list(k, directed)
    p = len(pairs)
    out = np.zeros(full.shape, dtype=np.int64)
    for t, (i, j) in enumerate(pairs):
        out |= ((full >> _full_bit(k, i, j)) & 1) << (p - 1 - t)
    return out


@functools.lru_cache(maxsize=None)
def pattern_lookup(k: int, directed: bool = True) -> PatternLookup:
    if not MIN_K <= k <= MAX_K:
        raise CanonicalError(f"k must be in {MIN_K}..{MAX_K}, got {k}")
    a = k - 2
    anchors = anchor_table(a, directed)
    table = class_table(k, directed)
    nt = n_types(a)
    cls = np.full((len(anchors.kinds), nt, nt, 4), -1, dtype=np.int32)
    valid_t = np.array([all(r in (0, REL_BI) for r in type_relations(t, a)) for t in range(nt)])
    for kid in range(len(anchors.kinds)):
        rep = anchors.kinds.representative(kid)
        full = _pattern_codes(rep, k, directed=True)
        if directed:
            cls[kid] = table.lookup[_compress_array(full, k, True)]
        else:
            # an undirected graph is an all-bidirected digraph: keep only those cells
            sym = _compress_array(full, k, False)
            ids = table.lookup[sym]
            keep = valid_t[:, None, None] & valid_t[None, :, None]
            keep = keep & np.isin(np.arange(4), [VAR_NONE, VAR_BI])[None, None, :]
            cls[kid] = np.where(keep, ids, -1)
    if (cls[cls != -1] < 0).any():
        raise CanonicalError("lookup produced a disconnected pattern")
    if directed and (cls < 0).any():
        raise CanonicalError("lookup produced a disconnected pattern")
    return PatternLookup(k, directed, anchors, table, cls)


def build_pattern_lookup_4() -> PatternLookup:
    return pattern_lookup(4, True)


def build_pattern_lookup_5() -> PatternLookup:
    return pattern_lookup(5, True)


def pattern_graph(
    lookup: PatternLookup, kind: int, t1: int, t2: int, variant: int
) -> np.ndarray:
    """The labeled k-vertex graph behind one lookup cell."""
    rep = lookup.anchors.kinds.representative(kind)
    full = _pattern_codes(rep, lookup.k, True)[t1, t2, variant]
    m = unpack(int(full), lookup.k)
    return m | m.T if not lookup.directed else m


def iter_classes(table: ClassTable) -> Iterable[tuple[int, AdjacencyCode, int]]:
    for cid in range(len(table)):
        yield cid, table.code(cid), int(table.divisors[cid])
