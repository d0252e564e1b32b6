"""Compiled inner loops. All take the sorted skeleton CSR (``indptr``, ``indices``)
plus the per-entry relation codes (1 both arcs, 2 owner->nbr, 3 nbr->owner)."""

import numpy as np
from numba import njit

_OPTS = dict(nogil=True, cache=True)


@njit(**_OPTS)
def rel_of(indptr, indices, rel, v, u):
    lo = indptr[v]
    hi = indptr[v + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        w = indices[mid]
        if w < u:
            lo = mid + 1
        elif w > u:
            hi = mid
        else:
            return rel[mid]
    return 0


@njit(**_OPTS)
def _orient(indptr, indices):
    """Out-lists of the skeleton oriented from lower to higher (degree, id)."""
    n = len(indptr) - 1
    deg = indptr[1:] - indptr[:-1]
    optr = np.zeros(n + 1, np.int64)
    for u in range(n):
        c = 0
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            if deg[w] > deg[u] or (deg[w] == deg[u] and w > u):
                c += 1
        optr[u + 1] = optr[u] + c
    out = np.empty(optr[n], np.int64)
    for u in range(n):
        c = optr[u]
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            if deg[w] > deg[u] or (deg[w] == deg[u] and w > u):
                out[c] = w
                c += 1
    return optr, out


@njit(**_OPTS)
def _triangle_pass(optr, onbr, n, emit, tris):
    stamp = np.full(n, -1, np.int64)
    t = 0
    for u in range(n):
        for e in range(optr[u], optr[u + 1]):
            stamp[onbr[e]] = u
        for e in range(optr[u], optr[u + 1]):
            v = onbr[e]
            for f in range(optr[v], optr[v + 1]):
                w = onbr[f]
                if stamp[w] == u:
                    if emit:
                        a, b, c = u, v, w
                        if a > b:
                            a, b = b, a
                        if b > c:
                            b, c = c, b
                        if a > b:
                            a, b = b, a
                        tris[t, 0] = a
                        tris[t, 1] = b
                        tris[t, 2] = c
                    t += 1
    return t


@njit(**_OPTS)
def list_triangles(indptr, indices):
    n = len(indptr) - 1
    optr, onbr = _orient(indptr, indices)
    dummy = np.empty((0, 3), np.int64)
    total = _triangle_pass(optr, onbr, n, False, dummy)
    tris = np.empty((total, 3), np.int64)
    _triangle_pass(optr, onbr, n, True, tris)
    return tris


# counter layout shared with motif3.VAR_NAMES:
# directed m_xy at 3*(x-1)+(y-1) over types A,B,C -> slots 0..8 (row-major x,y),
# bidirected m'_xy (x<=y) at 9 + upper-triangle index.
@njit(**_OPTS)
def _vv_slot_bi(x, y):
    if x > y:
        x, y = y, x
    # (1,1)=9 (1,2)=10 (1,3)=11 (2,2)=12 (2,3)=13 (3,3)=14
    if x == 1:
        return 8 + y
    if x == 2:
        return 10 + y
    return 14


@njit(**_OPTS)
def vertex_vars(indptr, indices, rel, tris):
    n = len(indptr) - 1
    out = np.zeros((n, 15), np.int64)
    for t in range(tris.shape[0]):
        for rot in range(3):
            v = tris[t, rot]
            x = tris[t, (rot + 1) % 3]
            y = tris[t, (rot + 2) % 3]
            tx = rel_of(indptr, indices, rel, v, x)
            ty = rel_of(indptr, indices, rel, v, y)
            r = rel_of(indptr, indices, rel, x, y)
            if r == 1:
                out[v, _vv_slot_bi(tx, ty)] += 1
            elif r == 2:
                out[v, 3 * (tx - 1) + (ty - 1)] += 1
            else:
                out[v, 3 * (ty - 1) + (tx - 1)] += 1
    return out


@njit(**_OPTS)
def edge_counters_undirected(indptr, indices, eu, ev):
    """Per skeleton edge: n_x, n_y, n_z, m_xx, m_xy, m_xz, m_yy, m_yz, m_zz."""
    n = len(indptr) - 1
    ne = len(eu)
    out = np.zeros((ne, 9), np.int64)
    mark = np.zeros(n, np.int64)
    touched = np.empty(n, np.int64)
    # slot of an unordered set pair; sets X=1, Y=2, Z=3
    slot = np.array([[3, 4, 5], [4, 6, 7], [5, 7, 8]], np.int64)
    for i in range(ne):
        u = eu[i]
        v = ev[i]
        mark[u] = -1
        mark[v] = -1
        nt = 0
        for e in range(indptr[u], indptr[u + 1]):
            x = indices[e]
            if mark[x] == 0:
                touched[nt] = x
                nt += 1
            if mark[x] >= 0:
                mark[x] |= 1
        for e in range(indptr[v], indptr[v + 1]):
            x = indices[e]
            if mark[x] == 0:
                touched[nt] = x
                nt += 1
            if mark[x] >= 0:
                mark[x] |= 2
        for s in range(nt):
            x = touched[s]
            sx = mark[x]
            out[i, sx - 1] += 1
            for e in range(indptr[x], indptr[x + 1]):
                y = indices[e]
                if y > x and mark[y] > 0:
                    out[i, slot[sx - 1, mark[y] - 1]] += 1
        for s in range(nt):
            mark[touched[s]] = 0
        mark[u] = 0
        mark[v] = 0
    return out


@njit(**_OPTS)
def _triple_pass(indptr, indices, emit, out):
    n = len(indptr) - 1
    stamp = np.full(n, -1, np.int64)
    t = 0
    for c in range(n):
        lo = indptr[c]
        hi = indptr[c + 1]
        for ia in range(lo, hi):
            a = indices[ia]
            for e in range(indptr[a], indptr[a + 1]):
                stamp[indices[e]] = a
            for ib in range(ia + 1, hi):
                b = indices[ib]
                if stamp[b] == a:
                    if c < a:
                        if emit:
                            out[t, 0] = c
                            out[t, 1] = a
                            out[t, 2] = b
                        t += 1
                else:
                    if emit:
                        out[t, 0] = a
                        out[t, 1] = c
                        out[t, 2] = b
                    t += 1
    return t


@njit(**_OPTS)
def list_triples(indptr, indices):
    """Connected induced triples: P3 as (end, center, end), K3 as sorted."""
    dummy = np.empty((0, 3), np.int64)
    total = _triple_pass(indptr, indices, False, dummy)
    out = np.empty((total, 3), np.int64)
    _triple_pass(indptr, indices, True, out)
    return out


@njit(**_OPTS)
def anchor_census(
    indptr, indices, rel, anchors, kind_of, order_of, pair_i, pair_j, cls, nclasses, lo, hi
):
    """Raw (undivided) pattern tallies for anchors[lo:hi].

    Per anchor: align it with its kind's representative, give every adjacent
    vertex its set index from the relations to p_1..p_a, then add
    C(n_T,2) / n_Ti*n_Tj to the edgeless cell of every set pair and move one
    unit per inter-set edge to the matching edge variant.

    Returns the histogram and sum over anchors of C(|adj|, 2) as a float,
    which bounds every tally and is used for the overflow check.
    """
    n = len(indptr) - 1
    a = anchors.shape[1]
    nsets = cls.shape[1]
    npairs = len(pair_i)
    hist = np.zeros(nclasses, np.int64)
    mark = np.zeros(n, np.int64)
    touched = np.empty(n, np.int64)
    cnt = np.zeros(nsets, np.int64)
    tlist = np.empty(nsets, np.int64)
    p = np.empty(a, np.int64)
    weight = np.empty(a, np.int64)
    for i in range(a):
        weight[i] = 4 ** (a - 1 - i)
    bound = 0.0
    bad = 0
    for idx in range(lo, hi):
        code = 0
        for t in range(npairs):
            r = rel_of(indptr, indices, rel, anchors[idx, pair_i[t]], anchors[idx, pair_j[t]])
            code = (code << 1) | (1 if (r == 1 or r == 2) else 0)
        kind = kind_of[code]
        if kind < 0:
            bad += 1
            continue
        for i in range(a):
            p[i] = anchors[idx, order_of[code, i]]
            mark[p[i]] = -1
        nt = 0
        for i in range(a):
            for e in range(indptr[p[i]], indptr[p[i] + 1]):
                x = indices[e]
                if mark[x] < 0:
                    continue
                if mark[x] == 0:
                    touched[nt] = x
                    nt += 1
                mark[x] += rel[e] * weight[i]
        ntypes = 0
        for s in range(nt):
            t = mark[touched[s]] - 1
            if cnt[t] == 0:
                tlist[ntypes] = t
                ntypes += 1
            cnt[t] += 1
        for s in range(nt):
            x = touched[s]
            tx = mark[x] - 1
            for e in range(indptr[x], indptr[x + 1]):
                y = indices[e]
                if y <= x or mark[y] <= 0:
                    continue
                ty = mark[y] - 1
                r = rel[e]
                if r == 1:
                    var = 3
                elif r == 2:
                    var = 1
                else:
                    var = 2
                hist[cls[kind, tx, ty, var]] += 1
                hist[cls[kind, tx, ty, 0]] -= 1
        for u in range(ntypes):
            ti = tlist[u]
            ni = cnt[ti]
            hist[cls[kind, ti, ti, 0]] += ni * (ni - 1) // 2
            for w in range(u + 1, ntypes):
                tj = tlist[w]
                hist[cls[kind, ti, tj, 0]] += ni * cnt[tj]
        bound += 0.5 * nt * (nt - 1)
        for u in range(ntypes):
            cnt[tlist[u]] = 0
        for s in range(nt):
            mark[touched[s]] = 0
        for i in range(a):
            mark[p[i]] = 0
    return hist, bound, bad
