"""Histogram type and the shared anchor-census driver."""

from __future__ import annotations

import functools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .canonical import REL_BI, REL_OUT, AnchorTable, ClassTable, PatternLookup, class_table

INT64_LIMIT = float(2**62)


class CountingError(RuntimeError):
    """Internal consistency failure during counting (negative or non-divisible tally)."""


@dataclass(frozen=True, eq=False)
class MotifHistogram:
    """Occurrence count per class ID for one graph and one order ``k``."""

    k: int
    directed: bool
    counts: np.ndarray
    elapsed: float = field(default=0.0, compare=False)

    @property
    def table(self) -> ClassTable:
        return class_table(self.k, self.directed)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, class_id: int) -> int:
        return int(self.counts[class_id])

    def __len__(self) -> int:
        return len(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {int(i): int(self.counts[i]) for i in np.flatnonzero(self.counts)}

    def rows(self) -> list[tuple[int, int]]:
        """(class_id, count) for nonzero classes, largest count first."""
        items = self.nonzero().items()
        return sorted(items, key=lambda kv: (-kv[1], kv[0]))

    def __eq__(self, other):
        if not isinstance(other, MotifHistogram):
            return NotImplemented
        return (
            self.k == other.k
            and self.directed == other.directed
            and np.array_equal(self.counts, other.counts)
        )

    def __repr__(self):
        return f"MotifHistogram(k={self.k}, directed={self.directed}, total={self.total})"


def check_bound(bound: float) -> None:
    if bound >= INT64_LIMIT:
        raise OverflowError(
            f"pattern tallies may reach {bound:.3g}, beyond 64-bit accumulator range"
        )


def divide(raw: np.ndarray, table: ClassTable) -> np.ndarray:
    if (raw < 0).any():
        bad = np.flatnonzero(raw < 0).tolist()
        raise CountingError(f"negative tallies for classes {bad}")
    rem = raw % table.divisors
    if rem.any():
        bad = np.flatnonzero(rem).tolist()
        raise CountingError(f"tallies not divisible by their correction divisor: classes {bad}")
    return raw // table.divisors


def chunk_bounds(total: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, total)) if total else 1
    edges = np.linspace(0, total, workers + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


def align_anchor(g, q, anchors: AnchorTable) -> tuple[int, tuple[int, ...]]:
    """Kind of a labeled anchor and its vertices reordered onto the kind's representative."""
    code = 0
    for i, j in zip(anchors.pair_i.tolist(), anchors.pair_j.tolist()):
        code = (code << 1) | (g.relation(q[i], q[j]) in (REL_BI, REL_OUT))
    kind = int(anchors.kind[code])
    if kind < 0:
        raise CountingError(f"anchor {tuple(q)} is not connected")
    return kind, tuple(int(q[i]) for i in anchors.order[code])


def anchor_raw_counts(
    indptr: np.ndarray,
    indices: np.ndarray,
    rel: np.ndarray,
    anchors: np.ndarray,
    lookup: PatternLookup,
    workers: int = 1,
) -> np.ndarray:
    """Undivided tallies of every class over all anchors, split across threads."""
    at = lookup.anchors
    args = (
        indptr,
        indices,
        rel,
        np.ascontiguousarray(anchors, dtype=np.int64),
        at.kind,
        at.order,
        at.pair_i,
        at.pair_j,
        lookup.cls,
        len(lookup.table),
    )
    parts = chunk_bounds(len(anchors), workers)
    if len(parts) == 1:
        results = [_kernels.anchor_census(*args, *parts[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            results = list(pool.map(lambda lh: _kernels.anchor_census(*args, *lh), parts))
    raw = np.zeros(len(lookup.table), dtype=np.int64)
    bound = 0.0
    for hist, b, bad in results:
        if bad:
            raise CountingError(f"{bad} anchors are not connected")
        raw += hist
        bound += b
    check_bound(bound)
    return raw


def timed(fn):
    """Attach wall time to the returned histogram."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        h = fn(*args, **kwargs)
        return MotifHistogram(h.k, h.directed, h.counts, time.perf_counter() - t0)

    return wrapper
