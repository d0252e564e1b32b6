"""Degree-preserving randomization and ensemble statistics.

Random graphs come from edge switching: two one-way arcs ``a->b, c->d``
become ``a->d, c->b``, and two bidirected pairs swap partners the same way.
A switch is rejected if it would create a self-loop or touch a pair that is
already connected in either direction, so every vertex keeps its
(bidirected, out, in) degree triple.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .counting import census
from .graph import DirectedGraph

DEFAULT_ENSEMBLE = {3: 100, 4: 10, 5: 5}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SwitchConfig:
    attempts: int = 3  # switch trials per edge of each kind
    seed: int = 0
    ensemble: int | None = None  # None: the per-k default

    def __post_init__(self):
        if self.attempts < 0:
            raise ConfigError("attempts must be >= 0")
        if self.ensemble is not None and self.ensemble < 2:
            raise ConfigError("ensemble size must be >= 2 for a sample stddev")

    def ensemble_size(self, k: int) -> int:
        return self.ensemble if self.ensemble is not None else DEFAULT_ENSEMBLE[k]


def _switch(pairs: list[list[int]], linked: set[tuple[int, int]], trials: int, rng, bi: bool) -> int:
    """Run switch trials in place on ``pairs``; returns the number accepted."""
    m = len(pairs)
    if m < 2 or trials <= 0:
        return 0
    picks = rng.integers(0, m, size=(trials, 2))
    flips = rng.integers(0, 2, size=trials) if bi else np.zeros(trials, dtype=np.int64)
    done = 0
    for (i, j), f in zip(picks.tolist(), flips.tolist()):
        if i == j:
            continue
        a, b = pairs[i]
        c, d = pairs[j]
        if f:
            c, d = d, c
        if len({a, b, c, d}) < 4:
            continue
        if (min(a, d), max(a, d)) in linked or (min(c, b), max(c, b)) in linked:
            continue
        linked.discard((min(a, b), max(a, b)))
        linked.discard((min(c, d), max(c, d)))
        linked.add((min(a, d), max(a, d)))
        linked.add((min(c, b), max(c, b)))
        pairs[i] = [a, d]
        pairs[j] = [c, b]
        done += 1
    return done


def randomize(g: DirectedGraph, cfg: SwitchConfig, rng: np.random.Generator | None = None) -> DirectedGraph:
    """A switched copy of ``g`` with the same degree triple at every vertex."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    es = g.edge_set
    one_way = sorted([u, v] for u, v in es if (v, u) not in es)
    both = sorted([u, v] for u, v in es if u < v and (v, u) in es)
    linked = {(min(u, v), max(u, v)) for u, v in es}
    _switch(one_way, linked, cfg.attempts * len(one_way), rng, bi=False)
    _switch(both, linked, cfg.attempts * len(both), rng, bi=True)
    arcs = one_way + both + [[v, u] for u, v in both]
    arr = np.array(arcs, dtype=np.int64).reshape(-1, 2)
    return DirectedGraph(g.n, arr[:, 0], arr[:, 1], g.labels)


@dataclass(frozen=True)
class ClassStats:
    class_id: int
    real: int
    mean: float
    std: float
    z: float  # +-inf when std is 0 and real differs from the mean
    p: float

    @property
    def z_infinite(self) -> bool:
        return math.isinf(self.z)


@dataclass(frozen=True)
class EnsembleStats:
    k: int
    directed: bool
    size: int
    rows: tuple[ClassStats, ...]
    random_counts: np.ndarray  # (size, n_classes)

    def by_class(self) -> dict[int, ClassStats]:
        return {r.class_id: r for r in self.rows}


def summarize(real: np.ndarray, rand: np.ndarray) -> list[ClassStats]:
    """Per-class stats, omitting classes absent from the real graph and every random one."""
    rows = []
    mean = rand.mean(axis=0)
    std = rand.std(axis=0, ddof=1)
    for c in np.flatnonzero((real > 0) | (rand > 0).any(axis=0)).tolist():
        r, mu, sd = int(real[c]), float(mean[c]), float(std[c])
        if sd > 0:
            z = (r - mu) / sd
        elif r == mu:
            z = 0.0
        else:
            z = math.copysign(math.inf, r - mu)
        p = float((rand[:, c] >= r).mean())
        rows.append(ClassStats(c, r, mu, sd, z, p))
    return rows


def ensemble_graphs(g: DirectedGraph, cfg: SwitchConfig, size: int) -> list[DirectedGraph]:
    """``size`` randomized copies, member i seeded by the i-th child of ``cfg.seed``."""
    children = np.random.SeedSequence(cfg.seed).spawn(size)
    return [randomize(g, cfg, np.random.Generator(np.random.PCG64(s))) for s in children]


def significance(
    g: DirectedGraph, k: int, cfg: SwitchConfig, directed: bool = True, workers: int = 1
) -> EnsembleStats:
    """Census of ``g`` against an ensemble of switched copies.

    Undirected mode randomizes the skeleton as an all-bidirected graph, which
    is plain degree-preserving switching.
    """
    if k not in DEFAULT_ENSEMBLE:
        raise ConfigError(f"k must be 3, 4 or 5, got {k}")
    size = cfg.ensemble_size(k)
    if size < 2:
        raise ConfigError("ensemble size must be >= 2 for a sample stddev")
    if not directed:
        s = g.skeleton()
        pairs = [(u, w) for u in range(s.n) for w in s.neighbors(u).tolist()]
        g = DirectedGraph.from_edges(pairs, n=g.n, labels=g.labels)
    real = census(g, k, directed, workers).counts
    graphs = ensemble_graphs(g, cfg, size)

    def one(h):
        return census(h, k, directed).counts

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(one, graphs))
    else:
        counts = [one(h) for h in graphs]
    rand = np.stack(counts)
    return EnsembleStats(k, directed, size, tuple(summarize(real, rand)), rand)
