"""Generate the bundled E.coli-scale regulatory network (418 vertices, 519 arcs).

Transcription networks are sparse, have a few regulator hubs and are rich in
feed-forward loops. The generator reproduces those traits: a shallow
regulator hierarchy, one preferential regulator per target, then extra arcs
x -> t whenever x regulates y and y regulates t.

    python3 tools/make_ecoli_like.py > src/motifcensus/data/ecoli_like.txt
"""

import sys

import numpy as np

N, M, N_REG, REG_ARCS, SEED = 418, 519, 40, 45, 20090101


def generate(seed=SEED):
    rng = np.random.default_rng(seed)
    arcs = set()
    # regulators: lower ids sit higher in the hierarchy
    while len(arcs) < REG_ARCS:
        x, y = sorted(rng.choice(N_REG, size=2, replace=False).tolist())
        arcs.add((x, y))
    w = 1.0 / np.arange(1, N_REG + 1) ** 1.1
    w /= w.sum()
    targets_of = {r: [] for r in range(N_REG)}
    for t in range(N_REG, N):
        r = int(rng.choice(N_REG, p=w))
        arcs.add((r, t))
        targets_of[r].append(t)
    reg_arcs = sorted(a for a in arcs if a[1] < N_REG)
    while len(arcs) < M:
        x, y = reg_arcs[rng.integers(len(reg_arcs))]
        if not targets_of[y]:
            continue
        t = targets_of[y][rng.integers(len(targets_of[y]))]
        arcs.add((x, t))
    return sorted(arcs)


def label(v):
    return f"reg{v:02d}" if v < N_REG else f"gene{v:03d}"


if __name__ == "__main__":
    out = sys.stdout
    out.write(f"# E.coli-scale synthetic regulatory network: {N} vertices, {M} arcs, seed {SEED}\n")
    for u, v in generate():
        out.write(f"{label(u)} {label(v)}\n")
