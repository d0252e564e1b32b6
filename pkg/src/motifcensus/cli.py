"""Command-line front end: ``motifcensus count|significance|classes|oracle-check``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from .canonical import class_table
from .census import CountingError, MotifHistogram
from .counting import census
from .graph import EmptyGraphError, GraphParseError, load_edge_list
from .nullmodel import ConfigError, SwitchConfig, significance
from .oracle import DEFAULT_BUDGET, BudgetExceeded, oracle_histogram

EXIT_OK, EXIT_CONFIG, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3

log = logging.getLogger("motifcensus")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    k: int
    directed: bool
    format: str
    seed: int
    ensemble: int | None
    attempts: int
    workers: int
    budget: int
    keep_isolated: bool

    def __post_init__(self):
        if self.k not in (3, 4, 5):
            raise ConfigError(f"k must be 3, 4 or 5, got {self.k}")
        if self.workers < 1:
            raise ConfigError("--workers must be >= 1")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-k", type=int, default=3, help="subgraph order (3, 4 or 5)")
    common.add_argument("--undirected", action="store_true", help="count on the skeleton")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")

    graph = _Parser(add_help=False)
    graph.add_argument("input", help="edge list path, or - for stdin")
    graph.add_argument("--workers", type=int, default=1)
    graph.add_argument("--keep-isolated", action="store_true",
                       help="keep vertices that only had self-loops")

    p = _Parser(prog="motifcensus", description="Exact census of 3-, 4- and 5-vertex motifs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("count", parents=[common, graph], help="histogram of connected induced subgraphs")
    sig = sub.add_parser("significance", parents=[common, graph], help="z-scores against switched graphs")
    sig.add_argument("--seed", type=int, default=0)
    sig.add_argument("--ensemble", type=int, default=None,
                     help="random graphs (default 100/10/5 for k=3/4/5)")
    sig.add_argument("--attempts", type=int, default=3, help="switch trials per edge")
    sub.add_parser("classes", parents=[common], help="dump the class table with divisors")
    oc = sub.add_parser("oracle-check", parents=[common, graph], help="compare against brute force")
    oc.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return p


def to_config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        k=ns.k,
        directed=not ns.undirected,
        format=ns.format,
        seed=getattr(ns, "seed", 0),
        ensemble=getattr(ns, "ensemble", None),
        attempts=getattr(ns, "attempts", 3),
        workers=getattr(ns, "workers", 1),
        budget=getattr(ns, "budget", DEFAULT_BUDGET),
        keep_isolated=getattr(ns, "keep_isolated", False),
    )


def _load(cfg: RunConfig):
    src = sys.stdin.buffer if cfg.input == "-" else cfg.input
    return load_edge_list(src, drop_isolated=not cfg.keep_isolated)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6f}"


def _class_fields(table, cid: int) -> dict:
    code = table.code(cid)
    return {"class_id": cid, "code": code.hex, "adjacency": code.matrix_string()}


def _emit(cfg: RunConfig, header: list[str], rows: list[dict], meta: dict, out) -> None:
    if cfg.format == "json":
        json.dump({**meta, "rows": rows}, out, indent=1, sort_keys=False)
        out.write("\n")
        return
    out.write("\t".join(header) + "\n")
    for r in rows:
        out.write("\t".join(_fmt(r[h]) if isinstance(r[h], float) else str(r[h]) for h in header) + "\n")


def cmd_count(cfg: RunConfig, out, err) -> int:
    g, rep = _load(cfg)
    h = census(g, cfg.k, cfg.directed, cfg.workers)
    rows = [{**_class_fields(h.table, c), "count": n} for c, n in h.rows()]
    meta = {"k": cfg.k, "directed": cfg.directed, "n": g.n, "m": g.m, "total": h.total}
    _emit(cfg, ["class_id", "code", "adjacency", "count"], rows, meta, out)
    err.write(f"n={g.n} m={g.m} k={cfg.k} total={h.total} elapsed={h.elapsed:.4f}s\n")
    return EXIT_OK


def cmd_significance(cfg: RunConfig, out, err) -> int:
    g, rep = _load(cfg)
    sc = SwitchConfig(attempts=cfg.attempts, seed=cfg.seed, ensemble=cfg.ensemble)
    st = significance(g, cfg.k, sc, cfg.directed, cfg.workers)
    table = class_table(cfg.k, cfg.directed)
    rows = []
    for r in st.rows:
        row = {**_class_fields(table, r.class_id), "count": r.real, "mean": r.mean,
               "std": r.std, "z": r.z, "p": r.p}
        if cfg.format == "json" and r.z_infinite:
            row["z"] = None
            row["z_infinite"] = "+" if r.z > 0 else "-"
        rows.append(row)
    meta = {"k": cfg.k, "directed": cfg.directed, "n": g.n, "m": g.m, "ensemble": st.size,
            "attempts": cfg.attempts, "seed": cfg.seed, "prng": "PCG64"}
    _emit(cfg, ["class_id", "code", "adjacency", "count", "mean", "std", "z", "p"], rows, meta, out)
    err.write(f"n={g.n} m={g.m} k={cfg.k} ensemble={st.size} seed={cfg.seed}\n")
    return EXIT_OK


def cmd_classes(cfg: RunConfig, out, err) -> int:
    table = class_table(cfg.k, cfg.directed)
    header = ["class_id", "code", "k", "divisor", "matrix"]
    rows = [
        {**_class_fields(table, c), "k": cfg.k, "divisor": int(table.divisors[c]),
         "matrix": table.code(c).matrix_string()}
        for c in range(len(table))
    ]
    for r in rows:
        del r["adjacency"]
    _emit(cfg, header, rows, {"k": cfg.k, "directed": cfg.directed, "classes": len(table)}, out)
    return EXIT_OK


def diff_histograms(fast: MotifHistogram, slow: MotifHistogram) -> list[int]:
    return np.flatnonzero(fast.counts != slow.counts).tolist()


def cmd_oracle_check(cfg: RunConfig, out, err) -> int:
    g, rep = _load(cfg)
    subject = g if cfg.directed else g.skeleton()
    try:
        slow = oracle_histogram(subject, cfg.k, cfg.directed, cfg.budget).histogram
    except BudgetExceeded as e:
        err.write(f"refused: {e}\n")
        return EXIT_CONFIG
    try:
        fast = census(g, cfg.k, cfg.directed, cfg.workers)
    except CountingError as e:
        out.write(f"FAIL accelerated census aborted: {e}\n")
        return EXIT_MISMATCH
    bad = diff_histograms(fast, slow)
    if bad:
        out.write(f"FAIL {len(bad)} classes differ\n")
        out.write("class_id\tcode\taccelerated\toracle\n")
        for c in bad:
            out.write(f"{c}\t{fast.table.code(c).hex}\t{fast[c]}\t{slow[c]}\n")
        return EXIT_MISMATCH
    out.write(f"PASS k={cfg.k} directed={cfg.directed} classes={len(slow)} total={slow.total}\n")
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "significance": cmd_significance,
    "classes": cmd_classes,
    "oracle-check": cmd_oracle_check,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING)
        cfg = to_config(ns)
        return COMMANDS[cfg.command](cfg, out, err)
    except (UsageError, ConfigError) as e:
        err.write(f"error: {e}\n")
        return EXIT_CONFIG
    except (GraphParseError, EmptyGraphError, UnicodeDecodeError) as e:
        err.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except OSError as e:
        err.write(f"error: {e}\n")
        return EXIT_CONFIG
    except (CountingError, OverflowError) as e:
        err.write(f"counting error: {e}\n")
        return EXIT_MISMATCH


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
