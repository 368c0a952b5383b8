"""Check that lifting keeps the chromatic number on random uniform hypergraphs.

Writes one JSON line per instance, then a summary line.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, fields
from itertools import combinations

import numpy as np

from hypercolor.chroma import chromatic_number
from hypercolor.hypergraph import Hypergraph
from hypercolor.lift import lift


@dataclass
class SweepConfig:
    trials: int = 50
    n_max: int = 7
    uniformities: tuple[int, ...] = (2, 3)
    edge_prob_low: float = 0.15
    edge_prob_high: float = 0.6
    seed: int = 0
    node_budget: int = 10**8


def random_uniform(rng: np.random.Generator, cfg: SweepConfig, m: int) -> Hypergraph:
    n = int(rng.integers(m + 1, cfg.n_max + 1))
    p = rng.uniform(cfg.edge_prob_low, cfg.edge_prob_high)
    edges = [e for e in combinations(range(n), m) if rng.random() < p] or [tuple(range(m))]
    return Hypergraph.from_edges(n, edges)


def run(cfg: SweepConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    mismatches = 0
    for i in range(cfg.trials):
        m = cfg.uniformities[i % len(cfg.uniformities)]
        H = random_uniform(rng, cfg, m)
        t0 = time.perf_counter()
        chi = chromatic_number(H, node_budget=cfg.node_budget).k
        L = lift(H, chi).lifted
        r = chromatic_number(L, node_budget=cfg.node_budget)
        row = {
            "trial": i, "m": m, "n": H.n, "edges": len(H.edges), "chi": chi,
            "lifted_n": L.n, "lifted_edges": len(L.edges), "lifted_chi": r.k,
            "nodes": r.stats.nodes, "seconds": round(time.perf_counter() - t0, 4),
        }
        mismatches += r.k != chi
        print(json.dumps(row), flush=True)
    summary = {"config": asdict(cfg), "mismatches": mismatches}
    print(json.dumps(summary))
    return summary


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(SweepConfig):
        if f.name == "uniformities":
            ap.add_argument("--uniformities", type=int, nargs="+", default=list(f.default))
        else:
            ap.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    args = vars(ap.parse_args(argv))
    args["uniformities"] = tuple(args["uniformities"])
    return 1 if run(SweepConfig(**args))["mismatches"] else 0


if __name__ == "__main__":
    sys.exit(main())
