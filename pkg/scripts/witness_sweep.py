"""Run the random-augment witness search over a range of seeds and report window sizes."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from hypercolor.geomfam import unit_gon, witness_search


@dataclass
class WitnessConfig:
    target_k: int = 4
    seeds: int = 20
    budget: int = 300
    max_points: int = 40


def run(cfg: WitnessConfig) -> int:
    found = 0
    for seed in range(cfg.seeds):
        t0 = time.perf_counter()
        w = witness_search(unit_gon(), cfg.target_k, "random-augment", cfg.budget, seed, max_points=cfg.max_points)
        row = {"seed": seed, "found": w is not None, "seconds": round(time.perf_counter() - t0, 3)}
        if w is not None:
            found += 1
            row.update(points=len(w.points), edges=len(w.hypergraph.edges), nodes=w.nodes)
        print(json.dumps(row), flush=True)
    print(json.dumps({"found": found, "seeds": cfg.seeds}))
    return found


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(WitnessConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = WitnessConfig(**vars(ap.parse_args(argv)))
    return 0 if run(cfg) else 1


if __name__ == "__main__":
    sys.exit(main())
