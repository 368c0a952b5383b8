"""Sample unit-distance pairs against the periodic tiling for several norms and dimensions."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from hypercolor.geometry import NormSpec
from hypercolor.tiling import observed_colors, tiling_params, verify_forbids


@dataclass
class TilingConfig:
    norms: list[str] = field(default_factory=lambda: ["l1", "l2", "l3", "linf"])
    dims: list[int] = field(default_factory=lambda: [1, 2, 3, 4])
    samples: int = 100_000
    safety: float = 0.99
    seed: int = 0


def run(cfg: TilingConfig) -> int:
    bad = 0
    print(f"{'norm':>5} {'d':>2} {'eps':>9} {'m':>3} {'colors':>7} {'pairs':>8} {'violations':>10}")
    for name in cfg.norms:
        for d in cfg.dims:
            pc = tiling_params(NormSpec.parse(name), d, cfg.safety)
            rep = verify_forbids(pc, cfg.samples, cfg.seed)
            seen = observed_colors(pc)
            bad += rep.violations > 0 or seen != pc.n_colors
            print(f"{name:>5} {d:>2} {pc.eps:9.5f} {pc.m:>3} {seen:>7} {rep.pairs_checked:>8} {rep.violations:>10}")
    return bad


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--norms", nargs="+", default=TilingConfig().norms)
    ap.add_argument("--dims", type=int, nargs="+", default=TilingConfig().dims)
    ap.add_argument("--samples", type=int, default=TilingConfig.samples)
    ap.add_argument("--safety", type=float, default=TilingConfig.safety)
    ap.add_argument("--seed", type=int, default=TilingConfig.seed)
    return 1 if run(TilingConfig(**vars(ap.parse_args(argv)))) else 0


if __name__ == "__main__":
    sys.exit(main())
