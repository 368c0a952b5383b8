"""Periodic m^d-colourings of (R^d, norm) that forbid one distance.

Cut R^d into half-open cubes of side ``eps`` and colour a cube by its
integer coordinates mod ``m``. Two points in one cube are closer than the
cube's diameter; two points in different cubes of the same colour differ by
more than ``(m-1)*eps`` along some axis. Choosing ``eps * C < a`` and
``c * (m-1) * eps > a`` therefore keeps every pair at distance ``a`` bichromatic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from hypercolor.errors import InputError
from hypercolor.geometry import NormSpec

DEFAULT_SAFETY = 0.99
SAMPLER_TOL = 1e-12


def equivalence_constants(norm: NormSpec, d: int) -> tuple[float, float]:
    """Tightest ``(c, C)`` with ``c*|u|_inf <= |u| <= C*|u|_inf`` on R^d."""
    if not isinstance(norm, NormSpec):
        raise InputError(f"unsupported norm {norm!r}")
    return norm.constants(d)


@dataclass(frozen=True)
class PeriodicColoring:
    norm: NormSpec
    d: int
    eps: float
    m: int
    forbidden: float = 1.0

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InputError("d must be >= 1")
        if not self.eps > 0:
            raise InputError("eps must be positive")
        if self.m < 1:
            raise InputError("m must be >= 1")

    @property
    def n_colors(self) -> int:
        return self.m**self.d

    @property
    def period(self) -> float:
        return self.m * self.eps

    def cell_diameter(self) -> float:
        """Norm-diameter of one closed cell ``[0, eps]^d``."""
        return self.norm([self.eps] * self.d)

    def is_valid(self) -> bool:
        """Both strict inequalities that make the colouring proper."""
        c, _ = equivalence_constants(self.norm, self.d)
        return self.cell_diameter() < self.forbidden and c * (self.m - 1) * self.eps > self.forbidden

    def __call__(self, x: Sequence[float]) -> tuple[int, ...]:
        return color_point(self, x)


def tiling_params(
    norm: NormSpec,
    d: int,
    safety: float = DEFAULT_SAFETY,
    forbidden: float = 1.0,
) -> PeriodicColoring:
    """Cell size and modulus for a colouring forbidding distance ``forbidden``."""
    if not 0 < safety < 1:
        raise InputError("safety must lie in (0, 1)")
    if not forbidden > 0:
        raise InputError("forbidden distance must be positive")
    c, C = equivalence_constants(norm, d)
    eps = safety * forbidden / C
    # least m with c*(m-1)*eps > forbidden
    m = math.floor(forbidden / (c * eps)) + 2
    while m > 2 and c * (m - 2) * eps > forbidden:
        m -= 1
    return PeriodicColoring(norm, d, eps, m, forbidden)


def color_point(pc: PeriodicColoring, x: Sequence[float]) -> tuple[int, ...]:
    if len(x) != pc.d:
        raise InputError(f"point has dimension {len(x)}, coloring has {pc.d}")
    return tuple(math.floor(xi / pc.eps) % pc.m for xi in x)


def color_points(pc: PeriodicColoring, X: np.ndarray) -> np.ndarray:
    """Vectorised :func:`color_point` over the rows of ``X``."""
    return np.mod(np.floor(np.asarray(X, dtype=float) / pc.eps), pc.m).astype(np.int64)


def color_index(pc: PeriodicColoring, X: np.ndarray) -> np.ndarray:
    """Colour tuples packed into single integers in ``0..m^d - 1``."""
    cols = color_points(pc, X)
    weights = pc.m ** np.arange(pc.d, dtype=np.int64)
    return cols @ weights


def norm_rows(norm: NormSpec, U: np.ndarray) -> np.ndarray:
    if norm.is_inf:
        return np.max(np.abs(U), axis=1)
    return np.linalg.norm(U, ord=norm.p, axis=1)


def sample_pairs(
    norm: NormSpec,
    d: int,
    n: int,
    rng: np.random.Generator,
    box: float,
    length: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """``n`` pairs ``(x, x + u)`` with ``x`` uniform in ``[0, box)^d`` and ``|u| = length``.

    Directions are uniform on the Euclidean sphere, then rescaled in ``norm``.
    Pairs whose rescaled length misses ``length`` by more than 1e-12 are dropped.
    """
    X = rng.random((n, d)) * box
    U = rng.normal(size=(n, d))
    nrm = norm_rows(norm, U)
    keep = nrm > 0
    X, U, nrm = X[keep], U[keep], nrm[keep]
    U = U * (length / nrm)[:, None]
    ok = np.abs(norm_rows(norm, U) - length) <= SAMPLER_TOL * max(length, 1.0)
    return X[ok], X[ok] + U[ok]


@dataclass(frozen=True)
class ForbidReport:
    violations: int
    pairs_checked: int
    seed: int
    workers: int = 1
    norm: str = ""
    d: int = 0
    eps: float = 0.0
    m: int = 0
    colors: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "violations": self.violations,
            "pairs_checked": self.pairs_checked,
            "seed": self.seed,
            "workers": self.workers,
            "norm": self.norm,
            "d": self.d,
            "eps": self.eps,
            "m": self.m,
            "colors": self.colors,
        }
        out.update(self.extra)
        return out


def verify_forbids(
    pc: PeriodicColoring,
    samples: int,
    seed: int = 0,
    workers: int = 1,
    chunk: int = 50_000,
) -> ForbidReport:
    """Count sampled pairs at the forbidden distance that share a colour.

    The sample budget is split over ``workers`` streams spawned from ``seed``,
    so the result depends only on ``(seed, workers)``.
    """
    if samples < 0:
        raise InputError("samples must be >= 0")
    if workers < 1:
        raise InputError("workers must be >= 1")
    streams = np.random.SeedSequence(seed).spawn(workers)
    shares = [samples // workers + (1 if i < samples % workers else 0) for i in range(workers)]
    violations = checked = 0
    for ss, share in zip(streams, shares):
        rng = np.random.default_rng(ss)
        left = share
        while left > 0:
            n = min(chunk, left)
            left -= n
            X, Y = sample_pairs(pc.norm, pc.d, n, rng, pc.period, pc.forbidden)
            same = color_index(pc, X) == color_index(pc, Y)
            violations += int(same.sum())
            checked += len(X)
    return ForbidReport(
        violations, checked, seed, workers, pc.norm.name, pc.d, pc.eps, pc.m, pc.n_colors
    )


def observed_colors(pc: PeriodicColoring) -> int:
    """Distinct colours over the centres of all cells of one period."""
    axes = [(np.arange(pc.m) + 0.5) * pc.eps] * pc.d
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, pc.d)
    return len(np.unique(color_index(pc, grid)))
