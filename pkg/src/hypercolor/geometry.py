"""Points, norms and Euclidean congruence for finite point sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from hypercolor.errors import InputError

DEFAULT_TOL = 1e-9

Point = tuple[float, ...]


def as_point(coords: Sequence[float]) -> Point:
    p = tuple(float(c) for c in coords)
    if not p:
        raise InputError("a point needs at least one coordinate")
    if not all(math.isfinite(c) for c in p):
        raise InputError(f"non-finite coordinate in {p!r}")
    return p


def as_points(points: Sequence[Sequence[float]]) -> tuple[Point, ...]:
    pts = tuple(as_point(p) for p in points)
    common_dimension(pts)
    return pts


def common_dimension(points: Sequence[Sequence[float]]) -> int | None:
    """Shared dimension of ``points`` (None for an empty sequence)."""
    dims = {len(p) for p in points}
    if len(dims) > 1:
        raise InputError(f"mixed point dimensions {sorted(dims)}")
    return dims.pop() if dims else None


@dataclass(frozen=True)
class NormSpec:
    """An Lp norm (``p >= 1``) or the max norm (``p = inf``)."""

    p: float = 2.0

    def __post_init__(self) -> None:
        if not (self.p >= 1):
            raise InputError(f"Lp norms need p >= 1, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        t = text.strip().lower()
        if t in ("linf", "l_inf", "inf", "max"):
            return cls(math.inf)
        if t.startswith("l"):
            t = t[1:]
        try:
            return cls(float(t))
        except ValueError:
            raise InputError(f"unknown norm {text!r}") from None

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.p)

    @property
    def is_euclidean(self) -> bool:
        return self.p == 2.0

    @property
    def name(self) -> str:
        if self.is_inf:
            return "linf"
        return f"l{self.p:g}"

    def constants(self, d: int) -> tuple[float, float]:
        """(c, C) with c*|u|_inf <= |u| <= C*|u|_inf on R^d."""
        if d < 1:
            raise InputError("dimension must be >= 1")
        if self.is_inf:
            return 1.0, 1.0
        return 1.0, float(d) ** (1.0 / self.p)

    def __call__(self, u: Sequence[float]) -> float:
        if self.is_inf:
            return max((abs(x) for x in u), default=0.0)
        if self.p == 2.0:
            return math.sqrt(math.fsum(x * x for x in u))
        if self.p == 1.0:
            return math.fsum(abs(x) for x in u)
        # scale by the max entry to keep large p from overflowing
        big = max((abs(x) for x in u), default=0.0)
        if big == 0.0:
            return 0.0
        return big * math.fsum((abs(x) / big) ** self.p for x in u) ** (1.0 / self.p)


L1 = NormSpec(1.0)
L2 = NormSpec(2.0)
LINF = NormSpec(math.inf)


def _check_dims(x: Sequence[float], y: Sequence[float]) -> None:
    if len(x) != len(y):
        raise InputError(f"dimension mismatch: {len(x)} vs {len(y)}")


def distance(x: Sequence[float], y: Sequence[float], norm: NormSpec = L2) -> float:
    _check_dims(x, y)
    return norm([a - b for a, b in zip(x, y)])


def unit_distance_pairs(
    points: Sequence[Sequence[float]],
    norm: NormSpec = L2,
    tol: float = DEFAULT_TOL,
    length: float = 1.0,
) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)``, ``i < j``, at distance ``length`` (within ``tol``)."""
    if tol <= 0:
        raise InputError("tol must be positive")
    common_dimension(points)
    return [
        (i, j)
        for i, j in combinations(range(len(points)), 2)
        if abs(distance(points[i], points[j], norm) - length) <= tol
    ]


def translate(points: Sequence[Sequence[float]], v: Sequence[float]) -> tuple[Point, ...]:
    out = []
    for p in points:
        _check_dims(p, v)
        out.append(tuple(a + b for a, b in zip(p, v)))
    return tuple(out)


def diameter(points: Sequence[Sequence[float]], norm: NormSpec = L2) -> float:
    return max((distance(a, b, norm) for a, b in combinations(points, 2)), default=0.0)


def distance_matrix(points: Sequence[Sequence[float]], norm: NormSpec = L2) -> list[list[float]]:
    n = len(points)
    dm = [[0.0] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        dm[i][j] = dm[j][i] = distance(points[i], points[j], norm)
    return dm


def _multisets_close(a: list[float], b: list[float], tol: float) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def congruent_euclidean(
    X: Sequence[Sequence[float]],
    Y: Sequence[Sequence[float]],
    tol: float = DEFAULT_TOL,
) -> list[int] | None:
    """Find ``f`` with ``f[i] = j`` mapping X onto Y preserving all distances.

    In Euclidean space a distance-preserving bijection between finite sets
    extends to an isometry, so this is an exact congruence test (up to tol).
    Returns None when no such bijection exists.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    dx, dy = common_dimension(X), common_dimension(Y)
    if dx is not None and dy is not None and dx != dy:
        raise InputError(f"dimension mismatch: {dx} vs {dy}")
    n = len(X)
    if n != len(Y):
        return None
    if n == 0:
        return []
    DX, DY = distance_matrix(X), distance_matrix(Y)
    if not _multisets_close(
        sorted(v for r in DX for v in r), sorted(v for r in DY for v in r), tol
    ):
        return None
    # per-point distance profiles prune candidate images
    px = [sorted(r) for r in DX]
    py = [sorted(r) for r in DY]
    cands = [[j for j in range(n) if _multisets_close(px[i], py[j], tol)] for i in range(n)]
    if any(not c for c in cands):
        return None
    order = sorted(range(n), key=lambda i: len(cands[i]))
    f = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in cands[i]:
            if used[j]:
                continue
            if all(abs(DX[i][order[t]] - DY[j][f[order[t]]]) <= tol for t in range(k)):
                f[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                used[j] = False
        f[i] = -1
        return False

    return f if extend(0) else None


def congruent_translation(
    X: Sequence[Sequence[float]],
    Y: Sequence[Sequence[float]],
    tol: float = DEFAULT_TOL,
) -> list[int] | None:
    """Bijection X -> Y realised by a single translation, or None.

    Coordinates are compared componentwise, so the test is norm-free.
    """
    n = len(X)
    if n != len(Y):
        return None
    if n == 0:
        return []
    dx, dy = common_dimension(X), common_dimension(Y)
    if dx != dy:
        raise InputError(f"dimension mismatch: {dx} vs {dy}")
    x0 = X[0]
    for y0 in Y:
        v = [b - a for a, b in zip(x0, y0)]
        f: list[int] = []
        used = set()
        for p in X:
            q = [a + b for a, b in zip(p, v)]
            hit = next(
                (
                    j
                    for j, y in enumerate(Y)
                    if j not in used and all(abs(s - t) <= tol for s, t in zip(q, y))
                ),
                None,
            )
            if hit is None:
                break
            used.add(hit)
            f.append(hit)
        else:
            return f
    return None
