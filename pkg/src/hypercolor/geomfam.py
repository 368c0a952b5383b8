"""Congruence-closed edge families restricted to finite point sets.

A family is given by a finite set ``M`` of m-gons (m-point sets). On a
finite window ``F`` its edges are the m-subsets of ``F`` congruent to some
gon of ``M``. Euclidean congruence is tested exactly (distance-preserving
bijection); under other norms only translation-congruence is offered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from hypercolor import chroma, geometry, pointsets
from hypercolor.errors import InputError, ResourceError
from hypercolor.geometry import DEFAULT_TOL, L2, NormSpec, Point
from hypercolor.hypergraph import Hypergraph

EUCLIDEAN = "euclidean-congruence"
TRANSLATION = "translation-congruence"
MODES = (EUCLIDEAN, TRANSLATION)
DEFAULT_SUBSET_CAP = 250_000


@dataclass(frozen=True)
class GonSet:
    """Equal-cardinality point sets in R^d."""

    gons: tuple[tuple[Point, ...], ...]
    m: int
    d: int

    @classmethod
    def of(cls, gons: Iterable[Sequence[Sequence[float]]], m: int | None = None, d: int | None = None) -> "GonSet":
        seen: dict[tuple[Point, ...], None] = {}
        for g in gons:
            pts = geometry.as_points(g)
            seen.setdefault(tuple(sorted(pts)), None)
        out = tuple(seen)
        sizes = {len(g) for g in out}
        dims = {len(g[0]) for g in out if g}
        if len(sizes) > 1:
            raise InputError(f"gons of different sizes {sorted(sizes)}")
        if len(dims) > 1:
            raise InputError(f"gons of different dimensions {sorted(dims)}")
        m = sizes.pop() if sizes else m
        d = dims.pop() if dims else d
        if m is None or d is None:
            raise InputError("an empty GonSet needs explicit m and d")
        if m < 2:
            raise InputError("gons need at least 2 points")
        for g in out:
            if len(set(g)) != len(g):
                raise InputError(f"gon {g} has repeated points")
        return cls(out, m, d)

    def __len__(self) -> int:
        return len(self.gons)

    def __iter__(self):
        return iter(self.gons)

    def is_unit(self, tol: float = DEFAULT_TOL) -> bool:
        """Every gon has a pair at Euclidean distance 1."""
        return all(geometry.unit_distance_pairs(g, L2, tol) for g in self.gons)

    def distances(self) -> list[float]:
        """Distinct Euclidean distances occurring inside the gons."""
        out: list[float] = []
        for g in self.gons:
            for a, b in combinations(g, 2):
                dd = geometry.distance(a, b)
                if all(abs(dd - x) > DEFAULT_TOL for x in out):
                    out.append(dd)
        return sorted(out)


def unit_gon(d: int = 2) -> GonSet:
    return GonSet.of([pointsets.unit_pair(d)])


def _pair_profile(idx: Sequence[int], dm: list[list[float]]) -> list[float]:
    return sorted(dm[i][j] for i, j in combinations(idx, 2))


def instantiate(
    M: GonSet,
    F: Sequence[Sequence[float]],
    norm: NormSpec = L2,
    mode: str = EUCLIDEAN,
    tol: float = DEFAULT_TOL,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> Hypergraph:
    """The hypergraph on ``F`` whose edges are the copies of gons in ``M``.

    Subsets are scanned in lexicographic index order. Euclidean mode first
    compares sorted distance multisets, then looks for a matching bijection.
    """
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == EUCLIDEAN and not norm.is_euclidean:
        raise InputError("euclidean-congruence mode requires the L2 norm")
    pts = geometry.as_points(F)
    if pts and len(pts[0]) != M.d:
        raise InputError(f"points have dimension {len(pts[0])}, gons have {M.d}")
    m = M.m
    if not M.gons or len(pts) < m:
        return Hypergraph(len(pts), (), pts)

    if mode == EUCLIDEAN and m == 2:
        lengths = M.distances()
        edges = [
            (i, j)
            for i, j in combinations(range(len(pts)), 2)
            if any(abs(geometry.distance(pts[i], pts[j]) - L) <= tol for L in lengths)
        ]
        return Hypergraph.from_edges(len(pts), edges, pts)

    total = comb(len(pts), m)
    if total > subset_cap:
        raise ResourceError(f"{total} candidate {m}-subsets exceeds the cap of {subset_cap}")
    edges = []
    if mode == EUCLIDEAN:
        dm = geometry.distance_matrix(pts)
        profiles = []
        for g in M.gons:
            gdm = geometry.distance_matrix(g)
            profiles.append((g, _pair_profile(range(m), gdm)))
        for idx in combinations(range(len(pts)), m):
            prof = _pair_profile(idx, dm)
            sub = [pts[i] for i in idx]
            for g, gprof in profiles:
                if all(abs(a - b) <= tol for a, b in zip(prof, gprof)) and geometry.congruent_euclidean(sub, g, tol) is not None:
                    edges.append(idx)
                    break
    else:
        for idx in combinations(range(len(pts)), m):
            sub = [pts[i] for i in idx]
            if any(geometry.congruent_translation(sub, g, tol) is not None for g in M.gons):
                edges.append(idx)
    return Hypergraph.from_edges(len(pts), edges, pts)


PointColoring = Callable[[Sequence[float]], Hashable]


def product_coloring(colorings: Sequence[PointColoring]) -> Callable[[Sequence[float]], tuple]:
    """Colour a point by the tuple of its component colours.

    If each component forbids some distance, the product forbids all of them.
    """
    if not colorings:
        raise InputError("need at least one component coloring")
    parts = tuple(colorings)

    def psi(x: Sequence[float]) -> tuple:
        return tuple(phi(x) for phi in parts)

    return psi


def augment_gons(
    S_j: GonSet,
    M: GonSet,
    F_j: Sequence[Sequence[float]],
    tol: float = DEFAULT_TOL,
) -> GonSet:
    """``S_j`` plus every ``X | {z}`` with ``X`` in ``M`` and ``z`` in ``F_j``.

    If some ``z`` lands on a point of a gon in ``M``, ``F_j`` is first moved
    clear along the first axis (isometric images keep their chromatic data).
    """
    if S_j.m != M.m + 1:
        raise InputError(f"S_j holds {S_j.m}-gons but M holds {M.m}-gons; need S_j.m = M.m + 1")
    if S_j.d != M.d:
        raise InputError("S_j and M live in different dimensions")
    zs = geometry.as_points(F_j) if len(F_j) else ()
    if zs and len(zs[0]) != M.d:
        raise InputError("F_j has the wrong dimension")
    gon_points = [p for g in M.gons for p in g]
    if any(geometry.distance(z, p, NormSpec(math.inf)) <= tol for z in zs for p in gon_points):
        lo = min(p[0] for p in gon_points + list(zs))
        hi = max(p[0] for p in gon_points + list(zs))
        zs = geometry.translate(zs, (hi - lo + 1.0,) + (0.0,) * (M.d - 1))
    new = [tuple(X) + (z,) for X in M.gons for z in zs]
    return GonSet.of(list(S_j.gons) + new, m=S_j.m, d=S_j.d)


def gm_hypergraph(
    P: Sequence[Sequence[float]],
    norm: NormSpec = L2,
    m: int = 2,
    tol: float = DEFAULT_TOL,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> Hypergraph:
    """m-subsets of ``P`` that contain some pair at distance 1."""
    pts = geometry.as_points(P)
    if m < 2:
        raise InputError("m must be >= 2")
    if m > len(pts):
        raise InputError(f"m = {m} exceeds |P| = {len(pts)}")
    pairs = geometry.unit_distance_pairs(pts, norm, tol)
    if m == 2:
        return Hypergraph.from_edges(len(pts), pairs, pts)
    if comb(len(pts), m) > subset_cap:
        raise ResourceError(f"C({len(pts)}, {m}) subsets exceeds the cap of {subset_cap}")
    masks = [(1 << i) | (1 << j) for i, j in pairs]
    edges = []
    for idx in combinations(range(len(pts)), m):
        s = 0
        for i in idx:
            s |= 1 << i
        if any(s & pm == pm for pm in masks):
            edges.append(idx)
    return Hypergraph.from_edges(len(pts), edges, pts)


def augment_t(H0: Hypergraph, t: int) -> Hypergraph:
    """Edges ``e | T`` for every edge ``e`` and every t-set ``T`` outside it."""
    if t < 0:
        raise InputError("t must be >= 0")
    if t == 0:
        return H0
    biggest = max((len(e) for e in H0.edges), default=0)
    if t > H0.n - biggest:
        raise InputError(f"t = {t} too large: n = {H0.n}, largest edge has {biggest} vertices")
    edges = []
    for e in H0.edges:
        rest = [v for v in range(H0.n) if v not in e]
        for T in combinations(rest, t):
            edges.append(tuple(sorted(e + T)))
    return Hypergraph.from_edges(H0.n, edges, H0.embedding)


@dataclass(frozen=True)
class AugmentReport:
    chi: tuple[int, ...]  # chi(H_0), chi(H_1), ..., chi(H_t)
    hypergraphs: tuple[Hypergraph, ...]

    @property
    def non_increasing(self) -> bool:
        return all(a >= b for a, b in zip(self.chi, self.chi[1:]))


def augment_chain(H0: Hypergraph, t: int, node_budget: int | None = None) -> AugmentReport:
    """H_0..H_t with their exact chromatic numbers.

    On a finite vertex set only chi(H_t) <= chi(H_{t-1}) is guaranteed.
    """
    hs = [augment_t(H0, s) for s in range(t + 1)]
    chis = tuple(chroma.chromatic_number(h, node_budget=node_budget).k for h in hs)
    return AugmentReport(chis, tuple(hs))


# -- witness search -------------------------------------------------------

STRATEGIES = ("library", "lattice", "random-augment")


@dataclass(frozen=True)
class Witness:
    points: tuple[Point, ...]
    hypergraph: Hypergraph
    target_k: int
    # best colouring found with the fewest colours, for reference
    coloring: chroma.Coloring | None
    nodes: int
    source: str

    def recheck(self, node_budget: int | None = None) -> bool:
        """Re-run the solver: no proper colouring with ``target_k - 1`` colours."""
        return chroma.is_k_colorable(self.hypergraph, self.target_k - 1, node_budget=node_budget) is None


def _library_candidates(M: GonSet):
    for g in M.gons:
        yield "gon", list(g)
    d = M.d
    yield "unit-simplex", pointsets.unit_simplex(d)
    if d == 2:
        for name in ("integer-grid(3,3)", "triangular-lattice(1)", "moser-spindle", "golomb"):
            yield name, pointsets.builtin_pointsets(name)


def _lattice_candidates(M: GonSet):
    for g in M.gons:
        yield "gon", list(g)
    if M.d == 2:
        r = 1
        while True:
            yield f"triangular-lattice({r})", pointsets.triangular_lattice(r)
            yield f"integer-grid({r + 1},{r + 1})", pointsets.integer_grid(r + 1, r + 1)
            r += 1
    else:
        w = 2
        while True:
            axes = [np.arange(w, dtype=float)] * M.d
            grid = np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, M.d)
            yield f"integer-grid^{M.d}({w})", [tuple(map(float, p)) for p in grid]
            w += 1


def _rotation_union(points: list[Point], rng: np.random.Generator, lengths: list[float]) -> list[Point] | None:
    """Union with a copy rotated about one point so that another point's image
    lands at a gon distance from it (the spindle trick)."""
    n = len(points)
    if n < 2 or len(points[0]) < 2:
        return None
    p, q = (int(i) for i in rng.choice(n, size=2, replace=False))
    r = geometry.distance(points[p], points[q])
    L = float(rng.choice(lengths))
    if r <= 0 or L > 2 * r:
        return None
    theta = 2.0 * math.asin(L / (2.0 * r)) * (1 if rng.random() < 0.5 else -1)
    about = points[p]
    return points + [pointsets._rotate(x, theta, about) for x in points]


def _circle_points(points: list[Point], rng: np.random.Generator, lengths: list[float]) -> list[Point]:
    """Points at gon distances from two existing points (d = 2), or from one
    point along a random direction otherwise."""
    n = len(points)
    d = len(points[0])
    if d == 2 and n >= 2:
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        a, b = np.array(points[i]), np.array(points[j])
        r1, r2 = float(rng.choice(lengths)), float(rng.choice(lengths))
        dist = float(np.linalg.norm(b - a))
        if 0 < dist <= r1 + r2 and dist >= abs(r1 - r2):
            x = (dist * dist + r1 * r1 - r2 * r2) / (2 * dist)
            h = math.sqrt(max(r1 * r1 - x * x, 0.0))
            u = (b - a) / dist
            perp = np.array([-u[1], u[0]])
            return [tuple(map(float, a + x * u + h * perp)), tuple(map(float, a + x * u - h * perp))]
    i = int(rng.integers(n))
    v = rng.normal(size=d)
    v /= np.linalg.norm(v)
    return [tuple(map(float, np.array(points[i]) + float(rng.choice(lengths)) * v))]


def _dedupe(points: Iterable[Point], tol: float) -> list[Point]:
    out: list[Point] = []
    for p in points:
        if all(max(abs(a - b) for a, b in zip(p, q)) > tol * 10 for q in out):
            out.append(p)
    return out


def witness_search(
    M: GonSet,
    target_k: int,
    strategy: str = "library",
    budget: int = 50,
    seed: int = 0,
    *,
    max_points: int = 40,
    node_budget: int = 10**6,
    tol: float = DEFAULT_TOL,
) -> Witness | None:
    """Heuristic search for a finite window whose instantiation needs
    ``target_k`` colours.

    ``budget`` caps the number of candidate windows evaluated. None means the
    budget ran out; it says nothing about whether a witness exists.
    """
    if strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if target_k < 2:
        raise InputError("target_k must be >= 2")
    if budget <= 0:
        raise InputError("budget must be positive")
    if not M.gons:
        raise InputError("M has no gons")

    def certify(name: str, F: Sequence[Point]) -> Witness | None:
        if len(F) < M.m:
            return None
        try:
            H = instantiate(M, F, L2, EUCLIDEAN, tol)
            stats = chroma.SolverStats()
            phi = chroma.is_k_colorable(H, target_k - 1, node_budget=node_budget, stats=stats)
        except ResourceError:
            return None
        if phi is None:
            return Witness(tuple(F), H, target_k, None, stats.nodes, name)
        return None

    if strategy in ("library", "lattice"):
        gen = _library_candidates(M) if strategy == "library" else _lattice_candidates(M)
        for used, (name, F) in enumerate(gen):
            if used >= budget:
                return None
            if len(F) > max(max_points, M.m):
                if strategy == "lattice":
                    return None  # windows only grow from here
                continue
            w = certify(name, F)
            if w is not None:
                return w
        return None

    rng = np.random.default_rng(seed)
    lengths = M.distances()
    current = list(M.gons[0])
    w = certify("gon", current)
    if w is not None:
        return w
    spent = 1

    def score(F: list[Point]) -> tuple[int, float]:
        H = instantiate(M, F, L2, EUCLIDEAN, tol)
        try:
            k = chroma.chromatic_number(H, node_budget=node_budget).k
        except ResourceError:
            k = 0
        return k, len(H.edges) / max(len(F), 1)

    best = score(current)
    while spent < budget:
        proposals = []
        for _ in range(4):
            if rng.random() < 0.3:
                cand = _rotation_union(current, rng, lengths)
                if cand is None:
                    continue
            else:
                cand = current + _circle_points(current, rng, lengths)
            cand = _dedupe(cand, tol)
            if len(current) < len(cand) <= max_points:
                proposals.append(cand)
        for cand in proposals:
            if spent >= budget:
                break
            spent += 1
            s = score(cand)
            if s[0] >= target_k:
                w = certify("random-augment", cand)
                if w is not None:
                    return w
            if s >= best:
                best, current = s, cand
        if not proposals:
            # window is full or growth keeps failing: start over from the gon
            spent += 1
            current = list(M.gons[0])
            best = score(current)
    return None
