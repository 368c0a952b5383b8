"""Brute-force reference implementations, independent of the package code paths."""

from __future__ import annotations

import math
from itertools import combinations, permutations

import numpy as np
from hypothesis import strategies as st

from hypercolor.hypergraph import Hypergraph


def all_colorings(n: int, m: int) -> np.ndarray:
    """Every map {0..n-1} -> {0..m-1}, one per row."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grids = np.meshgrid(*[np.arange(m, dtype=np.int8)] * n, indexing="ij")
    return np.stack(grids, -1).reshape(-1, n)


def proper_mask(edges, C: np.ndarray) -> np.ndarray:
    ok = np.ones(len(C), dtype=bool)
    for e in edges:
        cols = C[:, list(e)]
        ok &= ~(cols == cols[:, :1]).all(axis=1)
    return ok


def brute_chi(n: int, edges) -> int:
    """Least m admitting a proper colouring, by enumerating all m^n maps."""
    if not edges:
        return 1
    for m in range(1, n + 1):
        if proper_mask(edges, all_colorings(n, m)).any():
            return m
    raise AssertionError("n colours always suffice")


def brute_unit_pairs(points, length=1.0, tol=1e-9, p=2.0):
    out = []
    for i, j in combinations(range(len(points)), 2):
        diff = [a - b for a, b in zip(points[i], points[j])]
        if math.isinf(p):
            dist = max(abs(x) for x in diff)
        else:
            dist = sum(abs(x) ** p for x in diff) ** (1 / p)
        if abs(dist - length) <= tol:
            out.append((i, j))
    return out


def brute_congruent(X, Y, tol=1e-9) -> bool:
    """Try every bijection and compare all pairwise Euclidean distances."""
    if len(X) != len(Y):
        return False
    n = len(X)
    dx = [[math.dist(X[i], X[j]) for j in range(n)] for i in range(n)]
    dy = [[math.dist(Y[i], Y[j]) for j in range(n)] for i in range(n)]
    for perm in permutations(range(n)):
        if all(abs(dx[i][j] - dy[perm[i]][perm[j]]) <= tol for i in range(n) for j in range(i + 1, n)):
            return True
    return False


def random_hypergraph(rng: np.random.Generator, n_max=8, sizes=(2, 3, 4), n_min=2) -> Hypergraph:
    n = int(rng.integers(n_min, n_max + 1))
    sizes = [s for s in sizes if s <= n]
    n_edges = int(rng.integers(0, 3 * n + 1))
    edges = set()
    for _ in range(n_edges):
        s = int(rng.choice(sizes))
        edges.add(tuple(sorted(int(v) for v in rng.choice(n, size=s, replace=False))))
    return Hypergraph.from_edges(n, sorted(edges))


def random_uniform(rng: np.random.Generator, n_max=7, m=2, n_min=None, p=None) -> Hypergraph:
    n = int(rng.integers(n_min or m + 1, n_max + 1))
    p = float(rng.uniform(0.15, 0.6)) if p is None else p
    edges = [e for e in combinations(range(n), m) if rng.random() < p]
    if not edges:
        edges = [tuple(range(m))]
    return Hypergraph.from_edges(n, edges)


@st.composite
def hypergraphs(draw, max_n=8, sizes=(2, 3, 4), max_edges=16, min_edges=0):
    n = draw(st.integers(2, max_n))
    ok_sizes = [s for s in sizes if s <= n]
    edge = st.sampled_from(ok_sizes).flatmap(
        lambda s: st.lists(st.integers(0, n - 1), min_size=s, max_size=s, unique=True)
    )
    edges = draw(st.lists(edge, min_size=min_edges, max_size=max_edges))
    return Hypergraph.from_edges(n, edges)


@st.composite
def uniform_hypergraphs(draw, max_n=6, m=2, max_edges=10):
    n = draw(st.integers(m, max_n))
    subsets = list(combinations(range(n), m))
    edges = draw(st.lists(st.sampled_from(subsets), min_size=1, max_size=max_edges, unique=True))
    return Hypergraph.from_edges(n, edges)
