"""Finite hypergraphs with an optional point embedding."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from hypercolor import geometry
from hypercolor.errors import ConstructionError, InputError
from hypercolor.geometry import L2, NormSpec, Point

log = logging.getLogger(__name__)

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Vertices ``0..n-1``, edges as sorted index tuples.

    The plain constructor keeps ``edges`` as given (after sorting each one)
    so that :func:`validate` can inspect raw data; use :meth:`from_edges`
    for a normalised, checked value.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    embedding: tuple[Point, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        if self.embedding is not None:
            object.__setattr__(self, "embedding", tuple(tuple(float(c) for c in p) for p in self.embedding))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Iterable[int]],
        embedding: Sequence[Sequence[float]] | None = None,
    ) -> "Hypergraph":
        seen: dict[Edge, None] = {}
        for e in edges:
            seen.setdefault(tuple(sorted(e)), None)
        H = cls(n, tuple(seen), None if embedding is None else geometry.as_points(embedding))
        problems = validate(H)
        if problems:
            raise InputError("; ".join(problems))
        return H

    @property
    def dimension(self) -> int | None:
        if not self.embedding:
            return None
        return len(self.embedding[0])

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edge_sizes(self) -> set[int]:
        return {len(e) for e in self.edges}

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def canonical(self) -> tuple[int, frozenset[Edge]]:
        """Structure-only key: vertex count and edge set."""
        return self.n, frozenset(self.edges)


@dataclass(frozen=True)
class Coloring:
    """Total vertex colouring with colours in ``1..m``."""

    colors: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.m < 1:
            raise InputError("a coloring needs m >= 1")
        bad = [c for c in self.colors if not 1 <= c <= self.m]
        if bad:
            raise InputError(f"colors {sorted(set(bad))} outside 1..{self.m}")

    @classmethod
    def of(cls, colors: Sequence[int]) -> "Coloring":
        return cls(tuple(colors), max(colors, default=1))

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def used(self) -> int:
        return len(set(self.colors))


@dataclass(frozen=True)
class Restriction:
    """An induced subhypergraph plus ``index_map[new] = old``."""

    hypergraph: Hypergraph
    index_map: tuple[int, ...]

    def pull_back(self, phi: Coloring) -> Coloring:
        """Restrict a colouring of the parent to this subhypergraph."""
        return Coloring(tuple(phi[v] for v in self.index_map), phi.m)


def validate(H: Hypergraph) -> list[str]:
    problems: list[str] = []
    if H.n < 0:
        problems.append(f"negative vertex count {H.n}")
    seen: set[Edge] = set()
    for k, e in enumerate(H.edges):
        if len(e) < 2:
            problems.append(f"edge {k} {list(e)}: edge size < 2")
        if len(set(e)) != len(e):
            problems.append(f"edge {k} {list(e)}: repeated vertex")
        out = [v for v in e if not 0 <= v < H.n]
        if out:
            problems.append(f"edge {k} {list(e)}: index out of range {out}")
        if e in seen:
            problems.append(f"edge {k} {list(e)}: duplicate edge")
        seen.add(e)
    if H.embedding is not None:
        if len(H.embedding) != H.n:
            problems.append(f"embedding length {len(H.embedding)} != n = {H.n}")
        if len({len(p) for p in H.embedding}) > 1:
            problems.append("embedding has mixed dimensions")
    return problems


def is_uniform(H: Hypergraph, m: int) -> bool:
    return all(len(e) == m for e in H.edges)


def uniformity(H: Hypergraph) -> int | None:
    """The common edge size, or None if edges differ in size or there are none."""
    sizes = H.edge_sizes()
    return sizes.pop() if len(sizes) == 1 else None


def induced(H: Hypergraph, U: Iterable[int]) -> Restriction:
    keep = sorted(set(U))
    if len(keep) < 2:
        raise InputError("an induced subhypergraph needs at least 2 vertices")
    if keep[0] < 0 or keep[-1] >= H.n:
        raise InputError(f"vertex index out of range 0..{H.n - 1}")
    new = {old: i for i, old in enumerate(keep)}
    edges = tuple(tuple(new[v] for v in e) for e in H.edges if all(v in new for v in e))
    emb = None if H.embedding is None else tuple(H.embedding[v] for v in keep)
    return Restriction(Hypergraph(len(keep), edges, emb), tuple(keep))


def axis_offsets(H: Hypergraph, k: int, norm: NormSpec = L2) -> list[Point]:
    """Default translation rule: copy ``i`` shifted by ``i*(D+1)`` along axis 0."""
    d = H.dimension
    if d is None:
        return []
    step = geometry.diameter(H.embedding, norm) + 1.0
    return [(i * step,) + (0.0,) * (d - 1) for i in range(k)]


@dataclass(frozen=True)
class Translates:
    """``k`` translated copies of one hypergraph.

    ``copies[i]`` uses local indices ``0..n-1``; ``combined`` is their
    disjoint union with copy ``i`` on ``[i*n, (i+1)*n)`` and
    ``copy_map[v] = (i, original vertex)``.
    """

    copies: tuple[Hypergraph, ...]
    combined: Hypergraph
    copy_map: tuple[tuple[int, int], ...]
    offsets: tuple[Point, ...] = field(default=())

    def vertex_range(self, i: int) -> range:
        n = self.copies[i].n
        return range(i * n, (i + 1) * n)

    def global_edges(self, i: int) -> tuple[Edge, ...]:
        base = i * self.copies[i].n
        return tuple(tuple(v + base for v in e) for e in self.copies[i].edges)


def disjoint_translates(
    H: Hypergraph,
    k: int,
    offsets: Sequence[Sequence[float]] | None = None,
    norm: NormSpec = L2,
    tol: float = geometry.DEFAULT_TOL,
) -> Translates:
    """``k`` vertex-disjoint copies of H.

    Embedded copies are shifted by ``offsets`` (default :func:`axis_offsets`);
    points that coincide across copies raise :class:`ConstructionError`.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    n = H.n
    offs: list[Point] = []
    if H.embedding is not None:
        offs = [geometry.as_point(o) for o in offsets] if offsets is not None else axis_offsets(H, k, norm)
        if len(offs) != k:
            raise InputError(f"need {k} offsets, got {len(offs)}")
    copies = tuple(
        Hypergraph(n, H.edges, None if H.embedding is None else geometry.translate(H.embedding, offs[i]))
        for i in range(k)
    )
    emb = None
    if H.embedding is not None:
        emb = tuple(p for c in copies for p in c.embedding)
        if k > 1:
            _check_disjoint(emb, n, tol)
    edges = tuple(tuple(v + i * n for v in e) for i in range(k) for e in H.edges)
    combined = Hypergraph(n * k, edges, emb)
    copy_map = tuple((i, v) for i in range(k) for v in range(n))
    return Translates(copies, combined, copy_map, tuple(offs))


def _check_disjoint(pts: Sequence[Point], n: int, tol: float) -> None:
    # bucket by rounded coordinates; neighbours within tol share or abut a bucket
    cell = max(tol * 4, 1e-12)
    buckets: dict[tuple[int, ...], list[int]] = {}
    for idx, p in enumerate(pts):
        key = tuple(math.floor(c / cell) for c in p)
        buckets.setdefault(key, []).append(idx)
    for idx, p in enumerate(pts):
        base = tuple(math.floor(c / cell) for c in p)
        for key in _neighbour_keys(base):
            for jdx in buckets.get(key, ()):
                if jdx // n != idx // n and max(abs(a - b) for a, b in zip(p, pts[jdx])) <= tol:
                    raise ConstructionError(
                        f"translates overlap: copy {idx // n} vertex {idx % n} meets copy {jdx // n} vertex {jdx % n}"
                    )


def _neighbour_keys(base: tuple[int, ...]):
    for delta in product((-1, 0, 1), repeat=len(base)):
        yield tuple(b + d for b, d in zip(base, delta))


def union(parts: Sequence[Hypergraph]) -> Hypergraph:
    """Merge hypergraphs that share one vertex range (edges concatenated)."""
    if not parts:
        raise InputError("nothing to merge")
    n = parts[0].n
    if any(p.n != n for p in parts):
        raise InputError("all parts must share the vertex count")
    return Hypergraph.from_edges(n, (e for p in parts for e in p.edges))


def complete_graph(n: int) -> Hypergraph:
    return Hypergraph.from_edges(n, combinations(range(n), 2))


def fano_plane() -> Hypergraph:
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return Hypergraph.from_edges(7, lines)


def unit_distance_graph(
    points: Sequence[Sequence[float]],
    norm: NormSpec = L2,
    tol: float = geometry.DEFAULT_TOL,
) -> Hypergraph:
    pts = geometry.as_points(points)
    return Hypergraph.from_edges(len(pts), geometry.unit_distance_pairs(pts, norm, tol), pts)


def to_mapping(H: Hypergraph) -> dict:
    return {
        "d": H.dimension,
        "vertices": None if H.embedding is None else [list(p) for p in H.embedding],
        "edges": [list(e) for e in H.edges],
    }


def from_mapping(data: Mapping, n: int | None = None) -> Hypergraph:
    """Inverse of :func:`to_mapping`; duplicate edges are merged with a warning."""
    verts = data.get("vertices")
    edges = [tuple(int(v) for v in e) for e in data.get("edges", [])]
    if verts is not None:
        n_v = len(verts)
        if n is not None and n != n_v:
            raise InputError(f"n = {n} but {n_v} vertices given")
        n = n_v
        d = data.get("d")
        if d is not None and any(len(p) != d for p in verts):
            raise InputError(f"vertices do not all have d = {d} coordinates")
    elif n is None:
        n = data.get("n")
        if n is None:
            n = 1 + max((v for e in edges for v in e), default=-1)
    raw = Hypergraph(int(n), tuple(edges), None if verts is None else geometry.as_points(verts))
    problems = [p for p in validate(raw) if "duplicate edge" not in p]
    if problems:
        raise InputError("; ".join(problems))
    if len(set(raw.edges)) != len(raw.edges):
        log.warning("merged %d duplicate edges", len(raw.edges) - len(set(raw.edges)))
    return Hypergraph.from_edges(raw.n, raw.edges, raw.embedding)
