"""Uniformity-raising lift: an (m+1)-uniform hypergraph with the same chromatic number.

Take ``k = chi(H)`` disjoint translates ``F_1..F_k`` of an m-uniform H. The
lifted edges are ``e | {v}`` for every edge ``e`` of copy ``i`` and every
vertex ``v`` of a later copy ``j > i``. Colouring each copy like H stays
proper, and any colouring with fewer than k colours leaves a monochromatic
edge in every copy, whose colours then exhaust what the last copy can use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from hypercolor import chroma
from hypercolor.errors import ConsistencyError, InputError, ResourceError
from hypercolor.geometry import L2, NormSpec
from hypercolor.hypergraph import Coloring, Hypergraph, disjoint_translates, uniformity

DEFAULT_EDGE_CAP = 10**6


@dataclass(frozen=True)
class LiftResult:
    lifted: Hypergraph
    k: int
    # copy_map[v] = (copy index 1..k, original vertex)
    copy_map: tuple[tuple[int, int], ...]
    source: Hypergraph

    @property
    def m(self) -> int:
        """Uniformity of the source."""
        return len(self.source.edges[0])

    @property
    def expected_edges(self) -> int:
        return lifted_edge_count(self.source.n, len(self.source.edges), self.k)


def lifted_edge_count(n: int, n_edges: int, k: int) -> int:
    return n_edges * n * k * (k - 1) // 2


def _arity(H: Hypergraph) -> int:
    m = uniformity(H)
    if m is None:
        if not H.edges:
            raise InputError("cannot lift a hypergraph without edges")
        raise InputError(f"hypergraph is not uniform (edge sizes {sorted(H.edge_sizes())})")
    return m


def lift(
    H: Hypergraph,
    k: int | None = None,
    *,
    verify: bool = False,
    edge_cap: int = DEFAULT_EDGE_CAP,
    offsets: Sequence[Sequence[float]] | None = None,
    norm: NormSpec = L2,
    node_budget: int | None = None,
) -> LiftResult:
    """Lift H with ``k`` translates (``k`` defaults to the exact chi(H)).

    ``verify`` recomputes chi(H) and raises :class:`ConsistencyError` if a
    supplied ``k`` disagrees. Edges come out in a fixed order: copy ``i``
    ascending, then H's stored edge order, then attachment vertex ascending.
    """
    _arity(H)
    if k is None:
        k = chroma.chromatic_number(H, node_budget=node_budget).k
    elif verify:
        chi = chroma.chromatic_number(H, node_budget=node_budget).k
        if chi != k:
            raise ConsistencyError(f"supplied k = {k} but chi(H) = {chi}")
    if k < 1:
        raise InputError("k must be >= 1")
    n = H.n
    total = lifted_edge_count(n, len(H.edges), k)
    if total > edge_cap:
        raise ResourceError(f"lift would have {total} edges, over the cap of {edge_cap}")

    tr = disjoint_translates(H, k, offsets=offsets, norm=norm)
    edges = []
    for i in range(k):
        tail = range((i + 1) * n, k * n)
        for e in tr.global_edges(i):
            for v in tail:
                edges.append(e + (v,))
    lifted = Hypergraph(k * n, tuple(edges), tr.combined.embedding)
    copy_map = tuple((i + 1, v) for i, v in tr.copy_map)
    return LiftResult(lifted, k, copy_map, H)


def iterated_lift(
    H: Hypergraph,
    target_m: int,
    *,
    edge_cap: int = DEFAULT_EDGE_CAP,
    node_budget: int | None = None,
    k: int | None = None,
) -> list[LiftResult]:
    """Lift repeatedly until edges have ``target_m`` vertices.

    chi is computed once on H and reused at every stage, since each lift
    preserves it. Hitting ``edge_cap`` raises :class:`ResourceError` whose
    ``partial`` holds the stages built so far.
    """
    m0 = _arity(H)
    if target_m < m0:
        raise InputError(f"target_m = {target_m} is below the current uniformity {m0}")
    if k is None and target_m > m0:
        k = chroma.chromatic_number(H, node_budget=node_budget).k
    chain: list[LiftResult] = []
    cur = H
    for _ in range(target_m - m0):
        try:
            res = lift(cur, k, edge_cap=edge_cap)
        except ResourceError as exc:
            raise ResourceError(str(exc), partial=chain) from exc
        chain.append(res)
        cur = res.lifted
    return chain


def extend_coloring(phi: Coloring, result: LiftResult) -> Coloring:
    """Colour every lifted vertex ``(i, v)`` with ``phi(v)``; phi must be proper."""
    check = chroma.is_proper(result.source, phi)
    if not check:
        raise InputError(f"coloring is not proper for the source: edge {list(check.edge)} is monochromatic")
    return Coloring(tuple(phi[v] for _, v in result.copy_map), phi.m)
