"""Proper-colouring checks and an exact branch-and-bound colouring solver."""

from __future__ import annotations

import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from hypercolor.errors import BudgetExhausted, InputError
from hypercolor.hypergraph import Coloring, Edge, Hypergraph

DEFAULT_NODE_BUDGET = 10**9
BUDGET_ENV = "HYPERCOLOR_NODE_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise InputError(f"{BUDGET_ENV}={raw!r} is not a number") from None


@dataclass(frozen=True)
class ProperCheck:
    ok: bool
    edge: Edge | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_proper(H: Hypergraph, phi: Coloring | Sequence[int]) -> ProperCheck:
    """Truthy iff no edge is monochromatic; otherwise carries the first such edge."""
    colors = phi.colors if isinstance(phi, Coloring) else tuple(phi)
    if len(colors) != H.n:
        raise InputError(f"coloring covers {len(colors)} of {H.n} vertices")
    for e in H.edges:
        c = colors[e[0]]
        if all(colors[v] == c for v in e):
            return ProperCheck(False, e)
    return ProperCheck(True)


@dataclass
class SolverStats:
    nodes: int = 0
    seconds: float = 0.0
    calls: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "seconds": round(self.seconds, 6), "calls": self.calls}


def degree_order(H: Hypergraph) -> list[int]:
    deg = H.degrees()
    return sorted(range(H.n), key=lambda v: (-deg[v], v))


def greedy_coloring(H: Hypergraph, order: Sequence[int] | None = None) -> Coloring:
    """First-fit colouring: each vertex takes the least colour that keeps
    every already fully coloured edge non-monochromatic."""
    if order is None:
        order = degree_order(H)
    if sorted(order) != list(range(H.n)):
        raise InputError("order must be a permutation of the vertices")
    inc: list[list[Edge]] = [[] for _ in range(H.n)]
    for e in H.edges:
        for v in e:
            inc[v].append(e)
    colors = [0] * H.n
    for v in order:
        banned = set()
        for e in inc[v]:
            others = [colors[u] for u in e if u != v]
            if others[0] and all(c == others[0] for c in others):
                banned.add(others[0])
        c = 1
        while c in banned:
            c += 1
        colors[v] = c
    return Coloring(tuple(colors), max(colors, default=1)) if H.n else Coloring((), 1)


def greedy_upper_bound(H: Hypergraph, order: Sequence[int] | None = None) -> int:
    return greedy_coloring(H, order).used() if H.n else 1


class _Search:
    """Backtracking k-colouring with forward checking and nogood caching.

    Assigning ``v := c`` scans the edges through ``v``; an edge whose other
    vertices are all coloured ``c`` is a conflict, and one with a single
    uncoloured vertex ``u`` left removes ``c`` from ``u``'s domain.

    Failed subtrees are remembered by their residual problem: the uncoloured
    vertex set and, per colour, the vertices that may still take it plus the
    edges whose coloured part is monochromatic in it with two or more
    vertices left. Nodes whose residual problems agree up to renaming
    colours have the same answer, whatever assignments led there.
    """

    def __init__(
        self,
        H: Hypergraph,
        k: int,
        budget: int,
        symmetry_breaking: bool = True,
        cache_limit: int = 1_000_000,
    ):
        self.n = H.n
        self.k = k
        self.budget = budget
        self.symmetry = symmetry_breaking
        self.cache_limit = cache_limit
        self.emask = [sum(1 << v for v in e) for e in H.edges]
        self.inc: list[list[int]] = [[] for _ in range(H.n)]
        for i, e in enumerate(H.edges):
            for v in e:
                self.inc[v].append(i)
        self.deg = [len(x) for x in self.inc]
        self.nodes = 0
        self.cache_hits = 0

    def run(self, prefix: Sequence[tuple[int, int]] = ()) -> list[int] | None:
        n, k = self.n, self.k
        if n == 0:
            return []
        full = ((1 << (k + 1)) - 1) & ~1  # bits 1..k
        color = [0] * n
        cmask = [0] * (k + 1)
        dom = [full] * n
        trail: list[tuple[int, int]] = []
        emask, inc = self.emask, self.inc
        rank = {v: (-self.deg[v], v) for v in range(n)}
        state = {"colored": 0}
        live: dict[int, int] = {}  # edge -> colour of its monochromatic coloured part
        failed: set = set()

        def refresh(ei: int) -> None:
            colored = emask[ei] & state["colored"]
            if colored:
                c = color[(colored & -colored).bit_length() - 1]
                rest = emask[ei] & ~colored
                if colored & ~cmask[c] == 0 and rest & (rest - 1):
                    live[ei] = c
                    return
            live.pop(ei, None)

        def assign(v: int, c: int) -> bool:
            color[v] = c
            cmask[c] |= 1 << v
            state["colored"] |= 1 << v
            bit = 1 << c
            ok = True
            for ei in inc[v]:
                refresh(ei)
                if not ok:
                    continue
                rest = emask[ei] & ~cmask[c]
                if rest == 0:
                    ok = False
                elif rest & (rest - 1) == 0:
                    u = rest.bit_length() - 1
                    if color[u] == 0 and dom[u] & bit:
                        dom[u] &= ~bit
                        trail.append((u, bit))
                        if dom[u] == 0:
                            ok = False
            return ok

        def unassign(v: int, c: int, mark: int) -> None:
            color[v] = 0
            cmask[c] &= ~(1 << v)
            state["colored"] &= ~(1 << v)
            for ei in inc[v]:
                refresh(ei)
            while len(trail) > mark:
                u, bit = trail.pop()
                dom[u] |= bit

        used = 0
        for v, c in prefix:
            if color[v] or not (dom[v] >> c) & 1 or not assign(v, c):
                return None
            used = max(used, c)

        budget = self.budget
        cache_limit = self.cache_limit

        def residual_key():
            # colours are interchangeable, so the sorted per-colour
            # signatures describe the residual problem completely
            colored = state["colored"]
            free = ~colored
            per: dict[int, list[int]] = {}
            for ei, c in live.items():
                per.setdefault(c, []).append(emask[ei] & free)
            sigs = []
            for c in range(1, k + 1):
                bit = 1 << c
                avail = 0
                for v in range(n):
                    if not color[v] and dom[v] & bit:
                        avail |= 1 << v
                sigs.append((avail, tuple(sorted(per.get(c, ())))))
            sigs.sort()
            return colored, tuple(sigs)

        def solve(used: int, left: int) -> bool:
            if left == 0:
                return True
            cap = ((1 << (used + 2)) - 1) if self.symmetry else -1
            best = -1
            best_key = None
            for v in range(n):
                if color[v]:
                    continue
                d = dom[v] & cap
                if d == 0:
                    return False
                key = (bin(d).count("1"), rank[v])
                if best_key is None or key < best_key:
                    best, best_key = v, key
            if left > 2:
                rkey = residual_key()
                if rkey in failed:
                    self.cache_hits += 1
                    return False
            else:
                rkey = None
            v = best
            d = dom[v] & cap
            c = 1
            while d >> c:
                if (d >> c) & 1:
                    self.nodes += 1
                    if self.nodes > budget:
                        raise BudgetExhausted(f"search exceeded {budget} nodes")
                    mark = len(trail)
                    if assign(v, c) and solve(max(used, c), left - 1):
                        return True
                    unassign(v, c, mark)
                c += 1
            if rkey is not None:
                if len(failed) >= cache_limit:
                    failed.clear()
                failed.add(rkey)
            return False

        left = sum(1 for x in color if x == 0)
        if sys.getrecursionlimit() < left + 200:
            sys.setrecursionlimit(left + 200)
        if solve(used, left):
            return list(color)
        return None


def _split_prefixes(H: Hypergraph, k: int, want: int) -> list[tuple[tuple[int, int], ...]]:
    """Symmetry-reduced assignments of the top-degree vertices, enough to
    give roughly ``want`` independent subproblems."""
    order = degree_order(H)
    prefixes: list[tuple[tuple[int, int], ...]] = [()]
    for v in order:
        if len(prefixes) >= want:
            break
        nxt = []
        for p in prefixes:
            used = max((c for _, c in p), default=0)
            for c in range(1, min(k, used + 1) + 1):
                nxt.append(p + ((v, c),))
        prefixes = nxt
    return prefixes


def _solve_prefix(args) -> tuple[list[int] | None, int]:
    H, k, budget, symmetry, prefix = args
    s = _Search(H, k, budget, symmetry)
    return s.run(prefix), s.nodes


def is_k_colorable(
    H: Hypergraph,
    k: int,
    *,
    node_budget: int | None = None,
    symmetry_breaking: bool = True,
    threads: int = 1,
    stats: SolverStats | None = None,
) -> Coloring | None:
    """A proper colouring with at most ``k`` colours, or None if none exists.

    The search is exhaustive. With ``threads > 1`` independent subtrees run
    in worker processes; the answer is the same but the witness may differ.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    budget = default_budget() if node_budget is None else node_budget
    t0 = time.perf_counter()
    nodes = 0
    try:
        if threads <= 1 or H.n < 8:
            s = _Search(H, k, budget, symmetry_breaking)
            try:
                result = s.run()
            finally:
                nodes = s.nodes
        else:
            prefixes = _split_prefixes(H, k, 4 * threads)
            result = None
            with ProcessPoolExecutor(max_workers=threads) as pool:
                jobs = [(H, k, budget, symmetry_breaking, p) for p in prefixes]
                for colors, used_nodes in pool.map(_solve_prefix, jobs):
                    nodes += used_nodes
                    if colors is not None and result is None:
                        result = colors
    finally:
        if stats is not None:
            dt = time.perf_counter() - t0
            stats.nodes += nodes
            stats.seconds += dt
            stats.calls.append({"k": k, "nodes": nodes, "seconds": round(dt, 6)})
    if result is None:
        return None
    return Coloring(tuple(result), k) if H.n else Coloring((), k)


@dataclass(frozen=True)
class ChromaticResult:
    k: int
    witness: Coloring
    stats: SolverStats

    def __iter__(self):
        # allows ``k, phi = chromatic_number(H)``
        return iter((self.k, self.witness))


def chromatic_number(
    H: Hypergraph,
    *,
    node_budget: int | None = None,
    symmetry_breaking: bool = True,
    threads: int = 1,
) -> ChromaticResult:
    """Exact chromatic number with a witness colouring.

    Starts from a greedy upper bound and tightens it one colour at a time
    until the solver proves the next value infeasible.
    """
    stats = SolverStats()
    if not H.edges:
        return ChromaticResult(1, Coloring((1,) * H.n, 1), stats)
    best = greedy_coloring(H)
    k = best.used()
    best = _compact(best)
    while k > 2:
        phi = is_k_colorable(
            H, k - 1, node_budget=node_budget, symmetry_breaking=symmetry_breaking, threads=threads, stats=stats
        )
        if phi is None:
            break
        best = _compact(phi)
        k = best.used()
    return ChromaticResult(k, best, stats)


def _compact(phi: Coloring) -> Coloring:
    """Relabel colours to ``1..used`` in order of first appearance."""
    relabel: dict[int, int] = {}
    out = [relabel.setdefault(c, len(relabel) + 1) for c in phi.colors]
    return Coloring(tuple(out), max(len(relabel), 1))

