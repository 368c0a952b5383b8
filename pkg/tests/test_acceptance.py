"""Acceptance criteria, one test each, with their runtime bounds.

Each test appends a PASS/FAIL line that conftest prints in the terminal summary.
"""

import math
import time
from contextlib import contextmanager
from itertools import combinations

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from hypercolor.chroma import chromatic_number, is_k_colorable, is_proper
from hypercolor.geomfam import augment_chain, gm_hypergraph, product_coloring
from hypercolor.geometry import L1, L2, LINF, NormSpec, congruent_euclidean, unit_distance_pairs
from hypercolor.hypergraph import complete_graph, is_uniform, unit_distance_graph
from hypercolor.lift import iterated_lift, lift, lifted_edge_count
from hypercolor.pointsets import moser_spindle
from hypercolor.tiling import (
    PeriodicColoring,
    color_index,
    observed_colors,
    sample_pairs,
    tiling_params,
    verify_forbids,
)

from oracles import brute_chi, brute_congruent, brute_unit_pairs, random_hypergraph, random_uniform

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number: int, title: str, limit: float):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        dt = time.perf_counter() - t0
        ACCEPTANCE_LINES.append(f"FAIL  {number:>2}. {title} ({dt:.2f}s): {type(exc).__name__}: {exc}")
        raise
    dt = time.perf_counter() - t0
    if dt >= limit:
        ACCEPTANCE_LINES.append(f"FAIL  {number:>2}. {title} ({dt:.2f}s, limit {limit:g}s)")
        pytest.fail(f"took {dt:.2f}s, limit {limit:g}s")
    ACCEPTANCE_LINES.append(f"PASS  {number:>2}. {title} ({dt:.2f}s, limit {limit:g}s)")


def test_01_solver_matches_brute_force():
    with criterion(1, "exact solver equals brute force on 200 random hypergraphs", 60):
        rng = np.random.default_rng(1)
        for _ in range(200):
            H = random_hypergraph(rng, n_max=8, sizes=(2, 3, 4))
            assert chromatic_number(H).k == brute_chi(H.n, H.edges), H


def test_02_moser_spindle():
    with criterion(2, "Moser spindle: 7 points, 11 unit pairs, chi = 4", 1):
        P = moser_spindle()
        assert len(P) == 7
        pairs = unit_distance_pairs(P, L2, 1e-9)
        assert len(pairs) == 11 and pairs == brute_unit_pairs(P)
        k, phi = chromatic_number(unit_distance_graph(P))
        assert k == 4 and is_proper(unit_distance_graph(P), phi)


def test_03_lift_k2():
    with criterion(3, "lift of K2: 4 vertices, edges {a1,b1,a2},{a1,b1,b2}, chi = 2", 1):
        res = lift(complete_graph(2))
        L = res.lifted
        assert L.n == 4 and is_uniform(L, 3)
        # copy 1 is (a1, b1) = (0, 1), copy 2 is (a2, b2) = (2, 3)
        assert set(L.edges) == {(0, 1, 2), (0, 1, 3)}
        assert chromatic_number(L).k == 2


def test_04_lift_moser():
    with criterion(4, "lift of Moser spindle: 28 vertices, 462 edges, not 3-colourable, 4-colourable", 120):
        H = unit_distance_graph(moser_spindle())
        L = lift(H).lifted
        assert L.n == 28 and len(L.edges) == 462 == 11 * 7 * 6
        assert is_uniform(L, 3)
        assert is_k_colorable(L, 3) is None
        phi = is_k_colorable(L, 4)
        assert phi is not None and is_proper(L, phi)


def test_05_k3_chain():
    with criterion(5, "K3 chain to 4-uniform: (3,3) -> (9,27) -> (27,729), chi = 3 throughout", 300):
        H = complete_graph(3)
        chain = iterated_lift(H, 4)
        sizes = [(H.n, len(H.edges))] + [(r.lifted.n, len(r.lifted.edges)) for r in chain]
        assert sizes == [(3, 3), (9, 27), (27, 729)]
        prev = H
        for r in chain:
            assert len(r.lifted.edges) == lifted_edge_count(prev.n, len(prev.edges), 3)
            assert chromatic_number(r.lifted).k == 3
            prev = r.lifted


def test_06_lift_preserves_chi():
    with criterion(6, "chi(lift(H)) = chi(H) on 50 random uniform hypergraphs", 600):
        rng = np.random.default_rng(6)
        for i in range(50):
            m = 2 if i % 2 == 0 else 3
            H = random_uniform(rng, n_max=7, m=m)
            chi = chromatic_number(H).k
            assert chi == brute_chi(H.n, H.edges)
            assert chromatic_number(lift(H, chi).lifted).k == chi, H


def test_07_tiling_l2_plane():
    with criterion(7, "L2 plane tiling: m = 3, 9 colours, 0 violations; eps = 0.9 is caught", 10):
        pc = tiling_params(L2, 2)
        assert pc.m == 3 and pc.n_colors == 9 and observed_colors(pc) == 9
        rep = verify_forbids(pc, 100_000, seed=0)
        assert rep.pairs_checked == 100_000 and rep.violations == 0
        broken = PeriodicColoring(L2, 2, 0.9, 3)
        assert verify_forbids(broken, 100_000, seed=0).violations > 0


def test_08_tiling_all_norms():
    with criterion(8, "tilings for L1, L2, L3, Linf x d = 1..4: 0 violations, m^d colours", 120):
        for norm in (L1, L2, NormSpec(3.0), LINF):
            for d in (1, 2, 3, 4):
                pc = tiling_params(norm, d)
                rep = verify_forbids(pc, 100_000, seed=d)
                assert rep.violations == 0, (norm.name, d)
                assert rep.pairs_checked >= 99_000
                assert observed_colors(pc) == pc.m**d == rep.colors


def test_09_product_coloring():
    with criterion(9, "product of tilings forbidding 1 and 2: 0 violations, <= 81 colours", 30):
        t1 = tiling_params(L2, 2, forbidden=1.0)
        t2 = tiling_params(L2, 2, forbidden=2.0)
        psi = product_coloring([t1, t2])
        rng = np.random.default_rng(9)
        colours = set()
        for length in (1.0, 2.0):
            X, Y = sample_pairs(L2, 2, 100_000, rng, box=t1.period * t2.period, length=length)
            assert len(X) == 100_000
            # vectorised colours, spot-checked against psi itself
            cx = np.stack([color_index(t1, X), color_index(t2, X)], 1)
            cy = np.stack([color_index(t1, Y), color_index(t2, Y)], 1)
            assert not (cx == cy).all(axis=1).any()
            for j in range(0, 100_000, 97):
                assert psi(X[j]) != psi(Y[j])
            colours.update(map(tuple, cx))
            colours.update(map(tuple, cy))
        assert len(colours) <= t1.n_colors * t2.n_colors == 81


def test_10_gm_moser():
    with criterion(10, "G_m on Moser spindle matches brute force for m = 2, 3; chi(G_3) <= 4", 30):
        P = moser_spindle()
        pairs = brute_unit_pairs(P)
        for m in (2, 3):
            brute = [s for s in combinations(range(7), m) if any(set(p) <= set(s) for p in pairs)]
            assert list(gm_hypergraph(P, L2, m).edges) == brute
        chi_ud = chromatic_number(unit_distance_graph(P)).k
        assert chi_ud == 4
        assert chromatic_number(gm_hypergraph(P, L2, 3)).k <= chi_ud


def test_11_augment_chain():
    with criterion(11, "augmentation chains are non-increasing on 30 random H0, t = 1, 2", 300):
        rng = np.random.default_rng(11)
        done = 0
        while done < 30:
            H0 = random_hypergraph(rng, n_max=8, sizes=(2, 3), n_min=5)
            if not H0.edges:
                continue
            t = 1 + done % 2
            if max(len(e) for e in H0.edges) + t > H0.n:
                continue
            rep = augment_chain(H0, t)
            assert all(a >= b for a, b in zip(rep.chi, rep.chi[1:])), rep.chi
            assert rep.chi[-1] <= rep.chi[0]
            done += 1


def _pair(rng, kind):
    n = int(rng.integers(1, 6))
    X = rng.integers(-3, 4, size=(n, 2)).astype(float)
    if kind == "rotated":
        th = rng.uniform(0, 2 * math.pi)
        R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        Y = X @ R.T + rng.normal(size=2)
    elif kind == "reflected":
        Y = X * np.array([-1.0, 1.0]) + rng.normal(size=2)
    elif kind == "perturbed":
        Y = X.copy()
        Y[rng.integers(n)] += 0.25
    else:
        Y = rng.integers(-3, 4, size=(n, 2)).astype(float)
    return X.tolist(), Y[rng.permutation(n)].tolist()


def test_12_congruence():
    with criterion(12, "congruence agrees with factorial brute force on 100 pairs", 10):
        rng = np.random.default_rng(12)
        kinds = ["rotated", "reflected", "perturbed", "random"]
        verdicts = []
        for i in range(100):
            X, Y = _pair(rng, kinds[i % 4])
            ours = congruent_euclidean(X, Y, 1e-9) is not None
            assert ours == brute_congruent(X, Y, 1e-9), (X, Y)
            verdicts.append(ours)
        assert any(verdicts) and not all(verdicts)
