import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercolor import geomfam
from hypercolor.chroma import chromatic_number, is_k_colorable
from hypercolor.errors import InputError, ResourceError
from hypercolor.geomfam import (
    EUCLIDEAN,
    TRANSLATION,
    GonSet,
    augment_chain,
    augment_gons,
    augment_t,
    gm_hypergraph,
    instantiate,
    product_coloring,
    unit_gon,
    witness_search,
)
from hypercolor.geometry import L1, L2, LINF
from hypercolor.hypergraph import Hypergraph, complete_graph
from hypercolor.pointsets import integer_grid, moser_spindle
from hypercolor.tiling import tiling_params

from oracles import brute_chi, brute_congruent, brute_unit_pairs, hypergraphs, random_hypergraph

MOSER_PAIRS = [(0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (3, 6), (4, 5), (4, 6), (5, 6)]


def test_gonset_checks():
    with pytest.raises(InputError):
        GonSet.of([[(0, 0), (1, 0)], [(0, 0), (1, 0), (2, 0)]])
    with pytest.raises(InputError):
        GonSet.of([[(0, 0), (0, 0)]])
    with pytest.raises(InputError):
        GonSet.of([])
    assert len(GonSet.of([[(0, 0), (1, 0)], [(1, 0), (0, 0)]])) == 1
    assert GonSet.of([], m=3, d=2).m == 3


def test_instantiate_unit_gon_gives_unit_distance_graph():
    P = moser_spindle()
    H = instantiate(unit_gon(), P)
    assert list(H.edges) == MOSER_PAIRS
    assert chromatic_number(H).k == 4


def test_instantiate_grid():
    H = instantiate(unit_gon(), integer_grid(3, 3))
    assert len(H.edges) == 12
    assert chromatic_number(H).k == 2


def test_instantiate_triangles():
    M = GonSet.of([[(0, 0), (1, 0), (0, 1)]])
    H = instantiate(M, integer_grid(3, 3))
    # every unit square contributes its 4 right-isosceles corner triangles
    assert len(H.edges) == 16
    Ht = instantiate(M, integer_grid(3, 3), mode=TRANSLATION)
    assert len(Ht.edges) == 4


def test_instantiate_errors():
    M = unit_gon()
    with pytest.raises(InputError):
        instantiate(M, [(0, 0)], mode="bogus")
    with pytest.raises(InputError):
        instantiate(M, [(0, 0)], norm=L1)
    with pytest.raises(InputError):
        instantiate(M, [(0, 0, 0), (1, 0, 0)])
    big = GonSet.of([[(0, 0), (1, 0), (0, 1)]])
    with pytest.raises(ResourceError):
        instantiate(big, integer_grid(10, 10), subset_cap=1000)


def _brute_instantiate(M, F, tol=1e-9):
    edges = []
    for idx in combinations(range(len(F)), M.m):
        sub = [F[i] for i in idx]
        if any(brute_congruent(sub, g, tol) for g in M.gons):
            edges.append(idx)
    return edges


def test_instantiate_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(25):
        F = [tuple(map(float, p)) for p in {tuple(rng.integers(0, 4, size=2)) for _ in range(7)}]
        g = [tuple(map(float, p)) for p in rng.integers(0, 3, size=(3, 2))]
        if len(set(g)) < 3:
            continue
        M = GonSet.of([g])
        assert list(instantiate(M, F).edges) == _brute_instantiate(M, F)


def test_gm_moser():
    P = moser_spindle()
    G2 = gm_hypergraph(P, L2, 2)
    assert list(G2.edges) == MOSER_PAIRS
    G3 = gm_hypergraph(P, L2, 3)
    brute = [s for s in combinations(range(7), 3) if any(set(p) <= set(s) for p in brute_unit_pairs(P))]
    assert list(G3.edges) == brute
    # the spindle has no independent 3-set, so every triple qualifies
    assert len(G3.edges) == 35
    assert chromatic_number(G3).k == 4


def test_gm_errors():
    with pytest.raises(InputError):
        gm_hypergraph(moser_spindle(), m=1)
    with pytest.raises(InputError):
        gm_hypergraph([(0, 0), (1, 0)], m=3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=8, unique=True))
def test_gm_chi_does_not_grow_with_m(pts):
    pts = [tuple(map(float, p)) for p in pts]
    chis = [chromatic_number(gm_hypergraph(pts, LINF, m)).k for m in (2, 3)]
    assert chis[1] <= chis[0]


def test_augment_t_k3_example():
    H0 = Hypergraph.from_edges(4, [(0, 1), (0, 2), (1, 2)])
    H1 = augment_t(H0, 1)
    # 3 edges x 2 outside vertices = 6 generated sets, 4 of them distinct
    assert H1.edges == ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
    rep = augment_chain(H0, 1)
    assert rep.chi == (3, 2)
    assert rep.non_increasing


def test_augment_t_errors(k3):
    with pytest.raises(InputError):
        augment_t(k3, -1)
    with pytest.raises(InputError):
        augment_t(k3, 2)
    assert augment_t(k3, 0) is k3


def test_augment_chain_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        H0 = random_hypergraph(rng, n_max=7, sizes=(2, 3), n_min=5)
        t = int(rng.integers(1, 3))
        if H0.edges and max(len(e) for e in H0.edges) + t > H0.n:
            continue
        rep = augment_chain(H0, t)
        assert rep.non_increasing
        for H, chi in zip(rep.hypergraphs, rep.chi):
            assert brute_chi(H.n, H.edges) == chi


def test_augment_gons():
    M = unit_gon()
    S = GonSet.of([], m=3, d=2)
    out = augment_gons(S, M, [(5.0, 0.0), (5.0, 1.0)])
    assert len(out) == 2 and out.m == 3
    assert all(((0.0, 0.0) in g and (1.0, 0.0) in g) for g in out)
    # z on top of a gon point gets moved clear
    moved = augment_gons(S, M, [(0.0, 0.0)])
    assert all(len(set(g)) == 3 for g in moved)
    with pytest.raises(InputError):
        augment_gons(GonSet.of([], m=4, d=2), M, [(5.0, 0.0)])


def test_product_coloring_forbids_both_distances():
    rng = np.random.default_rng(0)
    phi1 = tiling_params(L2, 2)
    phi2 = tiling_params(L2, 2, forbidden=2.0)
    psi = product_coloring([phi1, phi2])
    colours = set()
    for length in (1.0, 2.0):
        for _ in range(3000):
            x = rng.random(2) * 20
            th = rng.uniform(0, 2 * math.pi)
            y = x + length * np.array([math.cos(th), math.sin(th)])
            cx, cy = psi(x), psi(y)
            colours.update([cx, cy])
            assert cx != cy
    assert len(colours) <= phi1.n_colors * phi2.n_colors == 81
    with pytest.raises(InputError):
        product_coloring([])


def test_witness_library():
    w = witness_search(unit_gon(), 3)
    assert w is not None and w.source == "unit-simplex"
    w4 = witness_search(unit_gon(), 4)
    assert w4 is not None and w4.source == "moser-spindle"
    assert w4.recheck()
    assert is_k_colorable(w4.hypergraph, 3) is None


def test_witness_random_augment():
    w = witness_search(unit_gon(), 4, "random-augment", budget=300, seed=0)
    assert w is not None
    assert is_k_colorable(w.hypergraph, 3) is None
    assert w.hypergraph == instantiate(unit_gon(), w.points)


def test_witness_lattice_gives_up_for_four():
    # the triangular lattice is 3-colourable, so no window there needs 4 colours
    assert witness_search(unit_gon(), 4, "lattice", budget=10) is None


def test_witness_errors():
    with pytest.raises(InputError):
        witness_search(unit_gon(), 3, "nope")
    with pytest.raises(InputError):
        witness_search(unit_gon(), 1)
