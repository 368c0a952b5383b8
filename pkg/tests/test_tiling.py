import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercolor.errors import InputError
from hypercolor.geometry import L1, L2, LINF, NormSpec
from hypercolor.tiling import (
    PeriodicColoring,
    color_point,
    equivalence_constants,
    observed_colors,
    tiling_params,
    verify_forbids,
)

NORMS = [L1, L2, NormSpec(3.0), LINF]


@pytest.mark.parametrize(
    "norm,d,C",
    [(L2, 2, math.sqrt(2)), (L1, 3, 3.0), (LINF, 4, 1.0), (NormSpec(3.0), 2, 2 ** (1 / 3))],
)
def test_equivalence_constants(norm, d, C):
    c, CC = equivalence_constants(norm, d)
    assert c == 1.0 and CC == pytest.approx(C)


def test_sampled_constant_close_to_bound():
    # the upper constant is attained along the diagonal, so sampling gets close
    rng = np.random.default_rng(0)
    U = rng.normal(size=(200_000, 2))
    ratio = np.linalg.norm(U, axis=1) / np.abs(U).max(axis=1)
    assert math.sqrt(2) - 1e-3 < ratio.max() <= math.sqrt(2) + 1e-12


@pytest.mark.parametrize(
    "norm,d,m",
    [(L2, 2, 3), (L1, 2, 4), (LINF, 1, 3), (LINF, 3, 3), (L2, 3, 3), (L1, 4, 6)],
)
def test_params(norm, d, m):
    pc = tiling_params(norm, d)
    assert pc.m == m
    assert pc.is_valid()
    # m is the least valid modulus
    assert not PeriodicColoring(norm, d, pc.eps, pc.m - 1).is_valid()


def test_params_reject_bad_safety():
    with pytest.raises(InputError):
        tiling_params(L2, 2, safety=1.0)
    with pytest.raises(InputError):
        PeriodicColoring(L2, 2, 0.0, 3)


def test_color_point_examples():
    pc = PeriodicColoring(L2, 2, 0.5, 3)
    assert color_point(pc, (0.0, 0.0)) == (0, 0)
    assert color_point(pc, (0.49, 1.2)) == (0, 2)
    assert color_point(pc, (-0.1, 1.5)) == (2, 0)
    with pytest.raises(InputError):
        color_point(pc, (0.0,))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(NORMS), st.integers(1, 4), st.data())
def test_same_cell_same_colour(norm, d, data):
    pc = tiling_params(norm, d)
    cell = data.draw(st.lists(st.integers(-50, 50), min_size=d, max_size=d))
    fr = data.draw(st.lists(st.floats(0.01, 0.99), min_size=2 * d, max_size=2 * d))
    x = [(c + f) * pc.eps for c, f in zip(cell, fr[:d])]
    y = [(c + f) * pc.eps for c, f in zip(cell, fr[d:])]
    assert pc(x) == pc(y)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(NORMS), st.integers(1, 4), st.data())
def test_periodic(norm, d, data):
    pc = tiling_params(norm, d)
    x = data.draw(st.lists(st.floats(-100, 100), min_size=d, max_size=d))
    j = data.draw(st.integers(0, d - 1))
    k = data.draw(st.integers(-5, 5))
    y = list(x)
    y[j] += k * pc.m * pc.eps
    # stay clear of cell boundaries where rounding could flip a floor
    frac = (x[j] / pc.eps) % 1
    if 1e-6 < frac < 1 - 1e-6:
        assert pc(x) == pc(y)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(NORMS), st.integers(1, 4), st.data())
def test_unit_pairs_never_share_a_colour(norm, d, data):
    pc = tiling_params(norm, d)
    x = np.array(data.draw(st.lists(st.floats(-20, 20), min_size=d, max_size=d)))
    u = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=d, max_size=d)))
    n = norm(u)
    if n < 1e-3:
        return
    y = x + u / n
    assert pc(x) != pc(y)


@pytest.mark.parametrize("norm", NORMS, ids=lambda n: n.name)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_verify_forbids_clean(norm, d):
    pc = tiling_params(norm, d)
    rep = verify_forbids(pc, 20_000, seed=1)
    assert rep.violations == 0
    assert rep.pairs_checked > 19_000
    assert observed_colors(pc) == pc.m**d


def test_verify_detects_broken_eps():
    pc = PeriodicColoring(L2, 2, 0.9, 3)
    assert not pc.is_valid()
    assert verify_forbids(pc, 20_000, seed=0).violations > 0


def test_verify_reproducible():
    pc = PeriodicColoring(L2, 2, 0.9, 3)
    a = verify_forbids(pc, 10_000, seed=4, workers=3)
    b = verify_forbids(pc, 10_000, seed=4, workers=3)
    assert a == b
    assert a.as_dict()["workers"] == 3
