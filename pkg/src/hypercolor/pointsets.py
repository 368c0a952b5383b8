"""Named point sets used as test corpus and witness library."""

from __future__ import annotations

import math
import re

import numpy as np

from hypercolor.errors import InputError
from hypercolor.geometry import Point

SQRT3 = math.sqrt(3.0)


def _rotate(p: Point, theta: float, about: Point = (0.0, 0.0)) -> Point:
    x, y = p[0] - about[0], p[1] - about[1]
    ct, st = math.cos(theta), math.sin(theta)
    return (about[0] + ct * x - st * y, about[1] + st * x + ct * y) + tuple(p[2:])


def moser_spindle() -> list[Point]:
    """Two unit rhombi hinged at the origin, turned so their far tips are 1 apart.

    Order: origin, rhombus A (two side vertices, tip), rhombus B likewise.
    """
    rhombus = [(1.0, 0.0), (0.5, SQRT3 / 2), (1.5, SQRT3 / 2)]
    # tip sits at distance sqrt(3); a chord of length 1 on that circle
    theta = 2.0 * math.asin(1.0 / (2.0 * SQRT3))
    return [(0.0, 0.0)] + rhombus + [_rotate(p, theta) for p in rhombus]


def golomb() -> list[Point]:
    """Centre, unit hexagon, and a unit triangle hung off alternate hexagon vertices."""
    hexagon = [(math.cos(t * math.pi / 3), math.sin(t * math.pi / 3)) for t in range(6)]
    # triangle circumradius r = 1/sqrt(3); |t - h| = 1 fixes the angular offset
    r = 1.0 / SQRT3
    delta = math.acos(SQRT3 / 6.0)
    tri = [
        (r * math.cos(2 * math.pi * i / 3 + delta), r * math.sin(2 * math.pi * i / 3 + delta))
        for i in range(3)
    ]
    return [(0.0, 0.0)] + hexagon + tri


def unit_simplex(d: int) -> list[Point]:
    """``d + 1`` points in R^d, pairwise at distance 1."""
    if d < 1:
        raise InputError("unit-simplex needs d >= 1")
    # orthonormal basis of the hyperplane sum(x) = 0 in R^(d+1); e_i/sqrt2 are pairwise 1 apart
    q, _ = np.linalg.qr(np.vstack([np.ones(d + 1), np.eye(d + 1)[:d]]).T)
    basis = q[:, 1:].T  # d x (d+1), rows orthogonal to the all-ones vector
    pts = (basis @ np.eye(d + 1)).T / math.sqrt(2.0)
    pts -= pts[0]
    return [tuple(float(c) for c in row) for row in pts]


def triangular_lattice(radius: int) -> list[Point]:
    """Lattice points ``a*(1,0) + b*(1/2, sqrt3/2)`` within hex distance ``radius``."""
    if radius < 0:
        raise InputError("radius must be >= 0")
    pts = []
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            if max(abs(a), abs(b), abs(a + b)) <= radius:
                pts.append((a + 0.5 * b, SQRT3 / 2 * b))
    return pts


def integer_grid(w: int, h: int) -> list[Point]:
    if w < 1 or h < 1:
        raise InputError("grid sides must be >= 1")
    return [(float(x), float(y)) for y in range(h) for x in range(w)]


def unit_pair(d: int = 2) -> list[Point]:
    return [(0.0,) * d, (1.0,) + (0.0,) * (d - 1)]


_NAME = re.compile(r"^\s*([a-z-]+)\s*(?:\(\s*([0-9,\s]*)\))?\s*$")


def builtin_pointsets(name: str, *params: int) -> list[Point]:
    """Look up a named point set.

    Parameters may be passed positionally or inline, e.g.
    ``builtin_pointsets("integer-grid(3,3)")``.
    """
    m = _NAME.match(name.lower())
    if not m:
        raise InputError(f"cannot parse point-set name {name!r}")
    key, inline = m.group(1), m.group(2)
    args = list(params)
    if inline:
        args = [int(x) for x in inline.split(",") if x.strip()] + args
    table = {
        "moser-spindle": (moser_spindle, 0),
        "golomb": (golomb, 0),
        "unit-simplex": (unit_simplex, 1),
        "triangular-lattice": (triangular_lattice, 1),
        "integer-grid": (integer_grid, 2),
        "unit-pair": (unit_pair, None),
    }
    if key not in table:
        raise InputError(f"unknown point set {key!r}; known: {', '.join(sorted(table))}")
    fn, arity = table[key]
    if arity is not None and len(args) != arity:
        raise InputError(f"{key} takes {arity} integer parameter(s), got {len(args)}")
    return fn(*args)


NAMES = ("moser-spindle", "golomb", "unit-simplex", "triangular-lattice", "integer-grid", "unit-pair")
