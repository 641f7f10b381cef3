"""The homeomorphism Conf_2(R^2) -> R^2 x R x S^1 and its inverse.

``(x, y) -> (x, ln|x - y|, (x - y) / |x - y|)``.  All functions broadcast
over leading axes, so arrays of shape ``(..., 2)`` map in one call.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

MIN_SEPARATION = 1e-300
UNIT_TOL = 1e-12


class PlanarPair(NamedTuple):
    x: np.ndarray
    y: np.ndarray


class ProductPoint(NamedTuple):
    a: np.ndarray
    t: np.ndarray
    u: np.ndarray


def conf2_forward(x, y) -> ProductPoint:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    diff = x - y
    r = np.hypot(diff[..., 0], diff[..., 1])
    if np.any(r < MIN_SEPARATION):
        raise ValueError("points coincide")
    return ProductPoint(x.copy(), np.log(r), diff / r[..., None])


def conf2_inverse(a, t, u) -> PlanarPair:
    a = np.asarray(a, dtype=float)
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    norm = np.hypot(u[..., 0], u[..., 1])
    if np.any(np.abs(norm - 1.0) > UNIT_TOL):
        raise ValueError("u is not a unit vector")
    return PlanarPair(a.copy(), a - np.exp(t)[..., None] * u)
