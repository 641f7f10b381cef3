"""
Two points in the plane
=======================

An ordered pair of distinct points is the same as a base point, a log
distance and a direction on the circle.
"""

import numpy as np

from confspace import conf2_forward, conf2_inverse

q = conf2_forward([3.0, 4.0], [0.0, 0.0])
print("a =", q.a, " t = ln 5 =", q.t, " u =", q.u)

rng = np.random.default_rng(0)
x = rng.normal(size=(5, 2))
y = x + rng.normal(size=(5, 2))
back = conf2_inverse(*conf2_forward(x, y))
print("max round-trip error:", np.abs(back.y - y).max())
