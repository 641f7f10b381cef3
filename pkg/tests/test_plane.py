import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confspace.plane import conf2_forward, conf2_inverse


def random_pairs(n, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-10, 10, (n, 2))
    r = 10.0 ** rng.uniform(-6, 6, n)
    theta = rng.uniform(0, 2 * np.pi, n)
    y = x + np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)
    return x, y


def test_example():
    q = conf2_forward([3.0, 4.0], [0.0, 0.0])
    assert q.t == pytest.approx(np.log(5.0))
    assert np.allclose(q.u, [0.6, 0.8])
    assert np.allclose(q.a, [3.0, 4.0])
    p = conf2_inverse(q.a, q.t, q.u)
    assert np.allclose(p.y, [0.0, 0.0], atol=1e-15)


def test_coincident_points_rejected():
    with pytest.raises(ValueError):
        conf2_forward([1.0, 1.0], [1.0, 1.0])


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        conf2_inverse([0.0, 0.0], 0.0, [1.0, 1.0])


def test_round_trip_bulk():
    x, y = random_pairs(10**5)
    p = conf2_inverse(*conf2_forward(x, y))
    err = np.abs(p.y - y).max(axis=-1)
    scale = np.maximum(1.0, np.abs(y).max(axis=-1))
    assert (p.x == x).all()
    assert err.max() < 1e-9
    assert (err / scale).max() < 1e-13


def test_inverse_round_trip():
    rng = np.random.default_rng(1)
    a = rng.uniform(-5, 5, (1000, 2))
    t = rng.uniform(-13, 13, 1000)
    th = rng.uniform(0, 2 * np.pi, 1000)
    u = np.stack([np.cos(th), np.sin(th)], axis=-1)
    q = conf2_forward(*conf2_inverse(a, t, u))
    assert np.abs(q.t - t).max() < 1e-9
    assert np.abs(q.u - u).max() < 1e-9


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.tuples(*[st.floats(-100, 100)] * 4), st.tuples(st.floats(-100, 100), st.floats(-100, 100)))
def test_translation_invariance(pts, shift):
    x = np.array(pts[:2])
    y = np.array(pts[2:])
    if np.hypot(*(x - y)) < 1e-3:
        return
    s = np.array(shift)
    q0, q1 = conf2_forward(x, y), conf2_forward(x + s, y + s)
    assert np.allclose(q1.a, q0.a + s)
    assert q1.t == pytest.approx(q0.t, abs=1e-9)
    assert np.allclose(q1.u, q0.u, atol=1e-9)


def test_swap_negates_direction():
    x, y = random_pairs(100, seed=2)
    q, r = conf2_forward(x, y), conf2_forward(y, x)
    assert np.allclose(q.t, r.t)
    assert np.allclose(q.u, -r.u)
