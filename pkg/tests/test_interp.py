import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apvm.interp import (
    MomentumPlane,
    rotate_columns,
    rotation_foot,
    sample_plane,
    shift_columns,
    shift_plane,
)
from apvm.state import PhaseGrid

N = 24
PMAX = 3.0
DP = 2 * PMAX / N
NODES = -PMAX + DP * np.arange(N)


def plane_of(fn):
    return MomentumPlane(fn(NODES[:, None], NODES[None, :]), (-PMAX, -PMAX), (DP, DP))


def cubic(p1, p2):
    return p1**3 + p2**2 * p1 - 0.5 * p1 * p2 + 2.0


def test_nodes_reproduced(rng):
    plane = MomentumPlane(rng.standard_normal((N, N)), (-PMAX, -PMAX), (DP, DP))
    idx = rng.integers(0, N, size=(50, 2))
    pts = np.column_stack([NODES[idx[:, 0]], NODES[idx[:, 1]]])
    assert np.array_equal(sample_plane(plane, pts), plane.values[idx[:, 0], idx[:, 1]])


def test_cubic_exactness_interior(rng):
    plane = plane_of(cubic)
    pts = rng.uniform(-PMAX + 1.01 * DP, PMAX - 2.01 * DP, size=(200, 2))
    exact = cubic(pts[:, 0], pts[:, 1])
    err = np.abs(sample_plane(plane, pts) - exact)
    assert np.max(err) <= 1e-12 * np.max(np.abs(exact))


def test_tensor_cubic_exactness(rng):
    fn = lambda a, b: (a**3 - a) * (b**3 + 2 * b**2)  # noqa: E731
    plane = plane_of(fn)
    pts = rng.uniform(-PMAX + 1.01 * DP, PMAX - 2.01 * DP, size=(200, 2))
    exact = fn(pts[:, 0], pts[:, 1])
    assert np.max(np.abs(sample_plane(plane, pts) - exact)) <= 1e-12 * np.max(np.abs(exact))


def test_outside_is_zero():
    plane = plane_of(lambda a, b: np.exp(-(a**2 + b**2)))
    vals = sample_plane(plane, [[PMAX + 1, 0.0], [0.0, -PMAX - 1e-3], [PMAX - 0.5 * DP, 0.0]])
    assert np.all(vals == 0.0)


def test_shift_identity(rng):
    plane = MomentumPlane(rng.standard_normal((N, N)), (-PMAX, -PMAX), (DP, DP))
    assert np.array_equal(shift_plane(plane, 0.0, 0.0).values, plane.values)


def test_shift_one_cell(rng):
    vals = rng.standard_normal((N, N))
    out = shift_plane(MomentumPlane(vals, (-PMAX, -PMAX), (DP, DP)), DP, 0.0).values
    assert np.array_equal(out[1:], vals[:-1])
    assert np.all(out[0] == 0.0)


def test_shift_fraction_of_cubic():
    plane = plane_of(cubic)
    out = shift_plane(plane, 0.4 * DP, -0.3 * DP).values
    exact = cubic(NODES[:, None] - 0.4 * DP, NODES[None, :] + 0.3 * DP)
    inner = (slice(2, N - 2), slice(2, N - 2))
    assert np.max(np.abs(out[inner] - exact[inner])) <= 1e-12 * np.max(np.abs(exact))


def test_shift_matches_sampling(rng):
    vals = rng.standard_normal((N, N))
    plane = MomentumPlane(vals, (-PMAX, -PMAX), (DP, DP))
    d1, d2 = 0.37 * DP, -1.6 * DP
    out = shift_plane(plane, d1, d2).values
    pts = np.array([(a - d1, b - d2) for a in NODES for b in NODES])
    assert np.allclose(out.ravel(), sample_plane(plane, pts), atol=1e-13, rtol=0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-10, 10))
def test_linearity(q1, q2, a):
    rng = np.random.default_rng(0)
    u, v = rng.standard_normal((2, N, N))
    mk = lambda w: MomentumPlane(w, (-PMAX, -PMAX), (DP, DP))  # noqa: E731
    pts = [[q1, q2]]
    lhs = sample_plane(mk(a * u + v), pts)
    rhs = a * sample_plane(mk(u), pts) + sample_plane(mk(v), pts)
    assert abs(lhs[0] - rhs[0]) <= 1e-12 * (1 + abs(a)) * 10


@settings(max_examples=30, deadline=None)
@given(st.floats(-PMAX + 2 * DP, PMAX - 3 * DP), st.floats(-PMAX + 2 * DP, PMAX - 3 * DP))
def test_translation_equivariance(q1, q2):
    rng = np.random.default_rng(1)
    vals = rng.standard_normal((N, N))
    shifted = np.zeros_like(vals)
    shifted[1:] = vals[:-1]
    a = sample_plane(MomentumPlane(vals, (-PMAX, -PMAX), (DP, DP)), [[q1, q2]])
    b = sample_plane(MomentumPlane(shifted, (-PMAX, -PMAX), (DP, DP)), [[q1 + DP, q2]])
    assert abs(a[0] - b[0]) <= 1e-13


def test_shift_columns_per_column(rng):
    f = rng.standard_normal((3, N, N))
    d1 = np.array([0.0, DP, 0.3 * DP])
    out = shift_columns(f, d1, 0.0, DP, DP)
    assert np.array_equal(out[0], f[0])
    assert np.array_equal(out[1, 1:], f[1, :-1])
    ref = shift_plane(MomentumPlane(f[2], (-PMAX, -PMAX), (DP, DP)), 0.3 * DP, 0.0).values
    assert np.array_equal(out[2], ref)


@settings(max_examples=50, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-7, 7))
def test_rotation_preserves_radius(p1, p2, th):
    q1, q2 = rotation_foot(p1, p2, th)
    assert np.hypot(q1, q2) == pytest.approx(np.hypot(p1, p2), rel=1e-14, abs=1e-14)


def _rk4_backward(p, b, dt, n=200):
    """Foot point of dP/dt = b J P, J = [[0, 1], [-1, 0]], integrated from dt back to 0."""
    rhs = lambda P: b * np.array([P[1], -P[0]])  # noqa: E731
    P = np.array(p, dtype=float)
    h = -dt / n
    for _ in range(n):
        k1 = rhs(P)
        k2 = rhs(P + 0.5 * h * k1)
        k3 = rhs(P + 0.5 * h * k2)
        k4 = rhs(P + h * k3)
        P = P + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return P


@pytest.mark.parametrize("p", [(1.0, 0.0), (0.3, -0.8)])
def test_rotation_sign_against_ode(p):
    b, dt = 1.0, 0.01
    foot = _rk4_backward(p, b, dt)
    q = rotation_foot(p[0], p[1], b * dt)
    assert np.max(np.abs(np.array(q) - foot)) <= 1e-10


def test_rotate_columns_uses_foot_point():
    g = PhaseGrid(4, N, N, 1.0, PMAX)
    # linear data is reproduced exactly, so out = q1 at every interior node
    f = np.broadcast_to(g.p1[:, None] + 0.0 * g.p2[None, :], g.shape).copy()
    theta0 = np.array([0.0, 0.02, -0.05, 0.1])
    out = rotate_columns(f, g, theta0, np.ones((N, N)))
    assert np.array_equal(out[0], f[0])
    inner = (slice(4, N - 4), slice(4, N - 4))
    for m in range(1, 4):
        q1, _ = rotation_foot(g.p1[:, None], g.p2[None, :], theta0[m])
        assert np.max(np.abs(out[m][inner] - q1[inner])) < 1e-12


def test_rotate_columns_respects_gamma():
    g = PhaseGrid(4, N, N, 1.0, PMAX)
    f = np.broadcast_to(g.p2[None, :] + 0.0 * g.p1[:, None], g.shape).copy()
    inv_g = 1.0 / np.sqrt(1 + (g.p1[:, None] ** 2 + g.p2[None, :] ** 2) / 4.0)
    theta0 = np.full(4, 0.05)
    out = rotate_columns(f, g, theta0, inv_g)
    _, q2 = rotation_foot(g.p1[:, None], g.p2[None, :], 0.05 * inv_g)
    inner = (slice(4, N - 4), slice(4, N - 4))
    assert np.max(np.abs(out[0][inner] - q2[inner])) < 1e-12
