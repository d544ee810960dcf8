"""Degree-3 Lagrange interpolation on uniform momentum planes.

The stencil for a target ``q`` uses nodes ``i-1 .. i+2`` with
``i = floor((q - origin)/dp)``. Data outside the plane count as zero and a
target outside ``[origin, origin + (N-1) dp]`` on either axis evaluates to 0.
No limiter is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

# targets this close to a node (in units of dp) snap onto it
_SNAP = 1e-12


@dataclass(frozen=True)
class MomentumPlane:
    values: np.ndarray
    origin: tuple
    spacing: tuple

    @classmethod
    def from_grid(cls, values, grid):
        return cls(np.asarray(values, dtype=float), (-grid.pmax, -grid.pmax),
                   (grid.dp1, grid.dp2))


@numba.njit(cache=True, inline="always")
def _locate(u, n):
    """Base index and offset of the 4-point stencil; ``ok`` false when out of range."""
    r = math.floor(u + 0.5)
    if abs(u - r) < _SNAP:
        u = r
    if u < 0.0 or u > n - 1:
        return 0, 0.0, False
    i = int(math.floor(u))
    return i, u - i, True


@numba.njit(cache=True, inline="always")
def _weights(s):
    # nodes at offsets -1, 0, 1, 2
    w0 = -s * (s - 1.0) * (s - 2.0) / 6.0
    w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0
    w2 = -(s + 1.0) * s * (s - 2.0) / 2.0
    w3 = (s + 1.0) * s * (s - 1.0) / 6.0
    return w0, w1, w2, w3


@numba.njit(cache=True, inline="always")
def _row4(vals, ii, j, b0, b1, b2, b3):
    return (b0 * vals[ii, j - 1] + b1 * vals[ii, j] + b2 * vals[ii, j + 1]
            + b3 * vals[ii, j + 2])


@numba.njit(cache=True, inline="always")
def _sample_2d(vals, u1, u2):
    n1, n2 = vals.shape
    i, s, ok1 = _locate(u1, n1)
    j, t, ok2 = _locate(u2, n2)
    if not (ok1 and ok2):
        return 0.0
    a0, a1, a2, a3 = _weights(s)
    b0, b1, b2, b3 = _weights(t)
    if 1 <= i and i + 2 < n1 and 1 <= j and j + 2 < n2:
        return (a0 * _row4(vals, i - 1, j, b0, b1, b2, b3)
                + a1 * _row4(vals, i, j, b0, b1, b2, b3)
                + a2 * _row4(vals, i + 1, j, b0, b1, b2, b3)
                + a3 * _row4(vals, i + 2, j, b0, b1, b2, b3))
    a = (a0, a1, a2, a3)
    b = (b0, b1, b2, b3)
    acc = 0.0
    for di in range(4):
        ii = i - 1 + di
        if ii < 0 or ii >= n1:
            continue
        row = 0.0
        for dj in range(4):
            jj = j - 1 + dj
            if jj < 0 or jj >= n2:
                continue
            row += b[dj] * vals[ii, jj]
        acc += a[di] * row
    return acc


@numba.njit(cache=True)
def _sample_points(vals, o1, o2, h1, h2, targets):
    out = np.empty(targets.shape[0])
    for m in range(targets.shape[0]):
        out[m] = _sample_2d(vals, (targets[m, 0] - o1) / h1, (targets[m, 1] - o2) / h2)
    return out


@numba.njit(cache=True)
def _stencil_table(n, d):
    """Base indices and weights for sampling index ``i - d`` at every node ``i``.

    Out-of-range targets get all-zero weights.
    """
    base = np.zeros(n, dtype=np.int64)
    w = np.zeros((n, 4))
    for i in range(n):
        b, s, ok = _locate(i - d, n)
        if ok:
            base[i] = b
            ws = _weights(s)
            for a in range(4):
                if 0 <= b - 1 + a < n:
                    w[i, a] = ws[a]
    return base, w


@numba.njit(cache=True)
def _shift_plane_kernel(vals, d1, d2, tmp, out):
    n1, n2 = vals.shape
    b1, w1 = _stencil_table(n1, d1)
    b2, w2 = _stencil_table(n2, d2)
    for i in range(n1):
        for j in range(n2):
            tmp[i, j] = 0.0
        for a in range(4):
            wa = w1[i, a]
            if wa != 0.0:
                ii = b1[i] - 1 + a
                for j in range(n2):
                    tmp[i, j] += wa * vals[ii, j]
    for i in range(n1):
        for j in range(n2):
            acc = 0.0
            bj = b2[j] - 1
            for a in range(4):
                wa = w2[j, a]
                if wa != 0.0:
                    acc += wa * tmp[i, bj + a]
            out[i, j] = acc


@numba.njit(cache=True, parallel=True)
def _shift_columns(f, d1, d2):
    nx, n1, n2 = f.shape
    out = np.empty_like(f)
    for m in numba.prange(nx):
        tmp = np.empty((n1, n2))
        _shift_plane_kernel(f[m], d1[m], d2[m], tmp, out[m])
    return out


@numba.njit(cache=True, inline="always")
def _cos_sin(th):
    # truncation error below 1e-20 for |th| < 1e-3
    if abs(th) < 1e-3:
        t2 = th * th
        return 1.0 - t2 / 2.0 + t2 * t2 / 24.0, th * (1.0 - t2 / 6.0 + t2 * t2 / 120.0)
    return math.cos(th), math.sin(th)


@numba.njit(cache=True, parallel=True)
def _rotate_columns(f, p1, p2, origin1, origin2, h1, h2, theta0, inv_gamma):
    nx, n1, n2 = f.shape
    out = np.empty_like(f)
    for m in numba.prange(nx):
        vals = f[m]
        th0 = theta0[m]
        if th0 == 0.0:
            out[m, :, :] = vals
            continue
        for i in range(n1):
            for j in range(n2):
                cs, sn = _cos_sin(th0 * inv_gamma[i, j])
                q1 = cs * p1[i] - sn * p2[j]
                q2 = sn * p1[i] + cs * p2[j]
                out[m, i, j] = _sample_2d(vals, (q1 - origin1) / h1, (q2 - origin2) / h2)
    return out


def sample_plane(plane, targets):
    """Evaluate the tensor-product cubic interpolant at ``targets`` (shape ``(n, 2)``)."""
    t = np.atleast_2d(np.asarray(targets, dtype=float))
    vals = np.ascontiguousarray(plane.values, dtype=float)
    (o1, o2), (h1, h2) = plane.origin, plane.spacing
    return _sample_points(vals, float(o1), float(o2), float(h1), float(h2), t)


def shift_plane(plane, delta1, delta2):
    """Plane ``g`` with ``g(p) = plane(p - (delta1, delta2))`` at every node."""
    vals = np.ascontiguousarray(plane.values, dtype=float)[None]
    h1, h2 = plane.spacing
    out = _shift_columns(vals, np.array([delta1 / h1]), np.array([delta2 / h2]))
    return MomentumPlane(out[0], plane.origin, plane.spacing)


def shift_columns(f, delta1, delta2, dp1, dp2):
    """Apply :func:`shift_plane` to every x-column of ``f`` with per-column shifts."""
    f = np.ascontiguousarray(f, dtype=float)
    d1 = np.ascontiguousarray(np.broadcast_to(np.asarray(delta1, float) / dp1, f.shape[:1]))
    d2 = np.ascontiguousarray(np.broadcast_to(np.asarray(delta2, float) / dp2, f.shape[:1]))
    return _shift_columns(f, d1, d2)


def rotation_foot(p1, p2, theta):
    """Rotate ``(p1, p2)`` counterclockwise by ``theta``."""
    cs, sn = np.cos(theta), np.sin(theta)
    return cs * p1 - sn * p2, sn * p1 + cs * p2


def rotate_columns(f, grid, theta0, inv_gamma):
    """Sample each column at its nodes rotated counterclockwise by ``theta0[m] / gamma(p)``."""
    f = np.ascontiguousarray(f, dtype=float)
    return _rotate_columns(
        f, grid.p1, grid.p2, -grid.pmax, -grid.pmax, grid.dp1, grid.dp2,
        np.ascontiguousarray(theta0, dtype=float),
        np.ascontiguousarray(np.broadcast_to(inv_gamma, (grid.Np1, grid.Np2)), dtype=float),
    )
