"""Splitting sub-steps of the Vlasov-Maxwell system and their compositions.

Sub-flows, each solved exactly in time (up to interpolation in ``p``):

* transport/Ampere: ``f_t + (p1/gamma) f_x = 0`` with ``E_t = -(J - Jbar)``,
  done mode by mode in Fourier space;
* Maxwell: ``(E2_hat, B_hat)`` advanced by an implicit integrator (``maxwell``);
* electric push: ``f(p) <- f(p - dt E)``, a per-column shift in momentum;
* magnetic rotation: ``f(p) <- f(R(B dt / gamma) p)``.

The mean of every field is pinned to zero (the ``Jbar`` correction) and the
Nyquist mode is dropped at every transport step.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from .interp import rotate_columns, shift_columns
from .maxwell import MaxwellMethod, advance_mode
from .spectral import irfft_x, rfft_x
from .state import FieldState, SimState, gamma_on_grid

# phase below which the E2 kernel switches to its Taylor series
SERIES_THRESHOLD = 1e-4


@dataclass(frozen=True)
class SpectralState:
    """Half-spectrum (``j = 0..Nx/2``) representation of ``f`` and the fields."""

    f_hat: np.ndarray
    e1_hat: np.ndarray
    e2_hat: np.ndarray
    b_hat: np.ndarray
    grid: object


def to_spectral(state):
    fl = state.fields
    return SpectralState(rfft_x(state.f), rfft_x(fl.E1), rfft_x(fl.E2), rfft_x(fl.B),
                         state.grid)


def fields_from_spectral(s):
    n = s.grid.Nx
    return FieldState(irfft_x(s.e1_hat, n), irfft_x(s.e2_hat, n), irfft_x(s.b_hat, n))


def _pin_means(*arrays):
    for a in arrays:
        a[0] = 0.0
        a[-1] = 0.0


class _KernelCache:
    """Small LRU of the phase factors used by the transport step."""

    def __init__(self, size=4):
        self.size = size
        self._d = OrderedDict()

    def get(self, grid, dt, c, relativistic):
        key = (grid, float(dt), float(c) if relativistic else None, bool(relativistic))
        if key in self._d:
            self._d.move_to_end(key)
            return self._d[key]
        val = _transport_kernels(grid, dt, c, relativistic)
        self._d[key] = val
        while len(self._d) > self.size:
            self._d.popitem(last=False)
        return val

    def clear(self):
        self._d.clear()


def _transport_kernels(grid, dt, c, relativistic):
    """``(phase, dphase, e2_kernel)`` broadcastable against ``f_hat``.

    ``phase = exp(-i k p1 dt / gamma)``, ``dphase = phase - 1`` (computed without
    cancellation) and ``e2_kernel = (p2/p1)(phase - 1)``. Without relativity the
    arrays do not depend on ``p2`` and the ``p2`` factor is left out.
    """
    k = grid.k[:, None, None]
    p1 = grid.p1[None, :, None]
    if relativistic:
        inv_g = 1.0 / gamma_on_grid(grid, c, True)[None, :, :]
        p2 = grid.p2[None, None, :]
    else:
        inv_g = np.ones((1, 1, 1))
        p2 = 1.0
    phi = k * p1 * dt * inv_g
    phase = np.exp(-1j * phi)
    dphase = -2.0 * np.sin(0.5 * phi) ** 2 - 1j * np.sin(phi)
    small = np.abs(phi) < SERIES_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = p2 * dphase / p1
    series = p2 * (-1j * k * dt * inv_g) * (1.0 - 0.5j * phi - phi**2 / 6.0 + 1j * phi**3 / 24.0)
    e2_kernel = np.where(small, series, direct)
    return phase, dphase, e2_kernel


_kernels = _KernelCache()


def e2_kernel_branches(phi, p2, k, dt, inv_gamma=1.0):
    """Direct and series evaluations of ``(p2/p1)(exp(-i phi) - 1)`` (for checks)."""
    p1 = phi / (k * dt * inv_gamma)
    direct = p2 / p1 * (-2.0 * np.sin(0.5 * phi) ** 2 - 1j * np.sin(phi))
    series = p2 * (-1j * k * dt * inv_gamma) * (1.0 - 0.5j * phi - phi**2 / 6.0 + 1j * phi**3 / 24.0)
    return direct, series


def step_transport_ampere(s, dt, c, relativistic):
    """Exact flow of the transport/Ampere sub-system over ``dt`` in Fourier space.

    For ``k != 0``: ``f* = f exp(-i k p1 dt/gamma)``,
    ``E1* = E1 + (1/ik) int (f* - f) dp`` and
    ``E2* = E2 + (1/ik) int (p2/p1) f (exp(-i k p1 dt/gamma) - 1) dp``.
    Mode 0 is left untouched and ``B`` is unchanged.
    """
    grid = s.grid
    phase, dphase, e2k = _kernels.get(grid, dt, c, relativistic)
    f = s.f_hat
    dv = grid.dv
    k = grid.k
    ik = 1j * k[1:]
    if relativistic:
        j1 = np.einsum("kij,kij->k", dphase, f)
        j2 = np.einsum("kij,kij->k", e2k, f)
    else:
        f1 = f.sum(axis=2)
        fp2 = f @ grid.p2
        j1 = np.einsum("ki,ki->k", dphase[:, :, 0], f1)
        j2 = np.einsum("ki,ki->k", e2k[:, :, 0], fp2)
    e1 = s.e1_hat.copy()
    e2 = s.e2_hat.copy()
    e1[1:] += j1[1:] * dv / ik
    e2[1:] += j2[1:] * dv / ik
    f_new = f * phase
    f_new[0] = f[0]
    f_new[-1] = 0.0
    _pin_means(e1, e2)
    b = s.b_hat.copy()
    _pin_means(b)
    return SpectralState(f_new, e1, e2, b, grid)


def maxwell_substep(s, dt, c, method):
    """Advance ``(E2_hat, B_hat)`` of every mode with ``method``; ``E1`` is unchanged."""
    e2, b = advance_mode(method, s.e2_hat, s.b_hat, s.grid.k, c, dt)
    _pin_means(e2, b)
    return SpectralState(s.f_hat, s.e1_hat, e2, b, s.grid)


def step_electric_push(f, fields, dt, grid):
    """``f(x, p) <- f(x, p - dt E(x))`` by cubic interpolation in each column."""
    return shift_columns(f, dt * np.asarray(fields.E1), dt * np.asarray(fields.E2),
                         grid.dp1, grid.dp2)


def step_magnetic_rotation(f, fields, dt, grid, c, relativistic):
    """Solve ``f_t + (B/gamma) J p . grad_p f = 0`` over ``dt``.

    The foot of the characteristic through node ``p`` is ``p`` rotated
    counterclockwise by ``B(x) dt / gamma(p)``.
    """
    inv_g = 1.0 / gamma_on_grid(grid, c, relativistic)
    return rotate_columns(f, grid, dt * np.asarray(fields.B), inv_g)


def _check_finite_step(dt):
    if dt < 0:
        raise ValueError("dt must be non-negative")


def transport_ampere(state, dt):
    """Physical-space wrapper around :func:`step_transport_ampere`."""
    s = step_transport_ampere(to_spectral(state), dt, state.c, state.relativistic)
    return state.replace(f=irfft_x(s.f_hat, state.grid.Nx), fields=fields_from_spectral(s))


def step_first_order(state, dt, method=MaxwellMethod.IMPLICIT_EULER):
    """Lie splitting: transport/Ampere, Maxwell, electric push, magnetic rotation."""
    _check_finite_step(dt)
    if dt == 0:
        return state
    method = MaxwellMethod.parse(method)
    grid, c, rel = state.grid, state.c, state.relativistic
    s = step_transport_ampere(to_spectral(state), dt, c, rel)
    s = maxwell_substep(s, dt, c, method)
    fields = fields_from_spectral(s)
    f = irfft_x(s.f_hat, grid.Nx)
    f = step_electric_push(f, fields, dt, grid)
    f = step_magnetic_rotation(f, fields, dt, grid, c, rel)
    return state.replace(f=f, fields=fields, t=state.t + dt)


def step_strang(state, dt, method=MaxwellMethod.RADAU_IIA3, maxwell=True):
    """Symmetric composition of the sub-flows (second order in ``dt``).

    Sequence: transport(dt/2), Maxwell(dt/2), push(dt/2), rotation(dt),
    push(dt/2), Maxwell(dt/2), transport(dt/2). ``maxwell=False`` replaces both
    Maxwell stages by the identity.
    """
    _check_finite_step(dt)
    if dt == 0:
        return state
    method = MaxwellMethod.parse(method)
    grid, c, rel = state.grid, state.c, state.relativistic
    h = 0.5 * dt
    s = step_transport_ampere(to_spectral(state), h, c, rel)
    if maxwell:
        s = maxwell_substep(s, h, c, method)
    fields = fields_from_spectral(s)
    f = irfft_x(s.f_hat, grid.Nx)
    f = step_electric_push(f, fields, h, grid)
    f = step_magnetic_rotation(f, fields, dt, grid, c, rel)
    f = step_electric_push(f, fields, h, grid)
    s = SpectralState(rfft_x(f), s.e1_hat, s.e2_hat, s.b_hat, grid)
    if maxwell:
        s = maxwell_substep(s, h, c, method)
    s = step_transport_ampere(s, h, c, rel)
    return state.replace(f=irfft_x(s.f_hat, grid.Nx), fields=fields_from_spectral(s),
                         t=state.t + dt)


def _limit_transport(s, dt):
    s = step_transport_ampere(s, dt, 1.0, False)
    zero = np.zeros_like(s.e2_hat)
    return SpectralState(s.f_hat, s.e1_hat, zero, zero.copy(), s.grid)


def step_limit_vlasov_ampere(state, dt, order="first"):
    """One step of the Vlasov-Ampere limit scheme (``gamma = 1``, ``E2 = B = 0``).

    ``order="first"``: transport/Ampere over ``dt`` then the ``p1`` shift by
    ``dt E1``. ``order="strang"``: transport(dt/2), two shifts by ``dt/2 E1``,
    transport(dt/2). This is the limit of :func:`step_strang` as ``c`` grows
    (the rotation between the pushes is the identity once ``B = 0``); two
    half shifts are kept because cubic shifts do not compose exactly.
    """
    _check_finite_step(dt)
    if dt == 0:
        return state
    grid = state.grid
    s = to_spectral(state)
    zero = np.zeros(grid.Nx)
    if order == "first":
        s = _limit_transport(s, dt)
        e1 = irfft_x(s.e1_hat, grid.Nx)
        f = shift_columns(irfft_x(s.f_hat, grid.Nx), dt * e1, 0.0, grid.dp1, grid.dp2)
    elif order == "strang":
        s = _limit_transport(s, 0.5 * dt)
        e1 = irfft_x(s.e1_hat, grid.Nx)
        f = irfft_x(s.f_hat, grid.Nx)
        for _ in range(2):
            f = shift_columns(f, 0.5 * dt * e1, 0.0, grid.dp1, grid.dp2)
        s = _limit_transport(SpectralState(rfft_x(f), s.e1_hat, s.e2_hat, s.b_hat, grid),
                             0.5 * dt)
        f = irfft_x(s.f_hat, grid.Nx)
        e1 = irfft_x(s.e1_hat, grid.Nx)
    else:
        raise ValueError(f"unknown order {order!r}")
    return state.replace(f=f, fields=FieldState(e1, zero, zero.copy()), t=state.t + dt)


def step(state, dt, method=MaxwellMethod.RADAU_IIA3, order="strang"):
    """Dispatch on ``order`` (``"first"`` or ``"strang"``)."""
    if order == "strang":
        return step_strang(state, dt, method)
    if order == "first":
        return step_first_order(state, dt, method)
    raise ValueError(f"unknown order {order!r}")
