"""Conserved quantities, mode amplitudes, limit errors and rate fitting."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError
from .io import write_csv
from .spectral import rfft_x
from .state import charge_density, gamma_on_grid

COLUMNS = (
    "t", "H_E", "H_B", "H_f", "energy_error", "l2_error",
    "E1_k0", "E2_k0", "B_k0", "gauss_residual",
)


def energies(state):
    """Electric, magnetic and kinetic energy ``(H_E, H_B, H_f)``.

    The kinetic term is ``c^2 int (gamma - 1) f`` in the relativistic model and
    ``int |p|^2/2 f`` when ``gamma = 1``.
    """
    g = state.grid
    fl = state.fields
    h_e = 0.5 * np.sum(fl.E1**2 + fl.E2**2) * g.dx
    h_b = 0.5 * state.c**2 * np.sum(fl.B**2) * g.dx
    if state.relativistic:
        # c^2 (gamma - 1) = |p|^2 / (gamma + 1), free of cancellation
        p2sq = g.p1[:, None] ** 2 + g.p2[None, :] ** 2
        weight = p2sq / (gamma_on_grid(g, state.c, True) + 1.0)
    else:
        weight = 0.5 * (g.p1[:, None] ** 2 + g.p2[None, :] ** 2)
    h_f = np.tensordot(state.f.sum(axis=0), weight, axes=2) * g.dx * g.dv
    return float(h_e), float(h_b), float(h_f)


def total_energy(state):
    return sum(energies(state))


def l2_norm(f, grid):
    """``sqrt(int f^2 dx dp)`` with the rectangle rule."""
    return float(np.sqrt(np.vdot(f, f).real * grid.dx * grid.dv))


def mass(f, grid):
    return float(f.sum() * grid.dx * grid.dv)


def gauss_residual(state):
    """``max_{k != 0} |i k E1_hat(k) - rho_hat(k)|`` with ``rho = int f dp - 1``."""
    g = state.grid
    rho_hat = rfft_x(charge_density(state.f, g))
    e1_hat = rfft_x(state.fields.E1)
    res = 1j * g.k * e1_hat - rho_hat
    return float(np.max(np.abs(res[1:]))) if res.size > 1 else 0.0


def mode_amplitudes(state, j=1):
    """``|E1_hat|, |E2_hat|, |B_hat|`` of mode ``j`` (mean-normalized coefficients)."""
    fl = state.fields
    return tuple(float(np.abs(rfft_x(a)[j])) for a in (fl.E1, fl.E2, fl.B))


def electric_amplitude(state):
    """``sqrt(int (E1^2 + E2^2) dx)``, the square root of twice the electric energy."""
    return float(np.sqrt(2.0 * energies(state)[0]))


def limit_errors(state_c, state_limit):
    """Max-norm differences ``(E1, E2, B, f)`` against the Vlasov-Ampere limit."""
    if state_c.grid != state_limit.grid:
        raise ConfigurationError("states live on different grids")
    a, b = state_c.fields, state_limit.fields
    return (
        float(np.max(np.abs(a.E1 - b.E1))),
        float(np.max(np.abs(a.E2))),
        float(np.max(np.abs(a.B))),
        float(np.max(np.abs(state_c.f - state_limit.f))),
    )


def convergence_rate(err, err_prev, c, c_prev):
    """``ln(err/err_prev) / ln(c/c_prev)``."""
    return float(np.log(err / err_prev) / np.log(c / c_prev))


def fit_exponential_rate(t, y, window=None):
    """Least-squares slope of ``ln y`` against ``t`` on ``window = (t0, t1)``."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if window is not None:
        sel = (t >= window[0]) & (t <= window[1])
        t, y = t[sel], y[sel]
    if t.size < 10:
        raise DomainError(f"need at least 10 samples in the window, got {t.size}")
    if np.any(~(y > 0)):
        raise DomainError("rate fit needs strictly positive samples")
    slope, _ = np.polyfit(t, np.log(y), 1)
    return float(slope)


def local_maxima(t, y, window=None):
    """Interior local maxima of ``y``, refined by a parabola through three samples."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    idx = np.nonzero((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:]))[0] + 1
    tp, yp = [], []
    for i in idx:
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        den = y0 - 2.0 * y1 + y2
        h = t[i + 1] - t[i]
        off = 0.5 * (y0 - y2) / den if den != 0 else 0.0
        tp.append(t[i] + off * h)
        yp.append(y1 - 0.25 * (y0 - y2) * off)
    tp, yp = np.array(tp), np.array(yp)
    if window is not None:
        sel = (tp >= window[0]) & (tp <= window[1])
        tp, yp = tp[sel], yp[sel]
    return tp, yp


def envelope_rate(t, y, window):
    """Rate fitted through the local maxima of an oscillating, decaying amplitude.

    Needs at least three maxima in the window (a plain fit of ``ln y`` would be
    dominated by the zeros of a standing wave).
    """
    tp, yp = local_maxima(t, y, window)
    if tp.size < 3:
        raise DomainError(f"need at least 3 maxima in the window, got {tp.size}")
    if np.any(~(yp > 0)):
        raise DomainError("rate fit needs strictly positive samples")
    return float(np.polyfit(tp, np.log(yp), 1)[0])


def linear_phase_window(t, y, width=None, tol=0.05, min_slope=0.0):
    """Longest window where the local slope of ``ln y`` varies by less than ``tol``.

    Local slopes are least-squares fits over sub-windows of ``width`` time
    units; the window spans sub-windows whose slopes stay within ``tol``
    (relative) of each other and above ``min_slope``.
    """
    t = np.asarray(t, dtype=float)
    ly = np.log(np.asarray(y, dtype=float))
    if width is None:
        width = (t[-1] - t[0]) / 40.0
    edges = np.arange(t[0], t[-1] - width + 1e-12, width)
    centers, slopes = [], []
    for a in edges:
        sel = (t >= a) & (t <= a + width)
        if sel.sum() >= 3:
            slopes.append(np.polyfit(t[sel], ly[sel], 1)[0])
            centers.append(a)
    slopes = np.array(slopes)
    best = (0, 0)
    for i in range(len(slopes)):
        if slopes[i] <= min_slope:
            continue
        lo = hi = slopes[i]
        for j in range(i, len(slopes)):
            if slopes[j] <= min_slope:
                break
            lo, hi = min(lo, slopes[j]), max(hi, slopes[j])
            if hi - lo > tol * 0.5 * (hi + lo):
                break
            if j - i > best[1] - best[0]:
                best = (i, j)
    i, j = best
    if not slopes.size or slopes[i] <= min_slope:
        raise DomainError("no window with a steady positive slope")
    return float(centers[i]), float(centers[j] + width)


@dataclass
class TimeSeries:
    """Sampled diagnostics; one row per sample time."""

    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    columns = COLUMNS

    def append(self, row):
        if self.rows and not row[0] > self.rows[-1][0]:
            raise ValueError("time must be strictly increasing")
        self.rows.append(tuple(float(v) for v in row))

    def __len__(self):
        return len(self.rows)

    def column(self, name):
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self, fh):
        write_csv(fh, self.columns, self.rows)


class Recorder:
    """Builds :class:`TimeSeries` rows relative to the initial state."""

    def __init__(self, state0, mode=1):
        self.mode = mode
        self.h0 = total_energy(state0)
        self.l2_0 = l2_norm(state0.f, state0.grid)
        self.series = TimeSeries()

    def row(self, state):
        h_e, h_b, h_f = energies(state)
        l2 = l2_norm(state.f, state.grid)
        amps = mode_amplitudes(state, self.mode)
        return (state.t, h_e, h_b, h_f, abs(h_e + h_b + h_f - self.h0),
                abs(l2 - self.l2_0) / self.l2_0, *amps, gauss_residual(state))

    def record(self, state):
        self.series.append(self.row(state))
