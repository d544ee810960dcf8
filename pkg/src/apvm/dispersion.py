"""Linear dispersion relations of the semi-relativistic (gamma = 1) model.

Perturbations are taken proportional to ``exp(i(kx - omega t))``, so a root
with ``Im omega > 0`` is an unstable (growing) mode.

The equilibrium is the drifting bi-Maxwellian

    f0(p) = exp(-(px - a)^2/v^2 - (py - b)^2/(v^2 T_r)) / (pi v^2 sqrt(T_r)).

Two kinds of relation are provided: the continuous scalar ``D(omega)`` and its
3x3 matrix form ``det A(omega)``, and the semi-discrete ``det A^dt(omega)``
obtained from the time-discrete scheme.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import wofz

from .errors import ConfigurationError, DomainError, IllConditionedError, NoRootError
from .io import write_csv

SQRT_PI = math.sqrt(math.pi)

# plasma_Z refuses |xi| beyond this (exp(-xi^2) overflows long before)
Z_GUARD = 700.0


@dataclass(frozen=True)
class DispersionParams:
    """Equilibrium ``(v_th, T_r, a, b)`` and mode data ``(k, c, dt)``."""

    v_th: float
    T_r: float
    k: float
    c: float = 1.0
    a: float = 0.0
    b: float = 0.0
    dt: float | None = None

    def __post_init__(self):
        if not self.v_th > 0:
            raise ConfigurationError("v_th must be positive")
        if not self.T_r > 0:
            raise ConfigurationError("T_r must be positive")
        if self.k == 0:
            raise ConfigurationError("k must be non-zero")
        if not self.c > 0:
            raise ConfigurationError("c must be positive")
        if self.dt is not None and not self.dt > 0:
            raise ConfigurationError("dt must be positive")

    def with_(self, **changes):
        return replace(self, **changes)


WEIBEL_PARAMS = DispersionParams(v_th=0.02, T_r=12.0, k=1.25, c=1.0)


def plasma_Z(xi):
    """Plasma dispersion function ``Z(xi) = i sqrt(pi) w(xi)``.

    ``w`` is the Faddeeva function, so this equals
    ``sqrt(pi) exp(-xi^2) (i - erfi(xi))`` everywhere (the analytic
    continuation of the Landau integral into the lower half plane).
    """
    xi = complex(xi)
    if not (math.isfinite(xi.real) and math.isfinite(xi.imag)):
        raise DomainError("plasma_Z: non-finite argument")
    if abs(xi) >= Z_GUARD:
        raise DomainError(f"plasma_Z: |xi| = {abs(xi):.3g} exceeds {Z_GUARD}")
    val = 1j * SQRT_PI * complex(wofz(xi))
    if not cmath.isfinite(val):
        raise DomainError(f"plasma_Z overflow at xi = {xi}")
    return val


def L1_closed(params, omega):
    """``(T_r + 2 b^2/v^2) (1 + xi Z(xi))`` with ``xi = (omega/k - a)/v``."""
    p = params
    xi = (complex(omega) / p.k - p.a) / p.v_th
    return (p.T_r + 2.0 * p.b**2 / p.v_th**2) * (1.0 + xi * plasma_Z(xi))


def continuous_D(params, omega):
    """``D(omega) = -1 + omega^2 - k^2 c^2 + T_r (1 + xi Z(xi))`` for ``a = b = 0``."""
    p = params
    if p.a != 0 or p.b != 0:
        raise ConfigurationError("continuous_D assumes a = b = 0")
    omega = complex(omega)
    return -1.0 + omega**2 - (p.k * p.c) ** 2 + L1_closed(p, omega)


# --- momentum quadrature --------------------------------------------------------

# half-width of the quadrature box in thermal units; exp(-13^2) ~ 1e-74
_BOX = 13.0
_MAX_NODES = 2_000_000


def _py_moments(p, n=801):
    """Trapezoid values of ``int py^2 h`` and ``int py h'`` for the py factor ``h``."""
    s = p.v_th * math.sqrt(p.T_r)
    y = np.linspace(p.b - _BOX * s, p.b + _BOX * s, n)
    h = np.exp(-((y - p.b) / s) ** 2) / (SQRT_PI * s)
    dh = -2.0 * (y - p.b) / s**2 * h
    w = y[1] - y[0]
    return float(np.sum(y * y * h) * w), float(np.sum(y * dh) * w)


def _px_moments(p, zeta, causal_side):
    """``(int g/(px - zeta), int g'/(px - zeta), int px g/(px - zeta))``.

    ``g`` is the normalized px factor of ``f0``. The trapezoid rule converges
    geometrically for these analytic integrands as long as the node spacing is
    small against the distance ``|Im zeta|`` of the pole to the real axis.
    The integrals are defined by their values on the ``causal_side`` (sign of
    ``Im zeta`` for growing modes) and continued analytically to the other side.
    """
    scale = max(p.v_th, abs(p.a), abs(zeta.real))
    d = abs(zeta.imag)
    if d < 1e-10 * scale:
        raise IllConditionedError(
            f"pole zeta = {zeta} lies on the real integration axis")
    h = min(p.v_th, d) / 24.0
    lo, hi = p.a - _BOX * p.v_th, p.a + _BOX * p.v_th
    n = int(math.ceil((hi - lo) / h)) + 1
    if n > _MAX_NODES:
        raise IllConditionedError(
            f"pole zeta = {zeta} too close to the real axis for quadrature")
    x = np.linspace(lo, hi, n)
    w = x[1] - x[0]
    g = np.exp(-((x - p.a) / p.v_th) ** 2) / (SQRT_PI * p.v_th)
    dg = -2.0 * (x - p.a) / p.v_th**2 * g
    r = 1.0 / (x - zeta)
    vals = [complex(np.sum(g * r) * w), complex(np.sum(dg * r) * w),
            complex(np.sum(x * g * r) * w)]
    if zeta.imag * causal_side < 0:
        # analytic continuation across the real axis: add the pole residue
        expo = -((zeta - p.a) / p.v_th) ** 2
        if expo.real > Z_GUARD:
            raise DomainError(f"continuation overflows at zeta = {zeta}")
        gz = cmath.exp(expo) / (SQRT_PI * p.v_th)
        res = (gz, -2.0 * (zeta - p.a) / p.v_th**2 * gz, zeta * gz)
        vals = [v + causal_side * 2j * math.pi * rz for v, rz in zip(vals, res)]
    return tuple(vals)


def pole_integrals(params, zeta):
    """``(L1, L2)`` of the matrix formulation with the pole at ``zeta``.

    ``L1 = int py d_py f0 / (px - zeta) dp`` and
    ``L2 = int (py^2 d_px f0 - px py d_py f0) / (px - zeta) dp``, evaluated by
    tensor-product quadrature (``f0`` factorizes in ``px`` and ``py``). Values
    with ``Im zeta`` of the sign opposite to ``k`` are analytic continuations.
    """
    zeta = complex(zeta)
    py2, py_dpy = _py_moments(params)
    g0, dg, xg = _px_moments(params, zeta, math.copysign(1.0, params.k))
    return py_dpy * g0, py2 * dg - py_dpy * xg


def L2_quadrature(params):
    """``int py d_py f0 dp`` by quadrature; equals ``-1`` for normalized ``f0``."""
    return _py_moments(params)[1]


def L1_quadrature(params, omega):
    """``int py^2 k d_px f0 / (omega - k px) dp`` by quadrature (checks :func:`L1_closed`)."""
    p = params
    py2, _ = _py_moments(p)
    _, dg, _ = _px_moments(p, complex(omega) / p.k, math.copysign(1.0, p.k))
    # k / (omega - k px) = -1 / (px - omega/k)
    return -py2 * dg


def continuous_matrix(params, omega):
    """3x3 matrix ``A(omega)`` acting on ``(dJ2, dE2, dB)``."""
    p = params
    omega = complex(omega)
    l1, l2 = pole_integrals(p, omega / p.k)
    ik = 1j * p.k
    return np.array([
        [1.0, -1j / p.k * l1, -1j / p.k * l2],
        [1.0, -1j * omega, p.c**2 * ik],
        [0.0, ik, -1j * omega],
    ])


def discrete_pole(omega, k, dt):
    """``zeta = (1 - exp(-i omega dt)) / (i dt k)``; tends to ``omega/k`` as ``dt -> 0``."""
    omega = complex(omega)
    return -np.expm1(-1j * omega * dt) / (1j * dt * k)


def semidiscrete_matrix(params, omega, variant="printed"):
    """3x3 matrix ``A^dt(omega)`` of the time-discrete scheme.

    The model scheme is explicit transport followed by implicit-Euler Maxwell
    and the linearized momentum push; the pole integrals use ``zeta`` from
    :func:`discrete_pole`.

    ``variant="printed"`` (default) is the reference form, with
    rows two and three ``[1, (e - r)/dt, i c^2 k]`` and
    ``[i k dt^2, i k, (e - r)/dt]`` where ``e = exp(-i omega dt)`` and
    ``r = 1/(1 + dt^2 c^2 k^2)``. ``variant="rederived"`` keeps the factors
    ``r`` that come out of the implicit-Euler update, giving
    ``[r, (e - r)/dt, r i c^2 k]`` and ``[-r i k dt, r i k, (e - r)/dt]``.
    Both tend to the continuous matrix as ``dt -> 0``.
    """
    p = params
    if p.dt is None:
        raise ConfigurationError("semidiscrete_matrix needs params.dt")
    omega = complex(omega)
    dt, k, c = p.dt, p.k, p.c
    l1, l2 = pole_integrals(p, discrete_pole(omega, k, dt))
    e = cmath.exp(-1j * omega * dt)
    r = 1.0 / (1.0 + (dt * c * k) ** 2)
    diag = (e - r) / dt
    ik = 1j * k
    row1 = [1.0, -1j / k * e * l1, -1j / k * e * l2]
    if variant == "printed":
        return np.array([row1, [1.0, diag, c**2 * ik], [dt**2 * ik, ik, diag]])
    if variant == "rederived":
        return np.array([row1, [r, diag, r * c**2 * ik], [-r * dt * ik, r * ik, diag]])
    raise ConfigurationError(f"unknown variant {variant!r}")


def det_continuous(params, omega):
    with np.errstate(over="ignore", invalid="ignore"):
        return complex(np.linalg.det(continuous_matrix(params, omega)))


def det_semidiscrete(params, omega, variant="printed"):
    with np.errstate(over="ignore", invalid="ignore"):
        return complex(np.linalg.det(semidiscrete_matrix(params, omega, variant)))


# --- root finding ---------------------------------------------------------------

def find_root(relation, guess, tol=1e-10, maxiter=100, rel_step=1e-7, max_halvings=20):
    """Damped complex Newton iteration for ``relation(omega) = 0``.

    The derivative is a central difference with step ``rel_step * max(|omega|, 1e-3)``.
    A step is halved (up to ``max_halvings`` times) until ``|relation|``
    decreases. Raises :class:`NoRootError` (with ``last`` set) on failure.
    """
    w = complex(guess)
    try:
        fw = complex(relation(w))
    except (DomainError, IllConditionedError) as exc:
        raise NoRootError(f"relation undefined at the guess: {exc}", last=w) from exc
    for _ in range(maxiter):
        if not cmath.isfinite(fw):
            raise NoRootError("relation is not finite", last=w)
        if abs(fw) <= tol:
            return w
        h = rel_step * max(abs(w), 1e-3)
        try:
            dfw = (complex(relation(w + h)) - complex(relation(w - h))) / (2.0 * h)
        except (DomainError, IllConditionedError) as exc:
            raise NoRootError(f"derivative undefined: {exc}", last=w) from exc
        if dfw == 0 or not cmath.isfinite(dfw):
            raise NoRootError("vanishing or non-finite derivative", last=w)
        delta = -fw / dfw
        for _ in range(max_halvings + 1):
            trial = w + delta
            try:
                ft = complex(relation(trial))
            except (DomainError, IllConditionedError):
                ft = complex(math.inf)
            if cmath.isfinite(ft) and abs(ft) < abs(fw):
                break
            delta *= 0.5
        else:
            raise NoRootError("no decrease along the Newton direction", last=w)
        w, fw = trial, ft
    if abs(fw) <= tol:
        return w
    raise NoRootError(f"no convergence in {maxiter} iterations", last=w)


# guesses for the scan: a ladder down the positive imaginary axis plus one below it
DEFAULT_LADDER = tuple(1j * g for g in (0.3, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002,
                                        0.001, 5e-4, 2e-4)) + (-0.1j,)

# roots with Im omega above this count as unstable
UNSTABLE_TOL = 1e-9

SCAN_COLUMNS = ("c", "re_omega", "im_omega", "status")


def relation_for(params, kind="continuous"):
    """``omega -> D`` (``kind="continuous"``) or ``omega -> det A^dt`` (``"semidiscrete"``)."""
    if kind == "continuous":
        if params.a == 0 and params.b == 0:
            return lambda w: continuous_D(params, w)
        return lambda w: det_continuous(params, w)
    if kind == "semidiscrete":
        if params.dt is None:
            raise ConfigurationError("semidiscrete relation needs dt")
        return lambda w: det_semidiscrete(params, w)
    raise ConfigurationError(f"unknown relation kind {kind!r}")


def most_unstable_root(relation, guesses=DEFAULT_LADDER):
    """Root with the largest imaginary part reached from ``guesses``, or ``None``."""
    best = None
    for g in guesses:
        try:
            w = find_root(relation, g)
        except NoRootError:
            continue
        if best is None or w.imag > best.imag:
            best = w
    return best


@dataclass
class ScanTable:
    rows: list

    columns = SCAN_COLUMNS

    def column(self, name):
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self, fh):
        write_csv(fh, self.columns, self.rows)


def growth_rate_scan(c_values, params=WEIBEL_PARAMS, kind="continuous", dt=None,
                     guesses=DEFAULT_LADDER):
    """Most unstable root for each ``c``.

    Rows are ``(c, Re omega, Im omega, status)`` with status ``"unstable"``
    when ``Im omega > 0``, ``"stable"`` when only non-growing roots were found
    (their largest ``Im omega`` is reported) and ``"no_root"`` otherwise.
    """
    if dt is not None:
        params = params.with_(dt=dt)
    rows = []
    for c in c_values:
        rel = relation_for(params.with_(c=float(c)), kind)
        w = most_unstable_root(rel, guesses)
        if w is None:
            rows.append((float(c), math.nan, math.nan, "no_root"))
        else:
            status = "unstable" if w.imag > UNSTABLE_TOL else "stable"
            rows.append((float(c), w.real, w.imag, status))
    return ScanTable(rows)
