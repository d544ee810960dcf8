"""Phase-space grid, simulation state and the Landau / Weibel initial data."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigurationError
from .spectral import check_nx, half_wavenumbers, irfft_x, rfft_x


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform grid over ``(x, p1, p2)``.

    ``x_m = m L / Nx`` on the periodic interval ``[0, L)``; momentum nodes
    ``-pmax + i dp`` with ``dp = 2 pmax / Np`` (``pmax`` itself excluded).
    """

    Nx: int
    Np1: int
    Np2: int
    L: float
    pmax: float

    def __post_init__(self):
        check_nx(self.Nx)
        if min(self.Nx, self.Np1, self.Np2) < 4:
            raise ConfigurationError("all grid counts must be >= 4")
        if not self.L > 0 or not self.pmax > 0:
            raise ConfigurationError("L and pmax must be positive")

    @property
    def shape(self):
        return (self.Nx, self.Np1, self.Np2)

    @property
    def dx(self):
        return self.L / self.Nx

    @property
    def dp1(self):
        return 2.0 * self.pmax / self.Np1

    @property
    def dp2(self):
        return 2.0 * self.pmax / self.Np2

    @property
    def dv(self):
        """Momentum cell area used by the quadrature."""
        return self.dp1 * self.dp2

    @property
    def x(self):
        return np.arange(self.Nx) * self.dx

    @property
    def p1(self):
        return -self.pmax + np.arange(self.Np1) * self.dp1

    @property
    def p2(self):
        return -self.pmax + np.arange(self.Np2) * self.dp2

    @property
    def k(self):
        """Wavenumbers of the half spectrum ``j = 0..Nx/2``."""
        return half_wavenumbers(self.Nx, self.L)

    @property
    def k0(self):
        """Fundamental wavenumber ``2 pi / L``."""
        return 2.0 * np.pi / self.L


@dataclass(frozen=True)
class FieldState:
    E1: np.ndarray
    E2: np.ndarray
    B: np.ndarray

    @classmethod
    def zeros(cls, nx):
        return cls(np.zeros(nx), np.zeros(nx), np.zeros(nx))


@dataclass(frozen=True)
class SimState:
    """Distribution function ``f`` of shape ``(Nx, Np1, Np2)`` plus fields."""

    f: np.ndarray
    fields: FieldState
    grid: PhaseGrid
    t: float = 0.0
    c: float = 1.0
    relativistic: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    def replace(self, **changes):
        return replace(self, **changes)


def lorentz_gamma(p1, p2, c, relativistic):
    """``sqrt(1 + (p1^2 + p2^2)/c^2)``, or exactly 1 in the semi-relativistic model."""
    if not relativistic:
        shape = np.broadcast(np.asarray(p1), np.asarray(p2)).shape
        return np.ones(shape) if shape else 1.0
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    return np.sqrt(1.0 + (p1 * p1 + p2 * p2) / (c * c))


def gamma_on_grid(grid, c, relativistic):
    """Lorentz factor on the momentum nodes, shape ``(Np1, Np2)``."""
    return lorentz_gamma(grid.p1[:, None], grid.p2[None, :], c, relativistic) * np.ones(
        (grid.Np1, grid.Np2)
    )


def charge_density(f, grid):
    """``rho(x) = int f dp - 1``."""
    return f.sum(axis=(1, 2)) * grid.dv - 1.0


def gauss_consistent_e1(f, grid):
    """E1 solving ``d_x E1 = rho`` with zero mean, by spectral division."""
    rho_hat = rfft_x(charge_density(f, grid))
    k = grid.k
    e1_hat = np.zeros_like(rho_hat)
    e1_hat[1:] = rho_hat[1:] / (1j * k[1:])
    if grid.Nx % 2 == 0:
        e1_hat[-1] = 0.0
    return irfft_x(e1_hat, grid.Nx)


def _check_fundamental(grid, k):
    if not np.isclose(k, grid.k0, rtol=1e-12, atol=0.0):
        raise ConfigurationError(f"k={k} is not the fundamental mode 2 pi / L = {grid.k0}")


def landau_grid(nx=64, np1=256, np2=None, k=0.4, pmax=5.0):
    return PhaseGrid(nx, np1, np2 or np1, 2.0 * np.pi / k, pmax)


def weibel_grid(nx=64, np1=256, np2=None, k=1.25, pmax=0.3):
    return PhaseGrid(nx, np1, np2 or np1, 2.0 * np.pi / k, pmax)


def init_landau(grid, alpha=0.01, k=0.4, c=1.0, relativistic=False):
    """Perturbed isotropic Maxwellian with a plane electromagnetic wave.

    ``f0 = exp(-|p|^2/2)/(2 pi) (1 + alpha cos kx)``, ``E2 = 0``,
    ``B = alpha/(c k) sin kx``. ``E1`` is the discrete Gauss solution, which
    equals ``(alpha/k) sin kx`` up to the Gaussian truncation at ``pmax``.
    """
    _check_fundamental(grid, k)
    x, p1, p2 = grid.x, grid.p1, grid.p2
    maxw = np.exp(-0.5 * (p1[:, None] ** 2 + p2[None, :] ** 2)) / (2.0 * np.pi)
    f = (1.0 + alpha * np.cos(k * x))[:, None, None] * maxw[None, :, :]
    fields = FieldState(
        E1=gauss_consistent_e1(f, grid),
        E2=np.zeros(grid.Nx),
        B=alpha / (c * k) * np.sin(k * x),
    )
    return SimState(f, fields, grid, 0.0, float(c), bool(relativistic),
                    meta={"scenario": "landau", "alpha": alpha, "k": k})


def init_weibel(grid, alpha=1e-4, k=1.25, T_r=12.0, p_th=0.02, c=1.0, relativistic=False):
    """Temperature-anisotropic Maxwellian seeded by a magnetic perturbation.

    ``f0 = exp(-(p1^2 + p2^2/T_r)/p_th^2) / (pi p_th^2 sqrt(T_r)) (1 + alpha cos kx)``,
    ``E2 = 0``, ``B = alpha/(c k) cos kx`` and ``E1`` from Gauss's law. The
    normalization constant is used as is.
    """
    if not T_r > 0 or not p_th > 0:
        raise ConfigurationError("T_r and p_th must be positive")
    _check_fundamental(grid, k)
    x, p1, p2 = grid.x, grid.p1, grid.p2
    expo = -(p1[:, None] ** 2 + p2[None, :] ** 2 / T_r) / p_th**2
    f0p = np.exp(expo) / (np.pi * p_th**2 * np.sqrt(T_r))
    f = (1.0 + alpha * np.cos(k * x))[:, None, None] * f0p[None, :, :]
    fields = FieldState(
        E1=gauss_consistent_e1(f, grid),
        E2=np.zeros(grid.Nx),
        B=alpha / (c * k) * np.cos(k * x),
    )
    return SimState(f, fields, grid, 0.0, float(c), bool(relativistic),
                    meta={"scenario": "weibel", "alpha": alpha, "k": k,
                          "T_r": T_r, "p_th": p_th})
