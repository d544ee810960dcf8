"""One-step integrators for the linear Maxwell mode system.

For each Fourier mode the pair ``y = (E2_hat, B_hat)`` obeys ``y' = M y`` with

    M = [[0, -i c^2 k],
         [-i k,     0]],

whose eigenvalues are ``+-i c k``. Since ``M^2 = -c^2 k^2 I``, every rational
function of ``dt M`` collapses to ``alpha I + beta dt M``; the production maps
below use that closed form. :func:`rk_stage_map` solves the Runge-Kutta stage
equations directly and serves as the independent check.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import ConfigurationError, DomainError

SQRT2 = np.sqrt(2.0)
SDIRK_GAMMA = 1.0 - 1.0 / SQRT2


class MaxwellMethod(enum.Enum):
    EXACT = "exact"
    CRANK_NICOLSON = "cn"
    IMPLICIT_EULER = "euler"
    RADAU_IIA3 = "radau3"
    SDIRK2 = "sdirk2"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "exact": cls.EXACT,
            "cn": cls.CRANK_NICOLSON, "cranknicolson": cls.CRANK_NICOLSON,
            "euler": cls.IMPLICIT_EULER,
            "impliciteuler": cls.IMPLICIT_EULER, "ie": cls.IMPLICIT_EULER,
            "radau3": cls.RADAU_IIA3, "radauiia3": cls.RADAU_IIA3, "radau": cls.RADAU_IIA3,
            "sdirk2": cls.SDIRK2, "sdirk": cls.SDIRK2,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ConfigurationError(f"unknown Maxwell method {name!r}") from None


# Butcher tableaux (A, b) of the implicit methods
TABLEAUX = {
    MaxwellMethod.IMPLICIT_EULER: (np.array([[1.0]]), np.array([1.0])),
    MaxwellMethod.CRANK_NICOLSON: (np.array([[0.0, 0.0], [0.5, 0.5]]), np.array([0.5, 0.5])),
    MaxwellMethod.RADAU_IIA3: (
        np.array([[5.0 / 12.0, -1.0 / 12.0], [3.0 / 4.0, 1.0 / 4.0]]),
        np.array([3.0 / 4.0, 1.0 / 4.0]),
    ),
    MaxwellMethod.SDIRK2: (
        np.array([[SDIRK_GAMMA, 0.0], [1.0 - 2.0 * SDIRK_GAMMA, SDIRK_GAMMA]]),
        np.array([0.5, 0.5]),
    ),
}


def _rational(method, z):
    """Numerator and denominator of the stability function."""
    if method is MaxwellMethod.CRANK_NICOLSON:
        return 1.0 + z / 2.0, 1.0 - z / 2.0
    if method is MaxwellMethod.IMPLICIT_EULER:
        return 1.0 + 0.0 * z, 1.0 - z
    if method is MaxwellMethod.RADAU_IIA3:
        return 1.0 + z / 3.0, 1.0 - 2.0 * z / 3.0 + z * z / 6.0
    if method is MaxwellMethod.SDIRK2:
        return 1.0 + (SQRT2 - 1.0) * z, (1.0 + (SQRT2 / 2.0 - 1.0) * z) ** 2
    raise ValueError(method)


def stability_function(method, z):
    """Scalar amplification ``phi(z)`` of ``method`` for ``y' = lambda y``, ``z = lambda dt``."""
    method = MaxwellMethod.parse(method)
    z = np.asarray(z, dtype=complex)
    if method is MaxwellMethod.EXACT:
        return np.exp(z)[()]
    num, den = _rational(method, z)
    if np.any(np.abs(den) <= 1e-14 * (1.0 + np.abs(z) ** 2)):
        raise DomainError(f"{method.value}: z is a pole of the stability function")
    return (num / den)[()]


def eigen_amplification(method, k, c, dt):
    """``max |phi(+-i c k dt)|``, the per-step modulus on the Maxwell eigenvalues."""
    y = c * np.asarray(k, dtype=float) * dt
    return np.maximum(np.abs(stability_function(method, 1j * y)),
                      np.abs(stability_function(method, -1j * y)))[()]


def map_coefficients(method, k, c, dt):
    """``(alpha, beta)`` such that the one-step map is ``alpha I + beta dt M``."""
    method = MaxwellMethod.parse(method)
    k = np.asarray(k, dtype=float)
    y = c * k * dt
    w = y * y
    if method is MaxwellMethod.EXACT:
        # exp(dt M) = cos(y) I + sin(y)/y dt M
        return np.cos(y), np.sinc(y / np.pi)
    if method is MaxwellMethod.CRANK_NICOLSON:
        den = 1.0 + w / 4.0
        return (1.0 - w / 4.0) / den, 1.0 / den
    if method is MaxwellMethod.IMPLICIT_EULER:
        den = 1.0 + w
        return 1.0 / den, 1.0 / den
    if method is MaxwellMethod.RADAU_IIA3:
        # (I + Z/3) (a I - 2/3 Z)^{-1}, a = 1 - w/6, using Z^2 = -w I
        a = 1.0 - w / 6.0
        den = a * a + 4.0 * w / 9.0
        return (a - 2.0 * w / 9.0) / den, (2.0 + a) / 3.0 / den
    if method is MaxwellMethod.SDIRK2:
        g, bt = SDIRK_GAMMA, SQRT2 - 1.0
        den = (1.0 + g * g * w) ** 2
        return (1.0 - g * g * w - 2.0 * g * bt * w) / den, (2.0 * g + bt * (1.0 - g * g * w)) / den
    raise ValueError(method)


def advance_mode(method, e2, b, k, c, dt):
    """Advance ``(E2_hat, B_hat)`` by one step of ``method``; vectorized over modes."""
    alpha, beta = map_coefficients(method, k, c, dt)
    k = np.asarray(k, dtype=float)
    e2 = np.asarray(e2, dtype=complex)
    b = np.asarray(b, dtype=complex)
    # dt M y = (-i c^2 k dt b, -i k dt e2)
    e2_new = alpha * e2 + beta * (-1j * c * c * k * dt) * b
    b_new = alpha * b + beta * (-1j * k * dt) * e2
    return e2_new, b_new


def mode_matrix(k, c):
    return np.array([[0.0, -1j * c * c * k], [-1j * k, 0.0]])


def rk_stage_map(method, k, c, dt):
    """2x2 one-step matrix obtained by solving the Runge-Kutta stage system.

    For ``y' = M y`` the stages satisfy ``Y = 1 (x) y + dt (A (x) M) Y`` and
    ``y1 = y + dt (b^T (x) M) Y``.
    """
    method = MaxwellMethod.parse(method)
    if method is MaxwellMethod.EXACT:
        from scipy.linalg import expm

        return expm(dt * mode_matrix(k, c))
    A, bw = TABLEAUX[method]
    s = len(bw)
    M = mode_matrix(k, c)
    lhs = np.eye(2 * s, dtype=complex) - dt * np.kron(A, M)
    rhs = np.kron(np.ones((s, 1)), np.eye(2))
    Y = np.linalg.solve(lhs, rhs)
    return np.eye(2) + dt * np.kron(bw[None, :], M) @ Y
