"""Fourier transforms along the periodic x direction.

Coefficients are normalized so that mode 0 is the mean of the samples,
``u(x_m) = sum_j coeff(j) exp(i k_j x_m)`` with ``k_j = 2 pi j / L``.
Full lines index modes ``j = -Nx/2+1, ..., Nx/2``; the solver itself works on
the half spectrum (``rfft`` layout, ``j = 0..Nx/2``) since every field is real.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .errors import ConfigurationError, ConsistencyError

HERMITIAN_TOL = 1e-10

_workers = None


def set_fft_workers(n):
    """Cap the number of threads used by scipy.fft (``None`` or 0 = default)."""
    global _workers
    _workers = n if n and n > 0 else None


def fft_workers():
    if _workers is None:
        env = os.environ.get("APVM_THREADS", "")
        if env.strip().isdigit() and int(env) > 0:
            return int(env)
    return _workers


def is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


def check_nx(nx):
    if not is_power_of_two(int(nx)):
        raise ConfigurationError(f"Nx must be a power of two, got {nx}")


def mode_indices(nx):
    """Integer mode numbers in FFT storage order, Nyquist taken as +Nx/2."""
    j = np.fft.fftfreq(nx, d=1.0 / nx).astype(int)
    j[nx // 2] = nx // 2
    return j


def wavenumber(j, L):
    """Angular wavenumber ``2 pi j / L`` of mode ``j``."""
    return 2.0 * np.pi * np.asarray(j) / L


def half_wavenumbers(nx, L):
    """Wavenumbers of the half spectrum ``j = 0..Nx/2``."""
    return wavenumber(np.arange(nx // 2 + 1), L)


@dataclass(frozen=True)
class SpectralLine:
    """Fourier coefficients of a real periodic signal, FFT storage order."""

    coeffs: np.ndarray
    L: float

    @property
    def nx(self):
        return self.coeffs.shape[0]

    @property
    def modes(self):
        return mode_indices(self.nx)

    @property
    def k(self):
        return wavenumber(self.modes, self.L)

    def coeff(self, j):
        """Coefficient of integer mode ``j`` (``-Nx/2 < j <= Nx/2``)."""
        n = self.nx
        if not -n // 2 < j <= n // 2:
            raise IndexError(f"mode {j} outside (-{n // 2}, {n // 2}]")
        return self.coeffs[j % n]


def forward_x(samples, L):
    """Transform real samples on the uniform x grid into a :class:`SpectralLine`."""
    u = np.asarray(samples, dtype=float)
    check_nx(u.shape[0])
    if not L > 0:
        raise ConfigurationError(f"domain length must be positive, got {L}")
    return SpectralLine(scipy.fft.fft(u, axis=0, workers=fft_workers()) / u.shape[0], float(L))


def hermitian_defect(coeffs):
    """Max over modes of ``|c(-j) - conj(c(j))|``."""
    c = np.asarray(coeffs)
    mirrored = np.roll(c[::-1], 1, axis=0)
    return float(np.max(np.abs(mirrored - np.conj(c)))) if c.size else 0.0


def inverse_x(line):
    """Real samples from a Hermitian-symmetric line.

    The line is symmetrized before transforming; an asymmetry larger than
    ``HERMITIAN_TOL`` (relative to the largest coefficient, floor 1) raises
    :class:`ConsistencyError`.
    """
    c = np.asarray(line.coeffs, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(c)))) if c.size else 1.0
    if hermitian_defect(c) > HERMITIAN_TOL * scale:
        raise ConsistencyError("spectral line is not Hermitian symmetric")
    n = c.shape[0]
    sym = 0.5 * (c + np.conj(np.roll(c[::-1], 1, axis=0)))
    return np.real(scipy.fft.ifft(sym * n, axis=0, workers=fft_workers()))


def rfft_x(u):
    """Half-spectrum coefficients along axis 0, normalized like :func:`forward_x`."""
    return scipy.fft.rfft(u, axis=0, workers=fft_workers()) / u.shape[0]


def irfft_x(c, nx):
    """Inverse of :func:`rfft_x`. The Nyquist coefficient's imaginary part is dropped."""
    return scipy.fft.irfft(c * nx, n=nx, axis=0, workers=fft_workers())
