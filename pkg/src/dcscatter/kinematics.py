"""Dispersion, branch choices, boosts, comoving frequencies and Bose factors.

All quantities are in natural units (hbar = c = 1, k_B = 1).
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PlaneChannel:
    omega: float
    kpar: tuple
    dim: int = 3

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if len(self.kpar) != self.dim - 1:
            raise ValueError(f"kpar must have {self.dim - 1} components")

    @property
    def k_perp(self):
        return k_perp(self.omega, np.linalg.norm(self.kpar) if self.kpar else 0.0)


@dataclass(frozen=True)
class AngularChannel:
    omega: float
    m: int
    l: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.l is not None and (self.l < 0 or abs(self.m) > self.l):
            raise ValueError(f"invalid spherical order (l={self.l}, m={self.m})")
        if self.n is not None and self.n < 1:
            raise ValueError("waveguide index n must be >= 1")


@dataclass(frozen=True)
class ThermalState:
    T_object: float = 0.0
    T_env: float = 0.0

    def __post_init__(self):
        if self.T_object < 0 or self.T_env < 0:
            raise ValueError("temperatures must be non-negative")


def k_perp(omega, kpar):
    """Perpendicular wavenumber sqrt(omega^2 - |k_par|^2).

    Positive real for propagating channels, positive imaginary for evanescent ones,
    so ``exp(1j * k_perp * d)`` is a phase or a decaying factor.
    """
    omega = np.asarray(omega, dtype=float)
    kpar = np.abs(np.asarray(kpar, dtype=float))
    s = omega**2 - kpar**2
    out = np.where(s >= 0, np.sqrt(np.abs(s)) + 0j, 1j * np.sqrt(np.abs(s)))
    return out[()] if out.ndim == 0 else out


def is_propagating(omega, kpar):
    return np.abs(kpar) < np.abs(omega)


def lorentz_gamma(v):
    v = np.asarray(v, dtype=float)
    if np.any(np.abs(v) >= 1.0):
        raise ValueError("boost velocity must satisfy |v| < c")
    return 1.0 / np.sqrt(1.0 - v**2)


def boost_plane(omega, kpar, v):
    """Boost (omega, k_par) into a frame moving with velocity v along x.

    ``kpar`` may be a scalar k_x or a sequence/array whose first component is k_x.
    Returns ``(omega', kpar', gamma)`` with transverse components unchanged.
    """
    gamma = lorentz_gamma(v)
    kpar = np.asarray(kpar, dtype=float)
    scalar_k = kpar.ndim == 0
    kx = kpar if scalar_k else kpar[0]
    omega_p = gamma * (omega - v * kx)
    kx_p = gamma * (kx - v * omega)
    if scalar_k:
        return omega_p, kx_p, gamma
    kp = np.array(kpar, dtype=float, copy=True)
    kp[0] = kx_p
    return omega_p, kp, gamma


def boost_x(omega, kx, v):
    """Elementwise boost of (omega, k_x) arrays; returns (omega', k_x')."""
    gamma = lorentz_gamma(v)
    return gamma * (omega - v * kx), gamma * (kx - v * omega)


def boost_jacobian(v):
    """d(omega')/d(omega) at fixed k_par for a boost along x."""
    return float(lorentz_gamma(v))


def comoving_freq(omega, m, Omega_rot):
    """Frequency seen in a frame rotating at Omega_rot: omega - Omega_rot * m."""
    return omega - Omega_rot * m


def rotation_jacobian(m, Omega_rot):
    """d(omega~)/d(omega) at fixed m; identically 1 for rotation."""
    return 1.0


def check_jacobian(value):
    if not value > 0:
        raise ValueError(f"comoving Jacobian must be positive, got {value}")
    return value


def bose_occupation(omega, T):
    """Bose-Einstein factor n(omega, T) = 1 / (exp(omega / T) - 1), any sign of omega.

    At T = 0 this is 0 for omega > 0 and -1 for omega < 0, so that
    sgn(omega) n(omega, 0) = -Theta(-omega). omega = 0 is singular for T > 0 and
    ambiguous at T = 0; both raise.
    """
    omega = np.asarray(omega, dtype=float)
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if np.any(omega == 0):
        raise ZeroDivisionError("Bose factor is singular at omega = 0")
    if T == 0:
        out = np.where(omega > 0, 0.0, -1.0)
    else:
        with np.errstate(over="ignore"):
            out = 1.0 / np.expm1(omega / T)
    return out[()] if out.ndim == 0 else out
