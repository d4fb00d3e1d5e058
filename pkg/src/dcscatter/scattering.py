"""Scattering and reflection amplitudes for moving, modulated and lossy bodies.

Off-diagonal (sideband) amplitudes are first order in the drive amplitude ``qtilde``
(the Fourier component of the motion at the drive frequency). They all take
frequencies in natural units (hbar = c = 1) and accept numpy arrays where noted.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .exceptions import ModelConsistencyError, RegimeWarning
from .kinematics import AngularChannel, PlaneChannel, comoving_freq, k_perp

PERTURBATIVE_LIMIT = 0.3


@dataclass(frozen=True)
class DriveSpectrum:
    """Discrete drive harmonics ``[(Omega_j, c_j), ...]``.

    ``c_j`` is the complex amplitude of ``q(t) = Re sum_j c_j exp(-i Omega_j t)``; the
    optional ``q`` is the corrugation wavevector of a plate.
    """
    harmonics: tuple
    q: tuple = None

    def __post_init__(self):
        hs = tuple((float(W), complex(c)) for W, c in self.harmonics)
        object.__setattr__(self, "harmonics", hs)
        freqs = [W for W, _ in hs]
        if any(W <= 0 for W in freqs):
            raise ValueError("drive frequencies must be strictly positive")
        if len(set(freqs)) != len(freqs):
            raise ValueError("drive frequencies must be distinct")
        for W, c in hs:
            if abs(c) * W > PERTURBATIVE_LIMIT:
                warnings.warn(f"drive |c| Omega = {abs(c) * W:.3g} is outside the perturbative "
                              f"regime (> {PERTURBATIVE_LIMIT})", RegimeWarning, stacklevel=3)

    @classmethod
    def monochromatic(cls, Omega, amplitude, q=None):
        return cls(((Omega, amplitude),), q=q)

    def qtilde(self, Omega):
        """Fourier component at ``Omega``: c_j / 2 for the matching harmonic, else 0."""
        for W, c in self.harmonics:
            if W == Omega:
                return 0.5 * c
        return 0.0


class PerfectDirichlet:
    """Field vanishes on the body (epsilon -> infinity)."""
    lossy = False

    def eps(self, omega):
        return np.full(np.shape(omega), np.inf + 0j)[()]

    def __repr__(self):
        return "PerfectDirichlet()"


class Vacuum:
    lossy = False

    def eps(self, omega):
        return np.ones(np.shape(omega), dtype=complex)[()]

    def __repr__(self):
        return "Vacuum()"


@dataclass(frozen=True)
class DrudeLorentz:
    """Single-pole response eps(w) = 1 + wp^2 / (w0^2 - w^2 - i gamma w)."""
    omega_p: float
    omega_0: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.omega_p < 0 or self.omega_0 < 0 or self.gamma < 0:
            raise ValueError("Drude-Lorentz parameters must be non-negative")

    @property
    def lossy(self):
        return self.gamma > 0

    def eps(self, omega):
        omega = np.asarray(omega, dtype=float)
        out = 1.0 + self.omega_p**2 / (self.omega_0**2 - omega**2 - 1j * self.gamma * omega)
        return out[()] if out.ndim == 0 else out


def refractive_index(material, omega):
    """n = sqrt(eps) on the branch Im n >= 0."""
    return _sqrt_upper(material.eps(omega))


def _sqrt_upper(z):
    s = np.sqrt(np.asarray(z, dtype=complex))
    flip = (s.imag < 0) | ((s.imag == 0) & (s.real < 0))
    s = np.where(flip, -s, s)
    return s[()] if s.ndim == 0 else s


@dataclass(frozen=True)
class ScatteringAmplitude:
    in_channel: object
    out_channel: object
    value: complex
    flags: tuple = field(default=())

    def __post_init__(self):
        if not np.all(np.isfinite(self.value)):
            raise ValueError("scattering amplitude is not finite")

    def __abs__(self):
        return np.abs(self.value)


def s_point_mirror_1d(omega, Omega, qtilde):
    """Sideband amplitude S_{w+W, w} = -2i q(W) sqrt|(w+W) w| of a Dirichlet point."""
    value = -2j * qtilde * np.sqrt(np.abs((omega + Omega) * omega))
    return ScatteringAmplitude(PlaneChannel(omega, (), 1), PlaneChannel(omega + Omega, (), 1),
                               value)


def static_delta_mirror(omega, eps0):
    """Static reflection and transmission of the potential eps0 * delta(x)."""
    if eps0 <= 0:
        raise ValueError("eps0 must be positive")
    r = -eps0 / (eps0 - 2j * omega)
    return r, 1.0 + r


def s_modulated_mirror_1d(omega, Omega, eps0, epsOmega):
    """First sidebands (r+, r-, t+, t-) of a delta mirror with strength eps0 + epsOmega cos(Wt).

    r_pm = t_pm = i epsOmega sqrt|w (w pm W)| / ((eps0 - 2iw)(eps0 - 2i(w pm W))).
    """
    if eps0 <= 0:
        raise ValueError("eps0 must be positive")
    out = []
    for s in (1.0, -1.0):
        w2 = omega + s * Omega
        out.append(1j * epsOmega * np.sqrt(np.abs(omega * w2))
                   / ((eps0 - 2j * omega) * (eps0 - 2j * w2)))
    r_plus, r_minus = out
    return r_plus, r_minus, r_plus, r_minus


def s_plate_sideband(channel_in, Omega, qvec, qtilde):
    """Sideband S = -2i q(W, q) sqrt(k_perp(w, k) k_perp(w + W, k + q)) of a plane mirror.

    Covers the 2+1 line (dim 2), the 3+1 plate (dim 3) and corrugated plates (q != 0).
    Channels outside the doubly propagating window are evaluated but flagged.
    """
    k = np.asarray(channel_in.kpar, dtype=float)
    q = np.zeros_like(k) if qvec is None else np.asarray(qvec, dtype=float)
    if q.shape != k.shape:
        raise ValueError("q must have the same number of components as k_par")
    k_out = k + q
    w_out = channel_in.omega + Omega
    k_in_abs = np.linalg.norm(k) if k.size else 0.0
    k_out_abs = np.linalg.norm(k_out) if k.size else 0.0
    value = plate_sideband_value(channel_in.omega, k_in_abs, w_out, k_out_abs, qtilde)
    propagating = abs(k_in_abs) < abs(channel_in.omega) and abs(k_out_abs) < abs(w_out)
    flags = () if propagating else ("evanescent",)
    return ScatteringAmplitude(channel_in, PlaneChannel(w_out, tuple(k_out), channel_in.dim),
                               complex(value), flags)


def plate_sideband_value(omega, kabs, omega_out, kabs_out, qtilde):
    """Vectorised value of :func:`s_plate_sideband` from |k_par| on both sides."""
    return -2j * qtilde * np.sqrt(k_perp(omega, kabs) * k_perp(omega_out, kabs_out))


def d_coeff(l, lp, m):
    """Angular coupling d_{l' l m} of cos(theta); nonzero only for l' = l +- 1."""
    if l < 0 or lp < 0:
        raise ValueError("spherical orders must be non-negative")
    if abs(m) > min(l, lp):
        raise ValueError(f"|m|={abs(m)} exceeds min(l, l')={min(l, lp)}")
    if abs(l - lp) != 1:
        return 0.0
    L = min(l, lp)
    return math.sqrt((L + m + 1) * (L - m + 1) / ((2 * L + 1) * (2 * L + 3)))


def s_sphere_oscillating(omega, Omega, l, lp, m, R, qtilde):
    """Sideband of a sphere oscillating along z.

    S = 2i q d_{l'lm} sqrt|(w+W) w| F_l(wR) F_l'((w+W)R).
    """
    d = d_coeff(l, lp, m)
    w_out = omega + Omega
    value = 0j
    if d:
        value = (2j * qtilde * d * math.sqrt(abs(w_out * omega))
                 * specfun.mode_factor_F(l, omega * R) * specfun.mode_factor_F(lp, w_out * R))
    return ScatteringAmplitude(AngularChannel(omega, m, l), AngularChannel(w_out, m, lp),
                               complex(value))


def s_disk_oscillating(omega, Omega, m, R, qtilde, mp=None):
    """Sideband of a disk oscillating along x: S = (2i q / pi R) M_m(wR) M_m'((w+W)R).

    With ``mp`` given returns that single amplitude (zero unless m' = m +- 1), otherwise
    the pair (m -> m+1, m -> m-1).
    """
    if mp is None:
        return (s_disk_oscillating(omega, Omega, m, R, qtilde, m + 1),
                s_disk_oscillating(omega, Omega, m, R, qtilde, m - 1))
    w_out = omega + Omega
    value = 0j
    if abs(mp - m) == 1:
        value = (2j * qtilde / (math.pi * R) * specfun.mode_factor_M(m, omega * R)
                 * specfun.mode_factor_M(mp, w_out * R))
    return ScatteringAmplitude(AngularChannel(omega, m), AngularChannel(w_out, mp),
                               complex(value))


def s_disk_oscillating_lowfreq(omega, Omega, R, delta, mp):
    """Low-frequency form -+ i pi (w+W) delta / (4 log(|w| R)) of the 0 -> +-1 sidebands."""
    if abs(mp) != 1:
        return 0j
    return -mp * 1j * math.pi * (omega + Omega) * delta / (4.0 * math.log(abs(omega) * R))


def s_ellipse_spinning(omega, Omega, R, delta):
    """The two Delta m = 2 sidebands of an ellipse r = R + delta cos(2 phi)/2 spinning at W."""
    w_out = omega + 2.0 * Omega
    a = 1j * math.pi * w_out**2 * R * delta / (8.0 * math.log(abs(omega) * R))
    b = 1j * math.pi * omega**2 * R * delta / (8.0 * math.log(abs(w_out) * R))
    return (ScatteringAmplitude(AngularChannel(omega, 0), AngularChannel(w_out, 2), a),
            ScatteringAmplitude(AngularChannel(omega, -2), AngularChannel(w_out, 0), b))


def s_disk_orbital(omega, Omega, R, delta):
    """The two Delta m = 1 sidebands of a disk whose centre orbits at radius delta."""
    w_out = omega + Omega
    a = -1j * math.pi * w_out * delta / (2.0 * math.log(abs(omega) * R))
    b = 1j * math.pi * omega * delta / (2.0 * math.log(abs(w_out) * R))
    return (ScatteringAmplitude(AngularChannel(omega, 0), AngularChannel(w_out, 1), a),
            ScatteringAmplitude(AngularChannel(omega, -1), AngularChannel(w_out, 0), b))


def s_static_dirichlet(geometry, channel, omega, R=1.0):
    """Static Dirichlet S: -h_l^(2)/h_l^(1) (sphere) or -H_m^(2)/H_m^(1) (disk) at wR.

    ``channel`` is the order (l or m) or an :class:`AngularChannel`.
    """
    order = channel.l if geometry == "sphere" and isinstance(channel, AngularChannel) else (
        channel.m if isinstance(channel, AngularChannel) else channel)
    x = omega * R
    if x == 0:
        raise ValueError("static S-matrix needs omega != 0")
    if geometry == "sphere":
        h1 = specfun.sph_bessel("h1", order, abs(x))
        s = -np.conj(h1) / h1
    elif geometry == "disk":
        h1 = specfun.cyl_hankel(1, order, abs(x))
        s = -np.conj(h1) / h1
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    # both continuations give S(-w) = conj S(w)
    return complex(s if x > 0 else np.conj(s))


def _lossy_sphere_parts(l, omega, a, material, Omega_rot, m):
    """Matching combinations A, B, the outer x = wa and the Hankel values for w > 0."""
    x = omega * a
    wt = comoving_freq(omega, m, Omega_rot)
    k_in = complex(_sqrt_upper(material.eps(wt))) * wt
    z = k_in * a
    try:
        h, dh = specfun._sph_h1_scalar(l, x)
    except OverflowError:
        return 0j, 0j, x, complex("inf"), complex("inf")
    if z == 0:
        # interior field regular: constant (l = 0) or vanishing like r^l (l > 0)
        A, B = (0j, complex(omega)) if l == 0 else (complex(l), complex(omega * a))
        return A, B, x, h[l], dh[l]
    # S only depends on the ratio A : B, so the scaled interior functions suffice
    j, dj = specfun._sph_j_scalar(l, z, scaled=True)
    return k_in * dj[l], omega * j[l], x, h[l], dh[l]


def s_lossy_sphere(l, omega, a, material, Omega_rot=0.0, m=0):
    """Partial-wave S of a homogeneous sphere, optionally rotating at Omega_rot.

    S = -(h2 dj - h2' k j) / (h1 dj - h1' k j) with dj = k_in j_l'(k_in a), the interior
    wavenumber taken at the comoving frequency, k_in^2 = eps(w~) w~^2.
    """
    if a <= 0:
        raise ValueError("sphere radius must be positive")
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid spherical order (l={l}, m={m})")
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if omega < 0:
        return complex(np.conj(s_lossy_sphere(l, -omega, a, material, Omega_rot, -m)))
    if isinstance(material, PerfectDirichlet):
        return s_static_dirichlet("sphere", l, omega, a)
    if isinstance(material, Vacuum):
        return 1.0 + 0j
    A, B, x, h1, h1p = _lossy_sphere_parts(l, omega, a, material, Omega_rot, m)
    num = np.conj(h1) * A - np.conj(h1p) * B
    den = h1 * A - h1p * B
    return complex(-num / den)


def lossy_sphere_loss(l, omega, a, material, Omega_rot=0.0, m=0):
    """1 - |S_lm(w)|^2 without cancellation: -4 Im(A B*) / (x^2 |h1 A - h1' B|^2)."""
    if omega < 0:
        return lossy_sphere_loss(l, -omega, a, material, Omega_rot, -m)
    if isinstance(material, (PerfectDirichlet, Vacuum)):
        return 0.0
    A, B, x, h1, h1p = _lossy_sphere_parts(l, omega, a, material, Omega_rot, m)
    den = h1 * A - h1p * B
    if not np.isfinite(den):
        return 0.0
    return float(-4.0 * (A * np.conj(B)).imag / (x * x * abs(den) ** 2))


def reflection_halfspace(omega, kpar, material):
    """Reflection amplitude of a half-space with permittivity eps(w).

    R = -(sqrt(eps w^2 - k^2) - sqrt(w^2 - k^2)) / (sqrt(eps w^2 - k^2) + sqrt(w^2 - k^2)),
    both roots on the Im >= 0 branch at w > 0; negative frequencies use R(-w) = R(w)*.
    """
    omega = np.asarray(omega, dtype=float)
    kpar = np.abs(np.asarray(kpar, dtype=float))
    if isinstance(material, PerfectDirichlet):
        out = np.full(np.broadcast(omega, kpar).shape, -1.0 + 0j)
        return out[()] if out.ndim == 0 else out
    aw = np.abs(omega)
    eps = material.eps(aw)
    kz = k_perp(aw, kpar)
    kz_in = _sqrt_upper(eps * aw**2 - kpar**2)
    r = -(kz_in - kz) / (kz_in + kz)
    r = np.where(omega < 0, np.conj(r), r)
    return r[()] if r.ndim == 0 else r


def u_weight(amplitude, wave_type, comoving_sign=1.0, jacobian=1.0, tol=1e-10):
    """Loss weight |U|^2 from unitarity.

    ``amplitude`` is a diagonal reflection/S entry: 1 - |R|^2 for propagating channels,
    2 Im R for evanescent ones. ``comoving_sign`` is sgn of the rest-frame frequency and
    ``jacobian`` the positive d(w')/dw; the weight is sign * w / jacobian.
    """
    amplitude = np.asarray(amplitude, dtype=complex)
    if wave_type == "propagating":
        w = 1.0 - np.abs(amplitude) ** 2
    elif wave_type == "evanescent":
        w = 2.0 * amplitude.imag
    else:
        raise ValueError(f"unknown wave type {wave_type!r}")
    if not np.all(np.asarray(jacobian) > 0):
        raise ValueError("Jacobian must be positive")
    out = comoving_sign * w / jacobian
    if np.any(out < -tol):
        raise ModelConsistencyError(f"negative loss weight {np.min(out):.3g}: material model "
                                    "is not passive")
    out = np.maximum(out, 0.0)
    return out[()] if out.ndim == 0 else out
