"""Radiation from lossless bodies in prescribed motion.

Every drive harmonic (Omega, c) radiates, to second order in c,

    P = f(Omega) |c|^2 / 4,
    f(Omega) = s int_{-Omega}^0 dw/2pi (w + Omega) sum_channels |S_{w+Omega, w}|^2,

with the sideband amplitude S evaluated at unit Fourier amplitude and ``s`` the number
of scattering sides. The |c|^2/4 folding is the steady-state limit of a long
monochromatic pulse; it equals the same integral taken with qtilde = c/2.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import quad, scattering, specfun
from .exceptions import RegimeWarning, TruncationWarning

SMALL_BODY_LIMIT = 0.1


# -- geometries ------------------------------------------------------------------------

@dataclass(frozen=True)
class Point1D:
    """Dirichlet point mirror in 1+1 dimensions."""
    sides: int = 2


@dataclass(frozen=True)
class ModulatedMirror1D:
    """Delta mirror with strength eps0 + epsOmega cos(Omega t); the drive carries epsOmega."""
    eps0: float
    sides: int = 2

    def __post_init__(self):
        if self.eps0 <= 0:
            raise ValueError("eps0 must be positive")


@dataclass(frozen=True)
class Line2D:
    L: float
    sides: int = 2


@dataclass(frozen=True)
class WaveguideSegment:
    """Plate of width L spanning a waveguide; transverse modes k_n = n pi / L."""
    L: float
    sides: int = 2


@dataclass(frozen=True)
class Plate3D:
    area: float
    sides: int = 2


@dataclass(frozen=True)
class CorrugatedPlate3D:
    """Plate with a travelling corrugation of wavevector q; one side radiates."""
    area: float
    q: tuple
    sides: int = 1


@dataclass(frozen=True)
class Sphere3D:
    R: float
    l_max: int = None
    sides: int = 1


@dataclass(frozen=True)
class Disk2D:
    """Disk of radius R; ``mode`` is ``"oscillate"`` (along x) or ``"orbit"``."""
    R: float
    mode: str = "oscillate"
    sides: int = 1

    def __post_init__(self):
        if self.mode not in ("oscillate", "orbit"):
            raise ValueError(f"unknown disk mode {self.mode!r}")


@dataclass(frozen=True)
class Ellipse2D:
    """Near-circular ellipse r = R + delta cos(2 phi)/2 spinning at Omega_spin."""
    R: float
    delta: float
    Omega_spin: float
    sides: int = 1


_LENGTHS = {Line2D: "L", WaveguideSegment: "L", Plate3D: "area", CorrugatedPlate3D: "area",
            Sphere3D: "R", Disk2D: "R", Ellipse2D: "R"}


@dataclass(frozen=True)
class GeometryScenario:
    geometry: object
    drive: scattering.DriveSpectrum = None
    side_multiplicity: int = None

    def __post_init__(self):
        attr = _LENGTHS.get(type(self.geometry))
        if attr is not None and not getattr(self.geometry, attr) > 0:
            raise ValueError(f"{type(self.geometry).__name__}.{attr} must be positive")
        if self.side_multiplicity is None:
            object.__setattr__(self, "side_multiplicity", self.geometry.sides)
        if self.side_multiplicity not in (1, 2):
            raise ValueError("side_multiplicity must be 1 or 2")


@dataclass(frozen=True)
class HarmonicPower:
    Omega: float
    power: float
    abs_err: float


@dataclass(frozen=True)
class PowerSpectrum:
    entries: tuple
    notes: tuple = field(default=())

    @property
    def total(self):
        return math.fsum(e.power for e in self.entries)

    @property
    def abs_err(self):
        return math.fsum(e.abs_err for e in self.entries)


@dataclass(frozen=True)
class SpectralResult:
    value: float
    abs_err: float
    tail: float = 0.0
    torque: float = None


# -- spectral prefactors f(Omega) at unit Fourier amplitude ----------------------------

def _window(integrand, Omega, rel_tol, hint=None, points=None):
    return quad.integrate_adaptive(integrand, -Omega, 0.0, rel_tol=rel_tol,
                                   singularity_hint=hint, points=points)


def spectral_factor_point(Omega, sides=2, rel_tol=1e-10):
    def integrand(w):
        s = scattering.s_point_mirror_1d(w, Omega, 1.0).value
        return (w + Omega) * abs(s) ** 2 / (2 * math.pi)
    return _window(integrand, Omega, rel_tol).scaled(sides)


def spectral_factor_modulated(Omega, eps0, sides=2, rel_tol=1e-10):
    def integrand(w):
        # unit Fourier amplitude of eps(t) corresponds to epsOmega = 2
        r_plus, _, t_plus, _ = scattering.s_modulated_mirror_1d(w, Omega, eps0, 2.0)
        return (w + Omega) * (abs(r_plus) ** 2 + abs(t_plus) ** 2) / (2 * math.pi)
    return _window(integrand, Omega, rel_tol).scaled(sides)


def _plate_sq(w, kin, Omega, kout):
    return np.abs(scattering.plate_sideband_value(w, kin, w + Omega, kout, 1.0)) ** 2


def spectral_factor_line(Omega, L=1.0, sides=2, rel_tol=1e-8):
    """f(Omega) for the 2+1 line: L int dw/2pi (w+W) int dk/2pi |S|^2."""
    def f(w, k):
        return (w + Omega) * _plate_sq(w, abs(k), Omega, abs(k)) / (2 * math.pi) ** 2
    region = quad.LightconeSector(-Omega, 0.0, shift=Omega, radial=True)
    res = quad.integrate_2d(f, region, rel_tol=rel_tol, inner_hint="sqrt_endpoint")
    # radial form covers k >= 0; |S|^2 is even in k
    return res.scaled(2.0 * L * sides)


def spectral_factor_plate(Omega, area=1.0, sides=2, rel_tol=1e-8):
    """f(Omega) for the 3+1 plate: A int dw/2pi (w+W) int d^2k/(2pi)^2 |S|^2."""
    def f(w, k):
        return (w + Omega) * k * _plate_sq(w, k, Omega, k) / (2 * math.pi) ** 2
    region = quad.LightconeSector(-Omega, 0.0, shift=Omega, radial=True)
    res = quad.integrate_2d(f, region, rel_tol=rel_tol, inner_hint="sqrt_endpoint")
    return res.scaled(area * sides)


def _mode_sum_sq(w, Omega, L):
    kmax = min(-w, w + Omega)
    n = np.arange(1, int(kmax * L / math.pi) + 1)
    if n.size == 0:
        return 0.0
    k = n * math.pi / L
    return float(np.sum(_plate_sq(w, k, Omega, k)))


def spectral_factor_waveguide(Omega, L, sides=2, rel_tol=1e-9):
    """f(Omega) for a plate segment in a waveguide: sum over k_n = n pi / L."""
    nmax = int(Omega * L / (2 * math.pi))
    if nmax == 0 or Omega * L <= 2 * math.pi:
        return quad.QuadResult(0.0, 0.0, 0)

    def integrand(w):
        return (w + Omega) * _mode_sum_sq(w, Omega, L) / (2 * math.pi)

    # the mode sum switches on at w = -k_n and switches off at w = k_n - Omega
    pts = sorted({-n * math.pi / L for n in range(1, nmax + 1)}
                 | {n * math.pi / L - Omega for n in range(1, nmax + 1)})
    pts = [p for p in pts if -Omega < p < 0]
    return quad.integrate_adaptive(integrand, -Omega, 0.0, rel_tol=rel_tol, points=pts,
                                   limit=max(200, 4 * len(pts))).scaled(sides)


def _gl_sin(n):
    """Gauss-Legendre nodes/weights for int_lo^hi after k = mid + half sin(theta)."""
    x, w = np.polynomial.legendre.leggauss(n)
    theta = 0.5 * math.pi * x
    return np.sin(theta), 0.5 * math.pi * w * np.cos(theta)


def spectral_factor_corrugated(Omega, q, area=1.0, sides=1, rel_tol=1e-8, n_nodes=96):
    """Direct quadrature of the corrugated-plate window c|k| < -w, c|k + q| < w + W.

    The outer frequency integral is adaptive; the two wavevector integrals over the
    lens-shaped intersection of the two light cones use Gauss-Legendre rules after a
    sine substitution that removes the square-root edges.
    """
    q = np.asarray(q, dtype=float)
    qa = float(np.linalg.norm(q))
    if Omega <= qa:
        return quad.QuadResult(0.0, 0.0, 0)
    s, wts = _gl_sin(n_nodes)

    def kint(w):
        a, b = -w, w + Omega
        # k along q is kx; the lens is |k| < a and |k + q| < b
        ymax = min(a, b)
        ky = ymax * s
        jy = ymax * wts
        ra = np.sqrt(np.maximum(a * a - ky**2, 0.0))
        rb = np.sqrt(np.maximum(b * b - ky**2, 0.0))
        lo = np.maximum(-ra, -qa - rb)
        hi = np.minimum(ra, -qa + rb)
        ok = hi > lo
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        kx = mid[:, None] + half[:, None] * s[None, :]
        kin = np.sqrt(kx**2 + ky[:, None] ** 2)
        kout = np.sqrt((kx + qa) ** 2 + ky[:, None] ** 2)
        vals = _plate_sq(w, kin, Omega, kout)
        inner = np.where(ok, half * (vals @ wts), 0.0)
        return float(np.dot(jy, inner)) / (2 * math.pi) ** 2

    def integrand(w):
        return (w + Omega) * kint(w) / (2 * math.pi)

    pts = [p for p in (-(Omega - qa) / 2, -(Omega + qa) / 2) if -Omega < p < 0]
    res = quad.integrate_adaptive(integrand, -Omega, 0.0, rel_tol=rel_tol, points=pts)
    return res.scaled(area * sides)


def corrugated_plate_density(Omega, qvec, qtilde, method="closed", rel_tol=1e-8):
    """Power density per area |q|^2 W (W^2 - q^2)^{5/2} / 360 pi^2 of a corrugated plate.

    ``method="quadrature"`` integrates the sideband amplitudes directly instead.
    Zero at and below the threshold W <= |q|.
    """
    qa = float(np.linalg.norm(qvec))
    if Omega <= qa:
        return 0.0
    if method == "closed":
        return abs(qtilde) ** 2 * Omega * (Omega**2 - qa**2) ** 2.5 / (360 * math.pi**2)
    if method == "quadrature":
        return abs(qtilde) ** 2 * spectral_factor_corrugated(Omega, qvec,
                                                             rel_tol=rel_tol).value
    raise ValueError(f"unknown method {method!r}")


def waveguide_g(nu, rel_tol=1e-10):
    """Suppression function g(nu), nu = Omega L / c, of the waveguide segment.

    g(nu) = (512/pi) sum_{n=1}^{floor(nu/2pi)} int_{a_n}^{1-a_n} dz (1 - z)
            sqrt((z^2 - a_n^2)((1 - z)^2 - a_n^2)),   a_n = pi n / nu.
    """
    if nu < 0:
        raise ValueError("nu must be non-negative")
    total = 0.0
    for n in range(1, int(nu / (2 * math.pi)) + 1):
        a = math.pi * n / nu
        if 1 - 2 * a <= 0:
            continue

        def f(z, a=a):
            return (1 - z) * math.sqrt(max(z * z - a * a, 0.0) * max((1 - z) ** 2 - a * a, 0.0))

        total += quad.integrate_adaptive(f, a, 1 - a, rel_tol=rel_tol,
                                         singularity_hint="sqrt_endpoint").value
    return 512.0 / math.pi * total


def default_l_max(Omega, R):
    return max(12, 2 * math.ceil(Omega * R) + 8)


def _sphere_terms(w, Omega, R, l_max):
    """Per-l channel sums (both orderings, all m) at frequency w in (-W, 0)."""
    w_out = w + Omega
    F = specfun.mode_factor_F_table(l_max + 1, np.array([w * R, w_out * R]))
    a, b = F[:, 0], F[:, 1]
    ls = np.arange(l_max + 1)
    # sum_m d_{l+1,l,m}^2 = (l + 1) / 3
    return 4.0 * abs(w * w_out) * (ls + 1) / 3.0 * (
        np.abs(a[:-1] * b[1:]) ** 2 + np.abs(a[1:] * b[:-1]) ** 2)


def sphere_power_density(Omega, R, qtilde=1.0, l_max=None, rel_tol=1e-9, tail_tol=1e-8):
    """P(Omega) of a sphere oscillating rigidly with Fourier amplitude qtilde.

    Returns a :class:`SpectralResult`; ``tail`` estimates the neglected partial waves and
    triggers a :class:`TruncationWarning` above ``tail_tol`` relative.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    l_max = default_l_max(Omega, R) if l_max is None else int(l_max)
    if l_max < 1:
        raise ValueError("l_max must be >= 1")

    def integrand(w):
        return (w + Omega) * float(np.sum(_sphere_terms(w, Omega, R, l_max))) / (2 * math.pi)

    res = _window(integrand, Omega, rel_tol)
    # tail: geometric extrapolation of the last terms at a few window points
    ratio = 0.0
    for w in (-0.5 * Omega, -0.1 * Omega, -0.9 * Omega):
        t = _sphere_terms(w, Omega, R, l_max)
        tot = float(np.sum(t))
        if tot > 0 and t[-2] > 0:
            r = min(t[-1] / t[-2], 0.99)
            ratio = max(ratio, t[-1] / tot * r / (1 - r))
    # floor at the rounding level of the partial-wave sum
    tail = max(ratio, 64 * np.finfo(float).eps) * res.value
    scale = abs(qtilde) ** 2
    if tail > tail_tol * res.value:
        warnings.warn(f"sphere partial-wave sum truncated at l_max={l_max}; relative tail "
                      f"{tail / res.value:.2e}", TruncationWarning, stacklevel=2)
    return SpectralResult(scale * res.value, scale * res.abs_err, scale * tail)


@dataclass(frozen=True)
class _SigmaXRegion:
    x0: float = 0.0
    x1: float = 0.5

    def y_bounds(self, sigma):
        return sigma, 1.0 - sigma


def sphere_continuum_integral(rel_tol=1e-10):
    """int_0^{1/2} ds s int_s^{1-s} dx (1-x) x^2 sqrt(1 - s^2/x^2) sqrt(1 - s^2/(1-x)^2).

    The large-sphere limit of the partial-wave sum with l = s W R and |w| = x W; the
    value 1/360 turns the 4/3pi prefactor into the 1/270pi coefficient.
    """
    def f(s, x):
        a = max(1.0 - s * s / (x * x), 0.0)
        b = max(1.0 - s * s / ((1.0 - x) ** 2), 0.0)
        return s * (1.0 - x) * x * x * math.sqrt(a * b)

    return quad.integrate_2d(f, _SigmaXRegion(), rel_tol=rel_tol, inner_hint="sqrt_endpoint")


def spectral_factor_sphere(Omega, R, l_max=None, sides=1, rel_tol=1e-9):
    r = sphere_power_density(Omega, R, 1.0, l_max=l_max, rel_tol=rel_tol)
    return quad.QuadResult(sides * r.value, sides * (r.abs_err + r.tail), 0)


def spectral_factor_disk(Omega, R, m_max=None, sides=1, rel_tol=1e-9):
    """f(Omega) of a disk oscillating along x from the full Hankel-function amplitudes."""
    m_max = max(4, 2 * math.ceil(Omega * R) + 6) if m_max is None else m_max

    def integrand(w):
        total = 0.0
        for m in range(-m_max, m_max + 1):
            for mp in (m - 1, m + 1):
                total += abs(scattering.s_disk_oscillating(w, Omega, m, R, 1.0, mp).value) ** 2
        return (w + Omega) * total / (2 * math.pi)

    return _window(integrand, Omega, rel_tol, hint="log_endpoint").scaled(sides)


# -- engine ----------------------------------------------------------------------------

def spectral_factor(scenario, Omega, rel_tol=None):
    g = scenario.geometry
    s = scenario.side_multiplicity
    kw = {} if rel_tol is None else {"rel_tol": rel_tol}
    if isinstance(g, Point1D):
        return spectral_factor_point(Omega, s, **kw)
    if isinstance(g, ModulatedMirror1D):
        return spectral_factor_modulated(Omega, g.eps0, s, **kw)
    if isinstance(g, Line2D):
        return spectral_factor_line(Omega, g.L, s, **kw)
    if isinstance(g, WaveguideSegment):
        return spectral_factor_waveguide(Omega, g.L, s, **kw)
    if isinstance(g, Plate3D):
        return spectral_factor_plate(Omega, g.area, s, **kw)
    if isinstance(g, CorrugatedPlate3D):
        return spectral_factor_corrugated(Omega, g.q, g.area, s, **kw)
    if isinstance(g, Sphere3D):
        return spectral_factor_sphere(Omega, g.R, g.l_max, s, **kw)
    if isinstance(g, Disk2D) and g.mode == "oscillate":
        return spectral_factor_disk(Omega, g.R, sides=s, **kw)
    raise TypeError(f"no sideband engine for {type(g).__name__}; use small_body_power")


def radiated_power(scenario, rel_tol=None):
    """Time-averaged power radiated by each drive harmonic, P_j = f(W_j) |c_j|^2 / 4."""
    g = scenario.geometry
    if isinstance(g, Ellipse2D) or (isinstance(g, Disk2D) and g.mode == "orbit"):
        r = small_body_power(scenario)
        Omega = g.Omega_spin if isinstance(g, Ellipse2D) else scenario.drive.harmonics[0][0]
        return PowerSpectrum((HarmonicPower(Omega, r.value, r.abs_err),))
    if scenario.drive is None:
        raise ValueError("scenario needs a drive spectrum")
    entries = []
    for Omega, c in scenario.drive.harmonics:
        f = spectral_factor(scenario, Omega, rel_tol)
        fold = abs(c) ** 2 / 4.0
        entries.append(HarmonicPower(Omega, fold * f.value, fold * f.abs_err))
    return PowerSpectrum(tuple(entries))


def _log_factor(x_window, leading, log_mode):
    if log_mode == "leading":
        return leading
    if log_mode == "exact":
        return math.log(x_window)
    raise ValueError(f"unknown log_mode {log_mode!r}")


def small_body_power(scenario, log_mode="leading", channels="printed", rel_tol=1e-10):
    """Power of a small disk (oscillating or orbiting) or a spinning ellipse.

    The low-frequency amplitudes are integrated over the sideband window. With
    ``log_mode="leading"`` every logarithm is evaluated at W R/c (the accuracy of the
    amplitudes themselves); ``"exact"`` keeps log(|w| R/c) inside the integral.
    For the oscillating disk ``channels="printed"`` keeps the 0 -> +-1 sidebands and
    ``"complete"`` adds the +-1 -> 0 ones. The ellipse result also carries the
    braking torque P / W.
    """
    g = scenario.geometry
    if isinstance(g, Ellipse2D):
        Omega, R, delta = g.Omega_spin, g.R, g.delta
        W = 2.0 * Omega
    elif isinstance(g, Disk2D):
        if scenario.drive is None or len(scenario.drive.harmonics) != 1:
            raise ValueError("disk small-body power needs a single drive harmonic")
        (Omega, c), = scenario.drive.harmonics
        R, delta = g.R, abs(c)
        W = Omega
    else:
        raise TypeError("small_body_power handles Disk2D and Ellipse2D")
    if Omega * R > SMALL_BODY_LIMIT:
        warnings.warn(f"Omega R / c = {Omega * R:.3g} exceeds {SMALL_BODY_LIMIT}; the "
                      "low-frequency amplitudes are not reliable", RegimeWarning, stacklevel=2)
    if channels not in ("printed", "complete"):
        raise ValueError(f"unknown channel set {channels!r}")
    lead = math.log(Omega * R)

    def lg(x):
        return _log_factor(x, lead, log_mode)

    if isinstance(g, Ellipse2D):
        def sq(w):
            wo = w + W
            a = math.pi * wo**2 * R * delta / (8 * lg(abs(w) * R))
            b = math.pi * w**2 * R * delta / (8 * lg(wo * R))
            return a * a + b * b
    elif g.mode == "oscillate":
        def sq(w):
            wo = w + W
            a = math.pi * wo * delta / (4 * lg(abs(w) * R))
            total = 2 * a * a
            if channels == "complete":
                b = math.pi * w * delta / (4 * lg(wo * R))
                total += 2 * b * b
            return total
    else:
        def sq(w):
            wo = w + W
            a = math.pi * wo * delta / (2 * lg(abs(w) * R))
            b = math.pi * w * delta / (2 * lg(wo * R))
            return a * a + b * b

    def integrand(w):
        return (w + W) * sq(w) / (2 * math.pi)

    hint = "log_endpoint" if log_mode == "exact" else None
    res = quad.integrate_adaptive(integrand, -W, 0.0, rel_tol=rel_tol, singularity_hint=hint)
    torque = res.value / Omega if isinstance(g, Ellipse2D) else None
    return SpectralResult(res.value, res.abs_err, 0.0, torque)


def small_body_closed_form(scenario):
    """Leading-log closed forms: pi d^2 W^4/(64 log^2), pi d^2 W^4/(24 log^2), pi R^2 d^2 W^6/(10 log^2)."""
    g = scenario.geometry
    if isinstance(g, Ellipse2D):
        Omega = g.Omega_spin
        return math.pi * g.R**2 * g.delta**2 * Omega**6 / (10 * math.log(Omega * g.R) ** 2)
    (Omega, c), = scenario.drive.harmonics
    coeff = 64.0 if g.mode == "oscillate" else 24.0
    return math.pi * abs(c) ** 2 * Omega**4 / (coeff * math.log(Omega * g.R) ** 2)


# -- long-time forces ------------------------------------------------------------------

def long_time_force(geometry, q_history, t, support, tau=0.0, method="convolution",
                    convention="printed", rel_tol=1e-10):
    """Force on a line or waveguide segment long after a motion q(t) has stopped.

    ``q_history`` is a callable vanishing outside ``support = (t0, t1)``; ``t`` must lie
    beyond ``t1 + tau``.

    Line2D: f(t) = C int dt' q(t') / (t - t')^5, with C = 3L/16 (``convention="printed"``)
    or 3L/(16 pi) (``"kernel"``, the prefactor of the causal kernel 24/(pi t^5)). Its
    tail is C q(0)/t^5; ``method="tail"`` returns that limit.

    WaveguideSegment: f(t) = -Re(exp(-2i w0 t) q(2 w0)) / (2 pi L t^3) with w0 = pi/L and
    q(W) = int dt exp(iWt) q(t).
    """
    t0, t1 = support
    t = np.asarray(t, dtype=float)
    if np.any(t <= t1 + tau):
        raise ValueError("t lies inside the motion support (plus cutoff); the long-time "
                         "form does not apply")
    if isinstance(geometry, Line2D):
        if convention == "printed":
            C = 3.0 * geometry.L / 16.0
        elif convention == "kernel":
            C = 3.0 * geometry.L / (16.0 * math.pi)
        else:
            raise ValueError(f"unknown convention {convention!r}")
        if method == "tail":
            q0 = quad.integrate_adaptive(q_history, t0, t1, rel_tol=rel_tol).value
            out = C * q0 / t**5
        elif method == "convolution":
            out = np.array([C * quad.integrate_adaptive(
                lambda s, ti=ti: q_history(s) / (ti - s) ** 5, t0, t1, rel_tol=rel_tol).value
                for ti in np.atleast_1d(t)]).reshape(t.shape)
        else:
            raise ValueError(f"unknown method {method!r}")
        return out[()] if out.ndim == 0 else out
    if isinstance(geometry, WaveguideSegment):
        w0 = math.pi / geometry.L
        qt = quad.integrate_adaptive(lambda s: np.exp(2j * w0 * s) * q_history(s), t0, t1,
                                     rel_tol=rel_tol, complex_valued=True).value
        out = -np.real(np.exp(-2j * w0 * t) * qt) / (2 * math.pi * geometry.L * t**3)
        return out[()] if out.ndim == 0 else out
    raise TypeError("long_time_force handles Line2D and WaveguideSegment")
