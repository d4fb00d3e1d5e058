"""Lossy bodies in stationary motion: rotation, lateral sliding, thermal imbalance.

Sign conventions
----------------
Forces are reported on body 1, which is at rest in the lab; body 2 (plate) moves with
velocity ``v`` along x. The force is the lateral momentum absorbed by body 1 per unit
time (per unit area for two plates), so at zero temperature and v > 0 it is positive:
body 1 is dragged along with body 2.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import quad, scattering
from .exceptions import RegimeError, RegimeWarning, TruncationWarning
from .kinematics import bose_occupation, boost_x, comoving_freq, k_perp, lorentz_gamma

L_CAP = 40
M_CAP = 40


@dataclass(frozen=True)
class StationaryResult:
    value: float
    abs_err: float
    tail: float = 0.0


@dataclass(frozen=True)
class RotatingBody:
    """Sphere of radius ``a`` rotating about z at ``Omega_rot``."""
    a: float
    material: object
    Omega_rot: float = 0.0

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("sphere radius must be positive")
        if self.Omega_rot < 0:
            raise ValueError("Omega_rot must be non-negative")
        if self.Omega_rot * self.a >= 1:
            warnings.warn(f"rim speed Omega a / c = {self.Omega_rot * self.a:.3g} >= 1",
                          RegimeWarning, stacklevel=3)


@dataclass(frozen=True)
class PlatePairScenario:
    """Plate 1 at rest, plate 2 sliding at ``v`` along x, gap ``d``."""
    material_1: object
    material_2: object
    v: float
    d: float
    T1: float = 0.0
    T2: float = 0.0

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("separation d must be positive")
        if abs(self.v) >= 1:
            raise ValueError("|v| must be below c")
        if self.T1 < 0 or self.T2 < 0:
            raise ValueError("temperatures must be non-negative")


@dataclass(frozen=True)
class AtomPlateScenario:
    """Small sphere (body 1, at rest) of radius ``a`` a distance ``d`` above a sliding plate."""
    a: float
    d: float
    v: float
    material_sphere: object
    material_plate: object
    T1: float = 0.0
    T2: float = 0.0
    Omega_rot: float = 0.0

    def __post_init__(self):
        if self.a <= 0 or self.d <= 0:
            raise ValueError("a and d must be positive")
        if self.a / self.d >= 0.2:
            raise RegimeError(f"a/d = {self.a / self.d:.3g}: first-reflection treatment needs "
                              "a/d < 0.2")
        if abs(self.v) >= 1:
            raise ValueError("|v| must be below c")
        if self.T1 < 0 or self.T2 < 0:
            raise ValueError("temperatures must be non-negative")


# -- rotating sphere -------------------------------------------------------------------

def _resonance_points(material, m, Omega_rot, lo, hi):
    """Frequencies where the comoving frequency hits a Drude-Lorentz pole."""
    w0 = getattr(material, "omega_0", 0.0)
    pts = [Omega_rot * m + s * w0 for s in (-1.0, 1.0)] if w0 else []
    return sorted(p for p in pts if lo < p < hi) or None


def _window_integral(body, l, m, rel_tol):
    """int_0^{Omega m} dw/2pi w (|S_lm|^2 - 1)."""
    top = body.Omega_rot * m
    if top <= 0:
        return quad.QuadResult(0.0, 0.0, 0)

    def f(w):
        return -w * scattering.lossy_sphere_loss(l, w, body.a, body.material,
                                                 body.Omega_rot, m) / (2 * math.pi)

    pts = _resonance_points(body.material, m, body.Omega_rot, 0.0, top)
    return quad.integrate_adaptive(f, 0.0, top, rel_tol=rel_tol, points=pts)


def _lm_sum(term, m_values, l_start, rel_tol, tail_tol, l_max, what, capped=True):
    """Sum term(l, m) over m (outer, in the given order) and l >= l_start(m) (inner).

    The inner sum stops once a term is below ``tail_tol`` of the running total of that
    m; the outer sum stops once a whole m-shell is. The last neglected magnitude is the
    tail estimate.
    """
    total, err, tail = 0.0, 0.0, 0.0
    shells = 0
    last_shell = math.inf
    for m_group in m_values:
        shell = 0.0
        for m in m_group:
            acc = 0.0
            l = l_start(m)
            prev = math.inf
            while l <= l_max:
                r = term(l, m)
                acc += r.value
                err += r.abs_err
                if abs(r.value) <= tail_tol * abs(acc) and l > l_start(m):
                    break
                if abs(r.value) == 0 and prev == 0:
                    break
                prev = abs(r.value)
                l += 1
            else:
                tail += prev
            shell += acc
        total += shell
        shells += 1
        if shells > 1 and abs(shell) <= tail_tol * abs(total):
            last_shell = abs(shell)
            break
        last_shell = abs(shell)
    else:
        if capped:
            tail += last_shell
    if tail > tail_tol * abs(total) and total != 0:
        warnings.warn(f"{what}: partial-wave sum truncated, relative tail "
                      f"{tail / abs(total):.2e}", TruncationWarning, stacklevel=3)
    return StationaryResult(total, err, tail)


def rotating_power(body, m_max=None, l_max=L_CAP, rel_tol=1e-8, tail_tol=1e-6):
    """Zero-temperature power radiated by a rotating lossy sphere.

    P = sum_{m>0} sum_{l>=m} int_0^{Omega m} dw/2pi w (|S_lm(w)|^2 - 1).
    The integrand is positive exactly inside the superradiant window.
    """
    if body.Omega_rot == 0 or not getattr(body.material, "lossy", False):
        return StationaryResult(0.0, 0.0, 0.0)
    m_max = M_CAP if m_max is None else m_max
    groups = [(m,) for m in range(1, m_max + 1)]
    return _lm_sum(lambda l, m: _window_integral(body, l, m, rel_tol), groups,
                   lambda m: abs(m), rel_tol, tail_tol, l_max, "rotating_power")


def superradiant_integrand(body, l, m, omega):
    """w (|S_lm(w)|^2 - 1) / 2pi, the spectral density of the rotating-body power."""
    return -omega * scattering.lossy_sphere_loss(l, omega, body.a, body.material,
                                                 body.Omega_rot, m) / (2 * math.pi)


def thermal_radiation_power(body, T, T_env, motion="none", m_max=None, l_max=L_CAP,
                            rel_tol=1e-8, tail_tol=1e-6):
    """Net power radiated by a sphere at temperature T into an environment at T_env.

    P = sum_{lm} int_0^inf dw/2pi w (n(w~_m, T) - n(w, T_env)) (1 - |S_lm(w)|^2),
    with w~_m = w - Omega m for ``motion="rotation"`` and w~ = w otherwise.
    """
    if T < 0 or T_env < 0:
        raise ValueError("temperatures must be non-negative")
    if motion not in ("none", "rotation"):
        raise ValueError(f"unknown motion {motion!r}")
    Omega = body.Omega_rot if motion == "rotation" else 0.0
    if not getattr(body.material, "lossy", False):
        return StationaryResult(0.0, 0.0, 0.0)
    moving = RotatingBody(body.a, body.material, Omega) if Omega != body.Omega_rot else body
    scale = max(T, T_env)

    def term(l, m):
        top = max(Omega * m, 0.0)
        res = quad.QuadResult(0.0, 0.0, 0)
        if top > 0:
            if T == 0 and T_env == 0:
                return _window_integral(moving, l, m, rel_tol)

            def g(w):
                occ = bose_occupation(comoving_freq(w, m, Omega), T) - bose_occupation(w, T_env)
                return w * occ * scattering.lossy_sphere_loss(
                    l, w, body.a, body.material, Omega, m) / (2 * math.pi)

            res = quad.integrate_adaptive(g, 0.0, top, rel_tol=rel_tol,
                                          points=_resonance_points(body.material, m, Omega,
                                                                   0.0, top))
        if scale == 0:
            return res

        def h(w):
            occ = bose_occupation(comoving_freq(w, m, Omega), T) - bose_occupation(w, T_env)
            return w * occ * scattering.lossy_sphere_loss(
                l, w, body.a, body.material, Omega, m) / (2 * math.pi)

        return res + quad.integrate_semi_infinite(h, rel_tol=rel_tol, decay=("bose", scale),
                                                  a=top)

    if Omega == 0:
        # no motion: the m-degeneracy is exact
        degenerate = lambda l, m: term(l, 0).scaled(2 * l + 1)  # noqa: E731
        return _lm_sum(degenerate, [(0,)], lambda m: 0, rel_tol, tail_tol, l_max,
                       "thermal_radiation_power", capped=False)
    m_max = M_CAP if m_max is None else m_max
    if T == 0 and T_env == 0:
        groups = [(m,) for m in range(1, m_max + 1)]
    else:
        groups = [(0,)] + [(m, -m) for m in range(1, m_max + 1)]
    return _lm_sum(term, groups, lambda m: abs(m), rel_tol, tail_tol, l_max,
                   "thermal_radiation_power")


# -- plane-wave integrals over (kx, ky) --------------------------------------------------

_GL_T, _GL_W = np.polynomial.legendre.leggauss(32)
_LAG_X, _LAG_W = np.polynomial.laguerre.laggauss(48)


def _ky_rule(omega, kx, d):
    """Nodes (ky, k_perp) and weights for 2 int_0^inf dky, split at the light cone.

    Vectorised over a 1-d array ``kx``; returns arrays of shape (len(kx), 80).
    Propagating part: ky = ky0 sin(theta), weight carries dky = ky0 cos(theta) dtheta.
    Evanescent part: parametrised by kappa = |k_perp| with Gauss-Laguerre nodes scaled to
    the decay exp(-2 kappa d); the weights carry exp(+x) to undo the Laguerre weight.
    Outside the light cone the propagating slots get zero weight.
    """
    s = 2.0 * d
    kx = np.asarray(kx, float)[:, None]
    lag_w = _LAG_W * np.exp(_LAG_X)
    kap = _LAG_X / s
    inside = np.abs(kx) < omega
    ky0 = np.sqrt(np.maximum(omega * omega - kx * kx, 0.0))
    theta = 0.25 * math.pi * (_GL_T + 1.0)
    ky_p = ky0 * np.sin(theta)
    w_p = np.where(inside, 0.25 * math.pi * _GL_W * ky0 * np.cos(theta), 0.0)
    # evanescent: kappa_total = kap, ky = sqrt(ky0^2 + kap^2) inside the cone;
    # ky = kap directly outside it
    ky_in = np.sqrt(ky0 * ky0 + kap * kap)
    ky_e = np.where(inside, ky_in, kap)
    w_e = np.where(inside, lag_w / s * kap / np.where(ky_in == 0, 1.0, ky_in), lag_w / s)
    ky = np.concatenate([np.broadcast_to(ky_p, (kx.shape[0], ky_p.shape[1])), ky_e], axis=1)
    w = 2.0 * np.concatenate([w_p, np.broadcast_to(w_e, ky_e.shape)], axis=1)
    return ky, w


def _k_plane_rule(omega, v, d, n_gl=32, n_lag=48):
    """Product rule for int dkx dky over the whole plane at frequency omega > 0.

    The kx line is split at the light cone +-omega and at the Doppler point omega / v
    where the rest-frame frequency of the moving plate changes sign. Inside the cone
    kx = omega sin(theta); outside it kx = +-sqrt(omega^2 + kappa^2) with kappa on
    Gauss-Legendre up to the Doppler point and Gauss-Laguerre (scale 2d) beyond.
    Returns flat arrays (kx, ky, w).
    """
    s = 2.0 * d
    t, tw = np.polynomial.legendre.leggauss(n_gl)
    lx, lw = np.polynomial.laguerre.laggauss(n_lag)
    lw = lw * np.exp(lx)
    theta = 0.5 * math.pi * t
    kx_parts = [omega * np.sin(theta)]
    w_parts = [0.5 * math.pi * tw * omega * np.cos(theta)]
    for sign in (1.0, -1.0):
        kappas, kw = [], []
        start = 0.0
        if v != 0 and sign * v > 0 and abs(omega / v) > omega:
            kc = math.sqrt((omega / v) ** 2 - omega * omega)
            if kc < 40.0 / s:
                kappas.append(0.5 * kc * (t + 1.0))
                kw.append(0.5 * kc * tw)
                start = kc
        kappas.append(start + lx / s)
        kw.append(lw / s)
        kap = np.concatenate(kappas)
        k = np.sqrt(omega * omega + kap * kap)
        kx_parts.append(sign * k)
        # dkx = kappa / kx dkappa
        w_parts.append(np.concatenate(kw) * kap / k)
    kx = np.concatenate(kx_parts)
    wx = np.concatenate(w_parts)
    ky, wy = _ky_rule(omega, kx, d)
    KX = np.broadcast_to(kx[:, None], ky.shape)
    W = wx[:, None] * wy
    keep = W != 0
    return KX[keep], ky[keep], W[keep]


def _plate_weights(R, kp):
    evan = kp.imag > 0
    w = np.where(evan, 2.0 * R.imag, 1.0 - np.abs(R) ** 2)
    return w, evan


def plate_friction_integrand(scenario, omega, kx, ky, multiple_reflections=True):
    """Spectral density of the plate-plate friction per unit area.

    kx |e^{i k_perp d}|^2 w1 w2 (n2 - n1) / |1 - e^{2 i k_perp d} R1 R2|^2 / (2 pi)^3,
    with lab-frame weights w = 1 - |R|^2 (propagating) or 2 Im R (evanescent),
    R2 the rest-frame reflection of plate 2 at the boosted (w', k'), n2 = n(w', T2).
    Vectorised over (omega, kx, ky).
    """
    sc = scenario
    omega, kx, ky = np.broadcast_arrays(np.asarray(omega, float), np.asarray(kx, float),
                                        np.asarray(ky, float))
    kp = np.asarray(k_perp(omega, np.hypot(kx, ky)))
    wp, kxp = boost_x(omega, kx, sc.v)
    R1 = np.asarray(scattering.reflection_halfspace(omega, np.hypot(kx, ky), sc.material_1))
    R2 = np.asarray(scattering.reflection_halfspace(wp, np.hypot(kxp, ky), sc.material_2))
    w1, evan = _plate_weights(R1, kp)
    w2, _ = _plate_weights(R2, kp)
    wtype = np.where(evan, "evanescent", "propagating")
    for wt in ("evanescent", "propagating"):
        sel = wtype == wt
        if np.any(sel):
            scattering.u_weight(R1[sel], wt)
            scattering.u_weight(R2[sel], wt, comoving_sign=np.sign(wp[sel]))
    phase = np.exp(2j * kp * sc.d)
    decay = np.abs(np.exp(1j * kp * sc.d)) ** 2
    loop = phase * R1 * R2
    if np.any(np.abs(loop) >= 1):
        raise RegimeError("multiple-reflection series diverges (|e^{2ik d} R1 R2| >= 1)")
    den = np.abs(1.0 - loop) ** 2 if multiple_reflections else 1.0
    occ = _occupation_difference(omega, wp, sc.T1, sc.T2)
    out = kx * decay * w1 * w2 * occ / den / (2 * math.pi) ** 3
    return out[()] if out.ndim == 0 else out


def _occupation_difference(omega, wp, T1, T2):
    """n(w', T2) - n(w, T1), exactly 0 when both arguments and temperatures coincide."""
    same = (wp == omega) & (T1 == T2)
    wp_safe = np.where(wp == 0, np.nan, wp)
    with np.errstate(invalid="ignore"):
        diff = bose_occupation(wp_safe, T2) - bose_occupation(omega, T1)
    return np.where(same, 0.0, np.nan_to_num(diff))


def plate_friction(scenario, rel_tol=1e-6, multiple_reflections=True, cutoff=None):
    """Friction force per unit area on plate 1 (at rest) from plate 2 sliding at v.

    f = int_0^inf dw/2pi int d^2k/(2pi)^2 kx |e|^2 w1 w2 (n2 - n1) / |1 - e^{2ik d} R1 R2|^2.

    At T1 = T2 = 0 only the window 0 < w < v kx contributes and the frequency integral
    runs over it directly. ``cutoff`` optionally truncates the frequency integral.
    """
    sc = scenario
    v, d = sc.v, sc.d
    if sc.T1 == 0 and sc.T2 == 0:
        if v == 0:
            # empty window 0 < w < v kx
            return StationaryResult(0.0, 0.0)
        return _plate_friction_zero_t(sc, rel_tol, multiple_reflections)

    def over_k(omega):
        kx, ky, w = _k_plane_rule(omega, v, d)
        return float(np.dot(w, plate_friction_integrand(sc, omega, kx, ky,
                                                         multiple_reflections)))

    scale = max(sc.T1, sc.T2, abs(v) / (2 * d))
    if cutoff is not None:
        res = quad.integrate_adaptive(over_k, 0.0, cutoff, rel_tol=rel_tol)
    else:
        res = quad.integrate_semi_infinite(over_k, rel_tol=rel_tol, decay=("bose", scale))
    return StationaryResult(res.value, res.abs_err)


def _unit_rule(n_nodes=40):
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    return 0.5 * (x + 1.0), 0.5 * w


def _zero_t_window(kernel, d, v, rel_tol, n_nodes=40):
    """int_{kx>0} d^2k int_0^{v kx} dw kernel(w, kx, ky) in polar (K, phi) and w = v kx s.

    The radial integral is adaptive; (phi, s) use tensor Gauss-Legendre rules.
    """
    if v <= 0:
        raise ValueError("the zero-temperature window needs v > 0 (use symmetry for v < 0)")
    u, uw = _unit_rule(n_nodes)
    phi = math.pi * (u - 0.5)
    phw = math.pi * uw
    P, S = np.meshgrid(phi, u, indexing="ij")
    W = np.outer(phw, uw)

    def radial(K):
        kx = K * np.cos(P)
        ky = K * np.sin(P)
        omega = v * kx * S
        vals = kernel(omega, kx, ky)
        # d^2k dw = K dK dphi * v kx ds
        return float(np.sum(W * vals * K * v * kx))

    return quad.integrate_semi_infinite(radial, rel_tol=rel_tol, decay=("exponential", 2 * d))


def _plate_friction_zero_t(sc, rel_tol, multiple_reflections):
    sign = 1.0
    if sc.v < 0:
        sc = PlatePairScenario(sc.material_1, sc.material_2, -sc.v, sc.d, sc.T1, sc.T2)
        sign = -1.0

    def kernel(omega, kx, ky):
        return plate_friction_integrand(sc, omega, kx, ky, multiple_reflections) * (2 * math.pi)

    res = _zero_t_window(kernel, sc.d, sc.v, rel_tol)
    # the kernel already carries 1/(2pi)^3; restore the frequency measure dw/2pi
    return StationaryResult(sign * res.value / (2 * math.pi), res.abs_err / (2 * math.pi))


# -- atom above a plate ----------------------------------------------------------------

def _assoc_legendre(l, m, cos_t, sin_t):
    """P_l^m (m >= 0) from cos(theta) and sin(theta) given separately (complex allowed)."""
    p_mm = (-1) ** m * _double_factorial(2 * m - 1) * sin_t**m
    if l == m:
        return p_mm
    p_prev, p_cur = p_mm, cos_t * (2 * m + 1) * p_mm
    for ll in range(m + 2, l + 1):
        p_prev, p_cur = p_cur, ((2 * ll - 1) * cos_t * p_cur - (ll + m - 1) * p_prev) / (ll - m)
    return p_cur


def _double_factorial(n):
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def sph_harm_k(l, m, kx, ky, kperp, omega):
    """Y_lm at the (possibly complex) unit vector (kx, ky, k_perp) / omega.

    cos(theta) = k_perp / omega and sin(theta) = |k_par| / omega; evanescent channels
    have imaginary cos(theta) and sin(theta) > 1.
    """
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid spherical order (l={l}, m={m})")
    am = abs(m)
    cos_t = np.asarray(kperp) / omega
    sin_t = np.hypot(kx, ky) / abs(omega)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - am)
                     / math.factorial(l + am))
    # Y_{l,-m} = (-1)^m N P_l^m e^{-i m phi}, valid for complex cos(theta) too
    sign = (-1) ** am if m < 0 else 1
    return sign * norm * _assoc_legendre(l, am, cos_t, sin_t) * np.exp(1j * m * np.arctan2(ky, kx))


def plane_to_spherical_coupling(omega, kpar, d, l, m):
    """2 pi i^l e^{i k_perp d} Y*_lm(k) / sqrt(k_perp omega): plane wave at the plate seen
    as spherical waves about a point at height d."""
    kx, ky = kpar
    kp = complex(k_perp(omega, math.hypot(kx, ky)))
    y = complex(sph_harm_k(l, m, kx, ky, kp, omega))
    return 2 * math.pi * 1j**l * np.exp(1j * kp * d) * np.conj(y) / np.sqrt(kp * omega + 0j)


def atom_plate_integrand(scenario, omega, kx, ky, l_max=0):
    """Spectral density of the first-reflection atom-plate force.

    kx (n2 - n1) sum_lm |e|^2 |Y_lm|^2 (1 - |S_lm|^2) w2 / (|k_perp| omega / 4 pi^2)
    divided by (2 pi)^3. Vectorised over (kx, ky) at scalar omega.
    """
    sc = scenario
    kx, ky = np.broadcast_arrays(np.asarray(kx, float), np.asarray(ky, float))
    kp = np.asarray(k_perp(omega, np.hypot(kx, ky)))
    wp, kxp = boost_x(omega, kx, sc.v)
    R2 = np.asarray(scattering.reflection_halfspace(wp, np.hypot(kxp, ky), sc.material_plate))
    w2, _ = _plate_weights(R2, kp)
    decay = np.abs(np.exp(1j * kp * sc.d)) ** 2
    geo = np.zeros(kx.shape)
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            loss = scattering.lossy_sphere_loss(l, omega, sc.a, sc.material_sphere,
                                                sc.Omega_rot, m)
            if sc.Omega_rot:
                # comoving occupation of a rotating atom
                n1 = bose_occupation(comoving_freq(omega, m, sc.Omega_rot), sc.T1)
            else:
                n1 = bose_occupation(omega, sc.T1)
            wp_safe = np.where(wp == 0, np.nan, wp)
            with np.errstate(invalid="ignore"):
                occ = np.nan_to_num(bose_occupation(wp_safe, sc.T2) - n1)
            y2 = np.abs(sph_harm_k(l, m, kx, ky, kp, omega)) ** 2
            geo = geo + y2 * loss * occ
    out = kx * decay * w2 * geo * 4 * math.pi**2 / (np.abs(kp) * omega) / (2 * math.pi) ** 3
    return out


def atom_plate_friction(scenario, rel_tol=1e-6, method="general", l_max=0):
    """Force on a small sphere at rest above a plate sliding at v (first reflection).

    ``method="general"`` integrates the full first-reflection formula with the exact
    sphere loss 1 - |S_lm|^2 up to ``l_max`` at any temperatures. ``method="zero_t"``
    evaluates the closed low-frequency form

        f = (4 a^3 / 3 pi^2) int_{kx>0} d^2k int_0^{v kx} dw
            e^{-2|k| d} kx w^2 Im eps_S(w) |Im R(w', k')| / |k|,

    valid at T1 = T2 = 0 for the l = m = 0 wave.
    """
    sc = scenario
    if method == "zero_t":
        if sc.T1 != 0 or sc.T2 != 0:
            raise ValueError("the closed zero-temperature form needs T1 = T2 = 0")
        return _atom_zero_t(sc, rel_tol)
    if method != "general":
        raise ValueError(f"unknown method {method!r}")
    if sc.v == 0 and sc.T1 == sc.T2 and sc.Omega_rot == 0:
        return StationaryResult(0.0, 0.0)
    if not getattr(sc.material_sphere, "lossy", False):
        return StationaryResult(0.0, 0.0)
    def over_k(omega):
        kx, ky, w = _k_plane_rule(omega, sc.v, sc.d)
        return float(np.dot(w, atom_plate_integrand(sc, omega, kx, ky, l_max)))

    scale = max(sc.T1, sc.T2, abs(sc.v) / (2 * sc.d))
    res = quad.integrate_semi_infinite(over_k, rel_tol=rel_tol, decay=("bose", scale))
    return StationaryResult(res.value, res.abs_err)


def _atom_zero_t(sc, rel_tol):
    sign = 1.0
    v = sc.v
    if v < 0:
        v, sign = -v, -1.0
    if v == 0:
        return StationaryResult(0.0, 0.0)
    gamma = float(lorentz_gamma(v))

    def kernel(omega, kx, ky):
        K = np.hypot(kx, ky)
        wp = gamma * (omega - v * kx)
        kxp = gamma * (kx - v * omega)
        R = scattering.reflection_halfspace(wp, np.hypot(kxp, ky), sc.material_plate)
        im_eps = np.imag(sc.material_sphere.eps(omega))
        return np.exp(-2 * K * sc.d) * kx * omega**2 * im_eps * np.abs(np.imag(R)) / K

    res = _zero_t_window(kernel, sc.d, v, rel_tol)
    pref = 4 * sc.a**3 / (3 * math.pi**2)
    return StationaryResult(sign * pref * res.value, pref * res.abs_err)
