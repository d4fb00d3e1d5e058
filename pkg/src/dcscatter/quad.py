"""Adaptive quadrature front-ends used by the radiation and friction engines.

The 1D work is delegated to QUADPACK through :func:`scipy.integrate.quad`; this
module adds endpoint-regularising substitutions, evaluation counting, 2D nesting
over propagating (light-cone) windows, and the causal time kernel of a response
function given its dissipative part.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

DEFAULT_REL_TOL = 1e-8
DEFAULT_REL_TOL_2D = 1e-6


class QuadratureError(RuntimeError):
    """Adaptive integration failed to reach the requested tolerance."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class QuadResult:
    value: complex
    abs_err: float
    evaluations: int

    def __post_init__(self):
        if not self.abs_err >= 0:
            raise ValueError("abs_err must be non-negative")

    @property
    def rel_err(self):
        return self.abs_err / abs(self.value) if self.value != 0 else math.inf

    def __add__(self, other):
        return QuadResult(self.value + other.value, self.abs_err + other.abs_err,
                          self.evaluations + other.evaluations)

    def scaled(self, factor):
        return QuadResult(self.value * factor, self.abs_err * abs(factor), self.evaluations)


class _Counter:
    def __init__(self, f):
        self.f = f
        self.n = 0

    def __call__(self, x):
        self.n += 1
        return self.f(x)


def _quad(f, a, b, rel_tol, abs_tol, limit, points=None, strict=True, **kw):
    counted = _Counter(f)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(counted, a, b, epsrel=rel_tol, epsabs=abs_tol, limit=limit,
                             points=points, full_output=1, **kw)
    value, err = out[0], out[1]
    if kw.get("complex_func"):
        # complex mode reports err_re + i err_im; judge convergence on its modulus alone
        err = abs(err)
        ier = 1
        msg = ""
    else:
        ier = 0 if len(out) == 3 else 1
        msg = out[3] if len(out) > 3 else ""
    ok = err <= max(abs_tol, rel_tol * abs(value)) * 10 or ier == 0
    result = QuadResult(value, float(abs(err)), counted.n)
    if not ok and strict:
        raise QuadratureError(f"quadrature on [{a}, {b}] did not converge: {msg}".strip(),
                              partial=result)
    return result


def integrate_adaptive(f, a, b, rel_tol=DEFAULT_REL_TOL, singularity_hint=None,
                       abs_tol=0.0, points=None, limit=200, complex_valued=False):
    """Integrate f over [a, b] to relative tolerance ``rel_tol``.

    ``singularity_hint`` selects an endpoint treatment:

    * ``None`` -- plain adaptive Gauss-Kronrod with extrapolation;
    * ``"sqrt_endpoint"`` -- substitution x = a + (b - a)(1 - cos t)/2 that turns
      square-root endpoint behaviour into smooth behaviour at both ends;
    * ``"log_endpoint"`` -- algebraic-logarithmic endpoint handling, relying on the
      epsilon extrapolation of QAGS with a tighter subdivision limit.
    """
    if not a < b:
        raise ValueError("integration bounds must satisfy a < b")
    kw = {"complex_func": True} if complex_valued else {}
    if singularity_hint is None:
        return _quad(f, a, b, rel_tol, abs_tol, limit, points=points, **kw)
    if singularity_hint == "sqrt_endpoint":
        half = 0.5 * (b - a)

        def g(t):
            return f(a + half * (1.0 - math.cos(t))) * half * math.sin(t)

        pts = None
        if points is not None:
            pts = [math.acos(1.0 - (p - a) / half) for p in points if a < p < b]
        return _quad(g, 0.0, math.pi, rel_tol, abs_tol, limit, points=pts, **kw)
    if singularity_hint == "log_endpoint":
        return _quad(f, a, b, rel_tol, abs_tol, max(limit, 500), points=points, **kw)
    raise ValueError(f"unknown singularity hint {singularity_hint!r}")


def integrate_semi_infinite(f, rel_tol=DEFAULT_REL_TOL, decay=None, a=0.0, abs_tol=0.0,
                            points=None, limit=200):
    """Integrate f over [a, inf).

    ``decay`` is ``("exponential", kappa)`` or ``("bose", T)``; it sets the scale at
    which the range is split into a finite bulk and a mapped tail.
    """
    scale = 1.0
    if decay is not None:
        kind, rate = decay
        if kind == "exponential":
            scale = 1.0 / rate
        elif kind == "bose":
            scale = rate
        else:
            raise ValueError(f"unknown decay kind {kind!r}")
        if not scale > 0:
            raise ValueError("decay scale must be positive")
    split = a + 30.0 * scale
    inner_points = [p for p in (points or []) if a < p < split]
    bulk = _quad(f, a, split, rel_tol, abs_tol, limit, points=inner_points or None)
    tail = _quad(f, split, np.inf, rel_tol, max(abs_tol, rel_tol * abs(bulk.value) * 1e-2),
                 limit)
    return bulk + tail


@dataclass(frozen=True)
class Rectangle:
    x0: float
    x1: float
    y0: float
    y1: float

    def y_bounds(self, x):
        return self.y0, self.y1


@dataclass(frozen=True)
class LightconeSector:
    """Frequencies omega in [omega0, omega1] and |k| below both light cones.

    The second cone belongs to the sideband frequency omega + shift (shift = 0
    gives the single cone |k| < |omega|). With ``radial=True`` the k range is
    [0, k_max] (isotropic 2D wavevector in polar form), else [-k_max, k_max].
    """
    omega0: float
    omega1: float
    shift: float = 0.0
    radial: bool = False

    @property
    def x0(self):
        return self.omega0

    @property
    def x1(self):
        return self.omega1

    def y_bounds(self, omega):
        kmax = min(abs(omega), abs(omega + self.shift))
        return (0.0 if self.radial else -kmax), kmax


def integrate_2d(f, region, rel_tol=DEFAULT_REL_TOL_2D, inner_hint=None, outer_hint=None,
                 limit=200):
    """Iterated integral of f(x, y) over ``region`` (outer variable x).

    ``region`` is a :class:`Rectangle`, a :class:`LightconeSector` or any object with
    ``x0``, ``x1`` and ``y_bounds(x)``. The returned error adds the outer estimate to
    the integrated inner estimates.
    """
    evals = [0]
    inner_err = [0.0]

    def inner(x):
        y0, y1 = region.y_bounds(x)
        if not y1 > y0:
            return 0.0
        r = integrate_adaptive(lambda y: f(x, y), y0, y1, rel_tol=rel_tol * 0.1,
                               singularity_hint=inner_hint, limit=limit)
        evals[0] += r.evaluations
        inner_err[0] = max(inner_err[0], r.abs_err)
        return r.value

    outer = integrate_adaptive(inner, region.x0, region.x1, rel_tol=rel_tol,
                               singularity_hint=outer_hint, limit=limit)
    width = abs(region.x1 - region.x0)
    return QuadResult(outer.value, outer.abs_err + inner_err[0] * width,
                      outer.evaluations + evals[0])


def kramers_kronig_time_kernel(im_chi, t_grid, method="cutoff", tau=None, power=None,
                               rel_tol=1e-10):
    """Causal time kernel chi(t) of a response whose dissipative part is im_chi.

    ``im_chi`` is odd in frequency and is only evaluated at positive frequencies.
    For t > 0,

        chi(t) = (2/pi) int_0^inf Im chi(w) sin(w t) dw,

    understood with a short-time cutoff. Two evaluations are offered:

    * ``"cutoff"``: the integral is damped by exp(-w tau) and evaluated with QUADPACK's
      sine-weighted routine at tau, tau/2, tau/4, ... over the range where the damping
      leaves anything; Richardson extrapolation removes the polynomial bias in tau.
      The default tau (t/50 or t/20) and the number of halvings follow ``power``;
      fast growth limits the attainable accuracy through cancellation, to about
      1e-5 relative for w^4.
    * ``"rotate"``: the contour is turned onto the positive imaginary axis,
      chi(t) = (2/pi) Im[(i/t) int_0^inf Im chi(i s / t) e^{-s} ds], evaluated by
      Gauss-Laguerre quadrature. Requires ``im_chi`` to continue analytically into the
      first quadrant (polynomial or rational positive-frequency branch).

    ``power`` is the declared polynomial growth of ``im_chi``; it fixes the
    Gauss-Laguerre order for the rotated contour. Returns an array over ``t_grid``.
    """
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if np.any(t_grid == 0):
        raise ValueError("chi(t) at t = 0 depends on the short-time cutoff; not evaluated")
    out = np.zeros_like(t_grid)
    if method == "rotate":
        n = max(32, 2 * int(power or 0) + 16)
        s, w = np.polynomial.laguerre.laggauss(n)
        for i, t in enumerate(t_grid):
            if t > 0:
                vals = np.asarray(im_chi(1j * s / t), dtype=complex)
                out[i] = (2.0 / np.pi) * np.imag(1j / t * np.dot(w, vals))
        return out
    if method != "cutoff":
        raise ValueError(f"unknown method {method!r}")

    # exp(-w cut) w^p is below 1e-20 of its peak beyond (p + 60) / cut
    p = float(power) if power is not None else 8.0

    def damped(t, cut):
        upper = (p + 60.0) / cut
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val = integrate.quad(lambda w: im_chi(w) * math.exp(-w * cut), 0.0, upper,
                                 weight="sin", wvar=t, limit=4000, epsabs=0.0,
                                 epsrel=rel_tol)[0]
        return (2.0 / np.pi) * val

    # base cutoff tau / t and number of halvings: smaller tau and more levels remove
    # more bias, but w^p growth costs (t / tau)^(p+1) in cancellation
    if power is None or power <= 0:
        frac, levels = 1.0 / 50.0, 6
    elif power <= 2:
        frac, levels = 1.0 / 20.0, 5
    else:
        frac, levels = 1.0 / 50.0, 3
    nodes = 0.5 ** np.arange(levels)
    # Lagrange weights extrapolating the values at tau * nodes to tau = 0
    weights = [np.prod([nj / (nj - ni) for nj in nodes if nj != ni]) for ni in nodes]
    for i, t in enumerate(t_grid):
        if t > 0:
            cut = frac * t if tau is None else tau
            out[i] = sum(wk * damped(t, cut * nk) for wk, nk in zip(weights, nodes))
    return out
