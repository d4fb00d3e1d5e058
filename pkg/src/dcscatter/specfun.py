"""Cylindrical and spherical Bessel/Hankel functions and the sphere/disk mode factors.

Cylindrical functions are taken from ``scipy.special`` (AMOS). Spherical functions use
recurrences: Miller's downward recurrence for ``j_l`` (normalised against ``j_0`` or
``j_1``) and upward recurrence for ``y_l``.

Real negative arguments of the cylindrical Hankel functions are continued with

    H_m^(1)(-x) = -(-1)^m H_m^(2)(x),    H_m^(2)(-x) = -(-1)^m H_m^(1)(x),

so that ``H^(2) = conj(H^(1))`` holds on the whole real line.
"""

import cmath
import math

import numpy as np
from scipy import special

MAX_ORDER = 256


class OrderRangeError(ValueError):
    """Requested order exceeds the configured maximum."""


def _check_order(n, max_order):
    if abs(int(n)) > max_order:
        raise OrderRangeError(f"order {n} exceeds max_order={max_order}")


def _check_kind(kind):
    if kind not in (1, 2):
        raise ValueError(f"Hankel kind must be 1 or 2, got {kind!r}")


def _sign_parity(m):
    return -1.0 if int(m) % 2 else 1.0


def cyl_hankel(kind, m, x, max_order=MAX_ORDER):
    """Cylindrical Hankel function H_m^(kind)(x) for real nonzero x."""
    _check_kind(kind)
    _check_order(m, max_order)
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise ValueError("cyl_hankel is singular at x = 0")
    ax = np.abs(x)
    h1 = special.hankel1(m, ax)
    h = h1 if kind == 1 else np.conj(h1)
    # continuation: H^(k)(-x) = -(-1)^m H^(3-k)(x)
    cont = -_sign_parity(m) * np.conj(h)
    out = np.where(x > 0, h, cont)
    return out[()] if out.ndim == 0 else out


def cyl_hankel_deriv(kind, m, x, max_order=MAX_ORDER):
    """d/dx of :func:`cyl_hankel` on the same branch."""
    _check_kind(kind)
    _check_order(m, max_order)
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise ValueError("cyl_hankel_deriv is singular at x = 0")
    ax = np.abs(x)
    d1 = special.h1vp(m, ax)
    d = d1 if kind == 1 else np.conj(d1)
    # d/dx[-(-1)^m H^(3-k)(-x)] = (-1)^m H^(3-k)'(|x|)
    cont = _sign_parity(m) * np.conj(d)
    out = np.where(x > 0, d, cont)
    return out[()] if out.ndim == 0 else out


def cyl_bessel_jy(m, x):
    """(J_m(x), Y_m(x)) for x > 0."""
    return special.jv(m, x), special.yv(m, x)


def _miller_start(lmax, z):
    az = float(np.max(np.abs(z))) if np.ndim(z) else abs(z)
    return int(lmax + 32 + az + np.sqrt(40.0 * (lmax + az + 1.0)))


def _sph_j_table(lmax, z):
    """j_0..j_lmax at (possibly complex) z via Miller's downward recurrence.

    Returns an array of shape ``(lmax + 1,) + np.shape(z)``. ``z`` must be nonzero
    and ``lmax >= 1``.
    """
    if lmax < 1:
        raise ValueError("Miller table needs lmax >= 1")
    z = np.asarray(z)
    dtype = np.result_type(z.dtype, np.float64)
    n_start = _miller_start(lmax, z)
    f_next = np.zeros(z.shape, dtype=dtype)
    f_cur = np.full(z.shape, 1e-300, dtype=dtype)
    table = np.empty((lmax + 1,) + z.shape, dtype=dtype)
    for n in range(n_start, 0, -1):
        f_prev = (2 * n + 1) / z * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        big = np.abs(f_cur) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            f_cur = f_cur * scale
            f_next = f_next * scale
            if n - 1 < lmax:
                table[n:] *= scale
        if n - 1 <= lmax:
            table[n - 1] = f_cur
    j0 = np.sin(z) / z
    j1 = np.sin(z) / z**2 - np.cos(z) / z
    f0 = table[0]
    f1 = table[1]
    use_j0 = np.abs(j0) >= np.abs(j1)
    norm = np.where(use_j0, j0 / np.where(f0 == 0, 1, f0), j1 / np.where(f1 == 0, 1, f1))
    return table * norm


def _sph_j_scalar(lmax, z, scaled=False):
    """Scalar (float or complex) version of :func:`_sph_j_table`, values and derivatives.

    Plain Python arithmetic: much faster than numpy for the short recurrences used
    inside the lossy-sphere S-matrix. ``scaled=True`` multiplies everything by
    exp(-|Im z|), which keeps strongly absorbing interiors finite.
    """
    top = lmax + 1
    n_start = _miller_start(top, z)
    f_next, f_cur = 0.0, 1e-300
    vals = [0.0] * (top + 1)
    for n in range(n_start, 0, -1):
        f_prev = (2 * n + 1) / z * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        if abs(f_cur) > 1e250:
            f_cur *= 1e-250
            f_next *= 1e-250
            for i in range(n, top + 1):
                vals[i] *= 1e-250
        if n - 1 <= top:
            vals[n - 1] = f_cur
    if isinstance(z, complex):
        if scaled:
            shift = abs(z.imag)
            ep, em = cmath.exp(1j * z - shift), cmath.exp(-1j * z - shift)
            s, c = (ep - em) / 2j, (ep + em) / 2
        else:
            s, c = cmath.sin(z), cmath.cos(z)
    else:
        s, c = math.sin(z), math.cos(z)
    j0 = s / z
    j1 = s / (z * z) - c / z
    norm = j0 / vals[0] if abs(j0) >= abs(j1) else j1 / vals[1]
    vals = [v * norm for v in vals]
    ders = [-vals[1]] + [vals[l - 1] - (l + 1) / z * vals[l] for l in range(1, lmax + 1)]
    return vals[: lmax + 1], ders


def _sph_h1_scalar(lmax, x):
    """h_l^(1)(x) and derivatives, l = 0..lmax, for real scalar x > 0."""
    j, dj = _sph_j_scalar(lmax, float(x))
    y = [-math.cos(x) / x, -math.cos(x) / x**2 - math.sin(x) / x]
    for n in range(1, lmax + 1):
        y.append((2 * n + 1) / x * y[n] - y[n - 1])
    dy = [-y[1]] + [y[l - 1] - (l + 1) / x * y[l] for l in range(1, lmax + 1)]
    h = [complex(j[l], y[l]) for l in range(lmax + 1)]
    dh = [complex(dj[l], dy[l]) for l in range(lmax + 1)]
    return h, dh


def _sph_y_table(lmax, x):
    x = np.asarray(x, dtype=float)
    table = np.empty((lmax + 1,) + x.shape)
    table[0] = -np.cos(x) / x
    if lmax >= 1:
        table[1] = -np.cos(x) / x**2 - np.sin(x) / x
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, lmax):
            table[n + 1] = (2 * n + 1) / x * table[n] - table[n - 1]
    return table


def _deriv_table(table, x):
    """Derivatives of a spherical-function table using f_l' = f_{l-1} - (l+1) f_l / x."""
    out = np.empty_like(table)
    lmax = table.shape[0] - 1
    if lmax == 0:
        raise ValueError("derivative table needs lmax >= 1")
    out[0] = -table[1]
    ls = np.arange(1, lmax + 1).reshape((-1,) + (1,) * np.ndim(x))
    with np.errstate(over="ignore", invalid="ignore"):
        out[1:] = table[:-1] - (ls + 1) / x * table[1:]
    return out


def sph_bessel_table(kind, lmax, x, derivative=False, max_order=MAX_ORDER):
    """Spherical functions of orders 0..lmax at real x > 0.

    ``kind`` is ``"j"``, ``"y"``, ``"h1"`` or ``"h2"``. With ``derivative=True`` a
    pair ``(values, derivatives)`` is returned. Orders where ``y_l`` overflows carry
    infinite entries; callers forming reciprocals get exact zeros.
    """
    _check_order(lmax, max_order)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("spherical Bessel functions are evaluated at x > 0")
    # one extra order so that derivatives of order lmax are available
    top = lmax + 1
    if kind == "j":
        table = _sph_j_table(top, x).real
    elif kind == "y":
        table = _sph_y_table(top, x)
    elif kind in ("h1", "h2"):
        j = _sph_j_table(top, x).real
        y = _sph_y_table(top, x)
        sign = 1.0 if kind == "h1" else -1.0
        with np.errstate(invalid="ignore"):
            table = j + 1j * sign * y
    else:
        raise ValueError(f"unknown spherical function kind {kind!r}")
    if not derivative:
        return table[: lmax + 1]
    return table[: lmax + 1], _deriv_table(table, x)[: lmax + 1]


def sph_bessel(kind, l, x, derivative=False, max_order=MAX_ORDER):
    """Single-order spherical function j_l, h_l^(1) or h_l^(2) (or its x-derivative)."""
    if l < 0:
        raise ValueError("spherical order must be non-negative")
    values, derivs = sph_bessel_table(kind, l, x, derivative=True, max_order=max_order)
    out = derivs[l] if derivative else values[l]
    return out[()] if np.ndim(out) == 0 else out


def mode_factor_F(l, x, max_order=MAX_ORDER):
    """F_l(x) = 1 / (x h_l^(1)(x)) for real nonzero x.

    Uses h_l^(1)(-x) = (-1)^l h_l^(2)(x) for negative arguments; returns 0 where
    h_l^(1) overflows (l much larger than |x|).
    """
    return mode_factor_F_table(l, x, max_order=max_order)[l]


def mode_factor_F_table(lmax, x, max_order=MAX_ORDER):
    """F_0..F_lmax at real nonzero x, shape ``(lmax + 1,) + shape(x)``."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise ValueError("mode factor F is singular at x = 0")
    ax = np.abs(x)
    h1 = sph_bessel_table("h1", lmax, ax, max_order=max_order)
    parity = np.where(np.arange(lmax + 1) % 2 == 1, -1.0, 1.0).reshape((-1,) + (1,) * x.ndim)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        h = np.where(x > 0, h1, parity * np.conj(h1))
        denom = x * h
        finite = np.isfinite(denom.real) & np.isfinite(denom.imag)
        out = np.where(finite, 1.0 / np.where(finite, denom, 1.0), 0.0)
    return out


def mode_factor_M(m, x, max_order=MAX_ORDER):
    """M_m(x) = 1 / H_m^(1)(x) for real nonzero x (0 where H overflows)."""
    h = np.asarray(cyl_hankel(1, m, x, max_order=max_order))
    finite = np.isfinite(h.real) & np.isfinite(h.imag)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(finite, 1.0 / np.where(finite, h, 1.0), 0.0)
    return out[()] if out.ndim == 0 else out
