import math

import mpmath as mp
import numpy as np
import pytest

from dcscatter import quad


def test_sqrt_endpoint_semicircle():
    r = quad.integrate_adaptive(lambda x: math.sqrt(1 - x * x), -1, 1, rel_tol=1e-12,
                                singularity_hint="sqrt_endpoint")
    assert r.value == pytest.approx(math.pi / 2, rel=1e-12)
    assert r.evaluations > 0


def test_log_endpoint():
    r = quad.integrate_adaptive(lambda x: math.log(x), 0, 1, rel_tol=1e-10,
                                singularity_hint="log_endpoint")
    assert r.value == pytest.approx(-1.0, rel=1e-10)


def test_plain_and_complex():
    r = quad.integrate_adaptive(lambda x: np.exp(1j * x), 0, math.pi, complex_valued=True)
    assert r.value == pytest.approx(2j, abs=1e-12)
    assert quad.integrate_adaptive(math.sin, 0, math.pi).value == pytest.approx(2.0)


def test_bad_arguments():
    with pytest.raises(ValueError):
        quad.integrate_adaptive(math.sin, 1, 0)
    with pytest.raises(ValueError):
        quad.integrate_adaptive(math.sin, 0, 1, singularity_hint="spooky")
    with pytest.raises(ValueError):
        quad.integrate_semi_infinite(math.exp, decay=("gaussian", 1.0))


def test_semi_infinite_bose():
    # int_0^inf x^3 / (e^{x/T} - 1) = pi^4 T^4 / 15
    T = 0.7
    r = quad.integrate_semi_infinite(lambda x: x**3 / math.expm1(x / T) if x > 0 else 0.0,
                                     rel_tol=1e-10, decay=("bose", T))
    assert r.value == pytest.approx(math.pi**4 * T**4 / 15, rel=1e-9)


def test_semi_infinite_exponential():
    r = quad.integrate_semi_infinite(lambda x: math.exp(-3 * x), decay=("exponential", 3.0))
    assert r.value == pytest.approx(1 / 3, rel=1e-10)


def test_nonconvergence_raises_with_partial():
    f = lambda x: math.sin(1 / x) / x if x else 0.0
    with pytest.raises(quad.QuadratureError) as exc:
        quad.integrate_adaptive(f, 0, 1, rel_tol=1e-12, limit=3)
    assert isinstance(exc.value.partial, quad.QuadResult)


def test_quad_result_arithmetic():
    a = quad.QuadResult(1.0, 0.1, 10) + quad.QuadResult(2.0, 0.2, 5)
    assert (a.value, a.abs_err, a.evaluations) == (3.0, pytest.approx(0.3), 15)
    assert a.scaled(-2).abs_err == pytest.approx(0.6)
    assert quad.QuadResult(0.0, 0.0, 0).rel_err == math.inf
    with pytest.raises(ValueError):
        quad.QuadResult(1.0, -1.0, 0)


def test_2d_lightcone_sector():
    # int_0^1 dw int_{-w}^{w} dk sqrt(w^2 - k^2) = int_0^1 pi w^2 / 2 dw = pi / 6
    region = quad.LightconeSector(0.0, 1.0)
    r = quad.integrate_2d(lambda w, k: math.sqrt(max(w * w - k * k, 0.0)), region,
                          rel_tol=1e-9, inner_hint="sqrt_endpoint")
    assert r.value == pytest.approx(math.pi / 6, rel=1e-9)


def test_2d_shifted_cone_radial():
    region = quad.LightconeSector(-1.0, 0.0, shift=1.0, radial=True)
    assert region.y_bounds(-0.3) == (0.0, 0.3)
    assert region.y_bounds(-0.8) == (0.0, pytest.approx(0.2))
    r = quad.integrate_2d(lambda w, k: 1.0, region, rel_tol=1e-9)
    assert r.value == pytest.approx(0.25, rel=1e-8)


def test_2d_rectangle_against_mpmath():
    f = lambda x, y: math.exp(-x * y) * math.cos(x + y)
    r = quad.integrate_2d(f, quad.Rectangle(0, 1, 0, 2), rel_tol=1e-10)
    ref = mp.quad(lambda x, y: mp.exp(-x * y) * mp.cos(x + y), [0, 1], [0, 2])
    assert r.value == pytest.approx(float(ref), rel=1e-9)


def power_law_kernel(p, t):
    """(2/pi) int_0^inf w^p sin(w t) dw in the Abel sense: (2/pi) Gamma(p+1) sin(pi(p+1)/2) / t^{p+1}."""
    return 2 / math.pi * math.gamma(p + 1) * math.sin(math.pi * (p + 1) / 2) / t ** (p + 1)


@pytest.mark.parametrize("method", ["cutoff", "rotate"])
def test_kk_kernel_quartic(method):
    # Im chi = w^4 / 2 gives chi(t) = 24 / (pi t^5)
    t = np.array([0.5, 1.0, 2.0])
    got = quad.kramers_kronig_time_kernel(lambda w: 0.5 * w**4, t, method=method, power=4)
    assert np.allclose(got * t**5, 24 / math.pi, rtol=2e-5 if method == "cutoff" else 1e-10)


@pytest.mark.parametrize("method", ["cutoff", "rotate"])
def test_kk_kernel_quadratic(method):
    # Im chi = w |w| gives chi(t) = -4 / (pi t^3); odd power checks the Richardson step
    t = np.array([0.7, 1.0, 3.0])
    got = quad.kramers_kronig_time_kernel(lambda w: w * w, t, method=method, power=2)
    assert np.allclose(got, [power_law_kernel(2, x) for x in t], rtol=1e-6)
    assert np.allclose(got * t**3, -4 / math.pi, rtol=1e-6)


def test_kk_kernel_ohmic_is_zero():
    # Im chi = w: the kernel is a delta'(t) at the origin and vanishes for t > 0
    t = np.array([0.5, 2.0])
    got = quad.kramers_kronig_time_kernel(lambda w: w, t, method="cutoff", power=1)
    assert np.all(np.abs(got) * t**2 < 1e-7)
    assert power_law_kernel(1, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_kk_kernel_lorentzian_against_closed_form():
    # Im chi = g w / ((w0^2 - w^2)^2 + g^2 w^2), chi(t) = e^{-g t/2} sin(w1 t) / w1
    w0, g = 1.0, 0.4
    w1 = math.sqrt(w0**2 - g**2 / 4)
    im = lambda w: g * w / ((w0**2 - w**2) ** 2 + g**2 * w**2)
    t = np.array([0.5, 2.0, 6.0])
    got = quad.kramers_kronig_time_kernel(im, t, method="cutoff", power=0)
    ref = np.exp(-g * t / 2) * np.sin(w1 * t) / w1
    assert np.allclose(got, ref, rtol=1e-9, atol=1e-11)


def test_kk_kernel_rejects_t_zero():
    with pytest.raises(ValueError):
        quad.kramers_kronig_time_kernel(lambda w: w, [0.0, 1.0])
    with pytest.raises(ValueError):
        quad.kramers_kronig_time_kernel(lambda w: w, [1.0], method="magic")
