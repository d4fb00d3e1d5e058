import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from dcscatter import scattering as sc, stationary as st
from dcscatter.exceptions import RegimeError, RegimeWarning

DRUDE = sc.DrudeLorentz(1.0, 0.0, 0.1)
LORENTZ = sc.DrudeLorentz(2.0, 1.0, 0.3)


def plates(v, T1=0.0, T2=0.0, d=1.0):
    return st.PlatePairScenario(DRUDE, DRUDE, v, d, T1, T2)


def cartesian_zero_t(scn, n_s=120, n_y=400, k_max=10.0):
    """int_{kx>0} dkx int dky int_0^{v kx} dw of the integrand, on a Cartesian grid."""
    x, wx = np.polynomial.legendre.leggauss(n_s)
    s, ws = (x + 1) / 2, wx / 2
    y, wy = np.polynomial.legendre.leggauss(n_y)
    S, KY = np.meshgrid(s, k_max * y, indexing="ij")
    W = np.outer(ws, k_max * wy)

    def f(kx):
        vals = st.plate_friction_integrand(scn, scn.v * kx * S, kx, KY)
        return float(np.sum(W * vals)) * scn.v * kx

    return integrate.quad(f, 0, k_max, epsrel=1e-9, limit=200)[0]


def test_zero_t_plate_friction_against_cartesian_rule():
    scn = plates(0.1)
    assert st.plate_friction(scn).value == pytest.approx(cartesian_zero_t(scn), rel=1e-5)


def test_zero_t_friction_positive_and_odd():
    fp = st.plate_friction(plates(0.1)).value
    fm = st.plate_friction(plates(-0.1)).value
    assert fp > 0
    assert fm == pytest.approx(-fp, rel=1e-12)
    assert st.plate_friction(plates(0.0)).value == 0.0


def test_finite_t_approaches_zero_t_quadratically():
    z = st.plate_friction(plates(0.1)).value
    ex = [st.plate_friction(plates(0.1, T, T)).value / z - 1 for T in (5e-4, 2.5e-4)]
    assert ex[0] > ex[1] > 0
    assert ex[0] / ex[1] == pytest.approx(4.0, rel=0.25)


def test_finite_t_equilibrium_at_rest_is_zero():
    assert st.plate_friction(plates(0.0, 0.05, 0.05)).value == 0.0


def test_zero_t_support():
    scn = plates(0.1)
    rng = np.random.default_rng(1)
    w = rng.uniform(1e-3, 2.0, 2000)
    kx = rng.uniform(-20, 20, 2000)
    ky = rng.uniform(-20, 20, 2000)
    vals = st.plate_friction_integrand(scn, w, kx, ky)
    inside = w < scn.v * kx
    assert np.all(vals[~inside] == 0)
    assert np.all(vals[inside] >= 0)


def test_single_reflection_is_smaller():
    full = st.plate_friction(plates(0.1)).value
    single = st.plate_friction(plates(0.1), multiple_reflections=False).value
    assert 0 < single and single != pytest.approx(full, rel=1e-6)


def test_plate_scenario_validation():
    with pytest.raises(ValueError):
        plates(0.1, d=0.0)
    with pytest.raises(ValueError):
        plates(1.0)
    with pytest.raises(ValueError):
        plates(0.1, T1=-1.0)


def test_rotating_power_against_direct_sum():
    body = st.RotatingBody(0.5, LORENTZ, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        got = st.rotating_power(body, m_max=2, l_max=3, tail_tol=1e-30).value
    ref = 0.0
    for m in (1, 2):
        for l in range(m, 4):
            ref += integrate.quad(lambda w: st.superradiant_integrand(body, l, m, w), 0, m * 1.0,
                                  epsrel=1e-11, points=[1.0 * m - 1.0, 1.0 * m + 1.0][:1]
                                  if m > 1 else None, limit=200)[0]
    assert got == pytest.approx(ref, rel=1e-7)
    assert got > 0


def test_superradiant_sign():
    body = st.RotatingBody(0.5, LORENTZ, 1.0)
    assert st.superradiant_integrand(body, 1, 1, 0.5) > 0
    assert st.superradiant_integrand(body, 1, 1, 1.5) < 0
    assert st.superradiant_integrand(body, 1, -1, 0.5) < 0


def test_rotating_power_trivial_cases():
    assert st.rotating_power(st.RotatingBody(0.5, LORENTZ, 0.0)).value == 0.0
    assert st.rotating_power(st.RotatingBody(0.5, sc.PerfectDirichlet(), 1.0)).value == 0.0
    with pytest.warns(RegimeWarning):
        st.RotatingBody(1.0, LORENTZ, 1.5)


def test_thermal_detailed_balance_and_sign():
    body = st.RotatingBody(0.5, LORENTZ)
    assert abs(st.thermal_radiation_power(body, 0.3, 0.3).value) < 1e-15
    hot = st.thermal_radiation_power(body, 0.4, 0.2).value
    cold = st.thermal_radiation_power(body, 0.2, 0.4).value
    assert hot > 0 > cold
    assert st.thermal_radiation_power(st.RotatingBody(0.5, sc.Vacuum()), 1.0, 0.0).value == 0


def test_rotating_thermal_reduces_to_zero_t_power():
    body = st.RotatingBody(0.5, LORENTZ, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        a = st.rotating_power(body, m_max=3, l_max=6).value
        b = st.thermal_radiation_power(body, 0.0, 0.0, "rotation", m_max=3, l_max=6).value
    assert b == pytest.approx(a, rel=1e-10)


def atom(a=0.01, v=0.05, T=0.0, method="general"):
    scn = st.AtomPlateScenario(a, 1.0, v, sc.DrudeLorentz(1.0, 0.5, 0.2), DRUDE, T, T)
    return st.atom_plate_friction(scn, rel_tol=1e-7, method=method).value


def test_atom_plate_cubic_in_radius():
    assert atom(0.02) / atom(0.01) == pytest.approx(8.0, abs=1e-3)


def test_atom_plate_general_over_closed_form_tends_to_quarter():
    # the closed form keeps only the quasistatic evanescent part; the ratio approaches
    # 1/4 with an O(v^2) correction
    r1 = atom(v=0.1) / atom(v=0.1, method="zero_t")
    r2 = atom(v=0.05) / atom(v=0.05, method="zero_t")
    assert abs(r2 - 0.25) < abs(r1 - 0.25)
    # halving v divides the excess by about 4 (higher orders still visible at v = 0.1)
    assert 3.0 < (r1 - 0.25) / (r2 - 0.25) < 6.0
    assert r2 == pytest.approx(0.25, rel=0.01)


def test_atom_plate_odd_in_v_at_finite_t():
    fp = atom(v=0.05, T=0.05)
    fm = atom(v=-0.05, T=0.05)
    assert fm == pytest.approx(-fp, rel=1e-6)


def test_atom_plate_validation():
    with pytest.raises(RegimeError):
        st.AtomPlateScenario(0.3, 1.0, 0.1, LORENTZ, DRUDE)
    scn = st.AtomPlateScenario(0.01, 1.0, 0.1, LORENTZ, DRUDE, 0.1, 0.1)
    with pytest.raises(ValueError):
        st.atom_plate_friction(scn, method="zero_t")
    with pytest.raises(ValueError):
        st.atom_plate_friction(scn, method="guess")


def test_spherical_harmonics_of_plane_direction():
    # real directions: sum_m |Y_lm|^2 = (2l + 1) / 4 pi
    w, kx, ky = 1.0, 0.3, 0.4
    kp = math.sqrt(1 - 0.25)
    for l in range(4):
        tot = sum(abs(st.sph_harm_k(l, m, kx, ky, kp, w)) ** 2 for m in range(-l, l + 1))
        assert tot == pytest.approx((2 * l + 1) / (4 * math.pi), rel=1e-12)
    with pytest.raises(ValueError):
        st.sph_harm_k(1, 2, kx, ky, kp, w)
