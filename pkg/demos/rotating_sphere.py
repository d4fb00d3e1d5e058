"""Zero-temperature emission of a rotating lossy sphere (rotational superradiance).

Partial waves with 0 < w < m Omega are amplified, |S_lm|^2 > 1; the radiated power
sums the excess over that window.
"""
import warnings

import numpy as np

from dcscatter import scattering, stationary

mat = scattering.DrudeLorentz(omega_p=2.0, omega_0=1.0, gamma=0.3)
body = stationary.RotatingBody(a=0.5, material=mat, Omega_rot=1.0)

print("|S_lm|^2 - 1 for l = 1 across the window edge w = m Omega")
for w in np.linspace(0.2, 2.2, 6):
    gains = [abs(scattering.s_lossy_sphere(1, w, 0.5, mat, 1.0, m)) ** 2 - 1 for m in (-1, 0, 1)]
    print(f"  w = {w:4.2f}   m=-1: {gains[0]:+.3e}   m=0: {gains[1]:+.3e}   m=+1: {gains[2]:+.3e}")

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    r = stationary.rotating_power(body, m_max=4, l_max=8)
print(f"\nP = {r.value:.6e} (tail estimate {r.tail:.1e})")

# with the material resonance outside the window the power is linear in the damping;
# a resonance inside it (omega_0 = 1 here) makes the lossless limit non-uniform
for w0 in (5.0, 1.0):
    print(f"\nomega_0 = {w0}")
    for g in (0.3, 0.03, 0.003):
        b = stationary.RotatingBody(0.5, scattering.DrudeLorentz(2.0, w0, g), 1.0)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            p = stationary.rotating_power(b, m_max=3, l_max=6).value
        print(f"  gamma = {g:6.3f}   P = {p:.4e}   P / gamma = {p / g:.4e}")
