"""Radiated power of shaken mirrors, lines, plates and spheres against closed forms.

Each engine integrates the sideband amplitudes over the window -Omega < w < 0 and
the result is divided by the power of Omega it should scale with.
"""
import math

from dcscatter import radiate

W = 0.9

rows = [
    ("point mirror, f / W^4", radiate.spectral_factor_point(W).value / W**4, 1 / (3 * math.pi)),
    ("line, f / (L W^5)", radiate.spectral_factor_line(W, 1.0).value / W**5, 1 / 128),
    ("plate, f / (A W^6)", radiate.spectral_factor_plate(W, 1.0).value / W**6,
     1 / (180 * math.pi**2)),
    ("sphere W R = 0.01, P / (W R)^6",
     radiate.sphere_power_density(0.01, 1.0).value / 0.01**6, 1 / (30 * math.pi)),
]
print(f"{'quantity':34s} {'computed':>14s} {'closed form':>14s} {'rel. diff':>10s}")
for name, got, ref in rows:
    print(f"{name:34s} {got:14.8g} {ref:14.8g} {got / ref - 1:10.2e}")

# the waveguide only radiates once both sidebands fit a guide mode: nu = W L > 2 pi
print("\nwaveguide suppression g(nu)")
for nu in (6.0, 2 * math.pi, 6.5, 10.0, 50.0, 400.0):
    print(f"  nu = {nu:7.3f}   g = {radiate.waveguide_g(nu):12.6g}   g / nu = "
          f"{radiate.waveguide_g(nu) / nu:8.4f}")

# corrugated plate: travelling ripple with wavevector q radiates only above W = |q|
q = (0.3, 0.4)
print("\ncorrugated plate, |q| = 0.5")
for W in (0.4, 0.5, 1.0, 5.0):
    closed = radiate.corrugated_plate_density(W, q, 1.0)
    num = radiate.corrugated_plate_density(W, q, 1.0, method="quadrature")
    print(f"  W = {W:4.1f}   quadrature = {num:12.6g}   closed = {closed:12.6g}")
