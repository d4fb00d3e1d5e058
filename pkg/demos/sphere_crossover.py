"""Shaken Dirichlet sphere from the small-body to the geometric-optics limit.

P / (W R)^6 tends to 1/(30 pi) for W R << 1 and to 1/(270 pi) for W R >> 1. The
large-size limit is approached slowly: the excess falls like 5.4 / (W R), so at
W R = 50 the partial-wave sum is still about 11% above the asymptote.
"""
import math

from dcscatter import radiate

small, large = 1 / (30 * math.pi), 1 / (270 * math.pi)
print(f"{'W R':>8s} {'l_max':>6s} {'P/(WR)^6':>14s} {'/ small':>10s} {'/ large':>10s}"
      f" {'(ratio-1) W R':>14s}")
for x in (0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 12.5, 25.0, 50.0, 100.0):
    p = radiate.sphere_power_density(x, 1.0).value / x**6
    print(f"{x:8.2f} {radiate.default_l_max(x, 1.0):6d} {p:14.6e} {p / small:10.4f}"
          f" {p / large:10.4f} {(p / large - 1) * x:14.3f}")

r = radiate.sphere_continuum_integral()
print(f"\ncontinuum (sigma, x) integral = {r.value:.12f}   1/360 = {1 / 360:.12f}")
