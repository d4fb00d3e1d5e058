"""Quantum friction between sliding Drude plates and on a small sphere above a plate.

At zero temperature only the anomalous-Doppler window 0 < w < v kx contributes; at
finite temperature the force picks up a correction that vanishes like T^2.
"""
from dcscatter import scattering, stationary

metal = scattering.DrudeLorentz(omega_p=1.0, omega_0=0.0, gamma=0.1)

print("plate-plate, d = 1, zero temperature")
for v in (0.01, 0.02, 0.05, 0.1, 0.2):
    f = stationary.plate_friction(stationary.PlatePairScenario(metal, metal, v, 1.0)).value
    print(f"  v = {v:5.2f}   f = {f:.6e}")

f0 = stationary.plate_friction(stationary.PlatePairScenario(metal, metal, 0.1, 1.0)).value
print("\nthermal correction at v = 0.1")
for T in (4e-3, 2e-3, 1e-3, 5e-4):
    f = stationary.plate_friction(stationary.PlatePairScenario(metal, metal, 0.1, 1.0, T, T)).value
    print(f"  T = {T:.1e}   f / f(T=0) - 1 = {f / f0 - 1:.4e}")

# sphere of radius a at height d; the closed form is the quasistatic evanescent limit
atom = scattering.DrudeLorentz(1.0, 0.5, 0.2)
print("\nsphere above plate, a = 0.01, d = 1")
for v in (0.2, 0.1, 0.05, 0.025):
    sc = stationary.AtomPlateScenario(0.01, 1.0, v, atom, metal)
    g = stationary.atom_plate_friction(sc, rel_tol=1e-7).value
    c = stationary.atom_plate_friction(sc, rel_tol=1e-7, method="zero_t").value
    print(f"  v = {v:5.3f}   general = {g:.6e}   closed form = {c:.6e}   ratio = {g / c:.4f}")
