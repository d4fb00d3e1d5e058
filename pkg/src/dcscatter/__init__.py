"""Dynamical Casimir radiation, superradiance and vacuum friction of a scalar field,
computed from classical scattering matrices. Natural units hbar = c = 1 throughout."""

__version__ = "0.1.0"

from . import kinematics, quad, radiate, scattering, specfun, stationary  # noqa: E402
from .exceptions import (ModelConsistencyError, RegimeError, RegimeWarning,  # noqa: E402
                         TruncationWarning)
from .quad import QuadResult, QuadratureError  # noqa: E402
from .radiate import (GeometryScenario, PowerSpectrum, SpectralResult,  # noqa: E402
                      radiated_power, small_body_power, sphere_power_density, waveguide_g)
from .scattering import DriveSpectrum, DrudeLorentz, PerfectDirichlet, Vacuum  # noqa: E402
from .stationary import (AtomPlateScenario, PlatePairScenario, RotatingBody,  # noqa: E402
                         atom_plate_friction, plate_friction, rotating_power,
                         thermal_radiation_power)

__all__ = [
    "AtomPlateScenario", "DriveSpectrum", "DrudeLorentz", "GeometryScenario",
    "ModelConsistencyError", "PerfectDirichlet", "PlatePairScenario", "PowerSpectrum",
    "QuadResult", "QuadratureError", "RegimeError", "RegimeWarning", "RotatingBody",
    "SpectralResult", "TruncationWarning", "Vacuum", "atom_plate_friction", "kinematics",
    "plate_friction", "quad", "radiate", "radiated_power", "rotating_power", "scattering",
    "small_body_power", "specfun", "sphere_power_density", "stationary",
    "thermal_radiation_power", "waveguide_g",
]
