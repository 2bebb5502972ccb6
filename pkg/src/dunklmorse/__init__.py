"""Dunkl-Morse diatomic model: special functions, Dunkl angular sector,
Pekeris-approximated spectrum, vibrational thermodynamics and numerical oracles."""

__version__ = "0.1.0"

from .angular import DunklParams, ParityLabels, azimuthal_wavefunction, polar_wavefunction
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    DomainTooSmallError,
    DunklMorseError,
    NoBindingError,
    OutOfRangeError,
    RangeError,
    UnknownMoleculeError,
    UnphysicalConfigurationError,
)
from .molecules import builtin_molecules, lookup
from .spectrum import (
    CM_PER_EV,
    Molecule,
    PekerisVariant,
    bound_state_range,
    energy,
    pekeris_coefficients,
    radial_wavefunction,
    spectral_params,
)
from .thermo import K_B, Method, thermal_functions, thermo_params, vibrational_levels

__all__ = [
    "__version__",
    "CM_PER_EV",
    "K_B",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "DomainTooSmallError",
    "DunklMorseError",
    "DunklParams",
    "Method",
    "Molecule",
    "NoBindingError",
    "OutOfRangeError",
    "ParityLabels",
    "PekerisVariant",
    "RangeError",
    "UnknownMoleculeError",
    "UnphysicalConfigurationError",
    "azimuthal_wavefunction",
    "bound_state_range",
    "builtin_molecules",
    "energy",
    "lookup",
    "pekeris_coefficients",
    "polar_wavefunction",
    "radial_wavefunction",
    "spectral_params",
    "thermal_functions",
    "thermo_params",
    "vibrational_levels",
]
