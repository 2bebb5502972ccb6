"""Pekeris-approximated Dunkl-Morse radial problem: coefficients, closed-form
spectrum, admissible quantum-number window and radial wavefunctions.

Energies are carried in cm^-1. The radial coordinate is chi = (r - r_e)/r_e and
rho = exp(-alpha chi), so the physical domain is rho in (0, e^alpha).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .angular import DunklParams, polar_eigenvalue
from .errors import DomainError, NoBindingError, OutOfRangeError, UnphysicalConfigurationError
from .specfun import kummer_1f1

CM_PER_EV = 8065.543937


class PekerisVariant(str, enum.Enum):
    PAPER = "paper"
    TAYLOR_MATCHED = "taylor_matched"

    @classmethod
    def parse(cls, value) -> "PekerisVariant":
        if isinstance(value, cls):
            return value
        aliases = {"paper": cls.PAPER, "taylor": cls.TAYLOR_MATCHED, "taylor_matched": cls.TAYLOR_MATCHED}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise DomainError(f"unknown Pekeris variant {value!r}; choose paper or taylor") from None


@dataclass(frozen=True)
class Molecule:
    name: str
    P: float      # hbar^2 / (2 M r_e^2), cm^-1
    D: float      # well depth, cm^-1
    alpha: float  # dimensionless width

    def __post_init__(self):
        if not (self.P > 0 and self.D > 0 and self.alpha > 0):
            raise DomainError(f"molecule {self.name}: P, D and alpha must be positive")

    @property
    def depth_ratio(self) -> float:
        return self.D / self.P


@dataclass(frozen=True)
class PekerisCoeffs:
    C0: float
    C1: float
    C2: float
    variant: PekerisVariant

    def centrifugal(self, alpha: float, chi):
        """C0 + C1 exp(-alpha chi) + C2 exp(-2 alpha chi)."""
        y = np.exp(-alpha * np.asarray(chi, dtype=float))
        return self.C0 + self.C1 * y + self.C2 * y * y


def pekeris_coefficients(alpha: float, variant=PekerisVariant.PAPER) -> PekerisCoeffs:
    variant = PekerisVariant.parse(variant)
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    inv = 1.0 / alpha
    inv2 = inv * inv
    c0 = 1.0 - 3.0 * inv + 3.0 * inv2
    c2 = -inv + 3.0 * inv2
    if variant is PekerisVariant.PAPER:
        c1 = 4.0 * inv + 6.0 * inv2
    else:
        c1 = 4.0 * inv - 6.0 * inv2
        # second-order match of (1 + chi)^-2 at chi = 0
        assert abs(c0 + c1 + c2 - 1.0) <= 1e-12
        assert abs(c1 + 2.0 * c2 - 2.0 * inv) <= 1e-12 * max(1.0, 2.0 * inv)
        assert abs(0.5 * c1 + 2.0 * c2 - 3.0 * inv2) <= 1e-12 * max(1.0, 3.0 * inv2)
    return PekerisCoeffs(c0, c1, c2, variant)


@dataclass(frozen=True)
class SpectralParams:
    """Constants of the Pekeris-reduced radial equation for one configuration.

    ``A`` is the full angular coefficient varpi^2 + mu(mu + 1).
    """

    molecule: Molecule
    coeffs: PekerisCoeffs
    A: float
    xi_sq: float
    eta: float

    @property
    def alpha(self) -> float:
        return self.molecule.alpha

    @property
    def gamma(self) -> float:
        return self.eta / self.alpha

    @property
    def vertex(self) -> float:
        """xi^2 / (eta alpha), where the energy parabola in n turns over."""
        return self.xi_sq / (self.eta * self.alpha)

    def W_of_E(self, E_cm: float) -> float:
        """Constant term of the reduced equation: E/P - A C0."""
        return E_cm / self.molecule.P - self.A * self.coeffs.C0

    def beta_from_energy(self, E_cm: float) -> float:
        """Non-negative root of beta^2 = -W / alpha^2."""
        b2 = -self.W_of_E(E_cm) / self.alpha ** 2
        if b2 < 0:
            raise DomainError("energy above the Pekeris continuum edge; beta is imaginary")
        return math.sqrt(b2)

    def beta_exp(self, n: int) -> float:
        """Exponent fixed by the quantization condition for level n."""
        return self.vertex - n - 0.5


def spectral_params(mol: Molecule, p: DunklParams, A: float, variant=PekerisVariant.PAPER) -> SpectralParams:
    coeffs = pekeris_coefficients(mol.alpha, variant)
    ratio = mol.depth_ratio
    eta_sq = ratio + coeffs.C2 * A
    xi_sq = ratio - 0.5 * coeffs.C1 * A
    if not eta_sq > 0:
        raise UnphysicalConfigurationError(f"eta^2 = {eta_sq:g} <= 0 for {mol.name}, A={A:g}")
    if not xi_sq > 0:
        raise NoBindingError(f"xi^2 = {xi_sq:g} <= 0 for {mol.name}, A={A:g}")
    return SpectralParams(mol, coeffs, A, xi_sq, math.sqrt(eta_sq))


def angular_coefficient(p: DunklParams, ell: float, m: float) -> float:
    return polar_eigenvalue(ell, m, p) + p.centrifugal_shift


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    ell: float
    m: float
    E_cm: float

    @property
    def E_eV(self) -> float:
        return self.E_cm / CM_PER_EV


def level_energy(sp: SpectralParams, n: int) -> float:
    """Closed-form level energy in cm^-1."""
    a = sp.alpha
    return sp.molecule.P * (sp.A * sp.coeffs.C0 - a * a * (n + 0.5 - sp.vertex) ** 2)


def window_from_params(sp: SpectralParams) -> tuple[int, int]:
    """Integers n >= 0 inside vertex - 1/2 +- sqrt(A C0)/alpha; empty when n_min > n_max."""
    ac0 = sp.A * sp.coeffs.C0
    if ac0 < 0:
        raise DomainError(f"A*C0 = {ac0:g} < 0; window undefined")
    half = math.sqrt(ac0) / sp.alpha
    centre = sp.vertex - 0.5
    lo = max(0, math.ceil(centre - half))
    hi = math.floor(centre + half)
    return lo, hi


def bound_state_range(mol: Molecule, p: DunklParams, ell: float, m: float, variant=PekerisVariant.PAPER):
    sp = spectral_params(mol, p, angular_coefficient(p, ell, m), variant)
    return window_from_params(sp)


def energy(
    mol: Molecule,
    p: DunklParams,
    n: int,
    ell: float,
    m: float,
    variant=PekerisVariant.PAPER,
    enforce_window: bool = False,
) -> EnergyLevel:
    """Level E_{n,ell,m}.

    With ``enforce_window`` the level must lie inside ``bound_state_range``;
    otherwise any n >= 0 is evaluated (the published tables include levels
    outside that window).
    """
    if int(n) != n or n < 0:
        raise OutOfRangeError(f"n must be a non-negative integer, got {n}")
    sp = spectral_params(mol, p, angular_coefficient(p, ell, m), variant)
    if enforce_window:
        lo, hi = window_from_params(sp)
        if not lo <= n <= hi:
            raise OutOfRangeError(f"n={n} outside admissible window [{lo}, {hi}]", window=(lo, hi))
    return EnergyLevel(int(n), ell, m, level_energy(sp, int(n)))


# ---------------------------------------------------------------- wavefunctions

def _hyper_argument(sp: SpectralParams, rho, argument: str):
    if argument == "2gamma":
        return 2.0 * sp.gamma * rho
    if argument == "printed":
        return sp.alpha * rho / (2.0 * sp.eta)
    raise DomainError(f"unknown 1F1 argument convention {argument!r}")


def radial_profile(sp: SpectralParams, n: int, rho, argument: str = "2gamma"):
    """Unnormalized rho^beta exp(-gamma rho) 1F1(-n; 1 + 2 beta; z)."""
    beta = sp.beta_exp(n)
    rho = np.asarray(rho, dtype=float)
    z = _hyper_argument(sp, rho, argument)
    a_param = 0.5 - sp.xi_sq / (sp.gamma * sp.alpha ** 2) + beta
    if abs(a_param + n) > 1e-9 * max(1.0, n):
        raise AssertionError(f"1F1 first parameter {a_param} is not -n for n={n}")
    hyper = np.array([kummer_1f1(-n, 1.0 + 2.0 * beta, zi) for zi in np.ravel(z)]).reshape(z.shape)
    return rho ** beta * np.exp(-sp.gamma * rho) * hyper


def radial_norm_sq(sp: SpectralParams, n: int, argument: str = "2gamma") -> float:
    """int_0^{e^alpha} |Psi|^2 drho / (alpha rho) for the unnormalized profile."""
    beta = sp.beta_exp(n)
    upper = math.exp(sp.alpha)
    peak = min(max(beta / sp.gamma, 1e-12), upper)

    def integrand(r):
        return float(radial_profile(sp, n, r, argument)) ** 2 / (sp.alpha * r)

    total = 0.0
    for lo, hi in ((0.0, peak), (peak, upper)):
        if hi > lo:
            val, _ = integrate.quad(integrand, lo, hi, limit=400, epsabs=0.0, epsrel=1e-12)
            total += val
    return total


def radial_wavefunction(sp: SpectralParams, n: int, rho, argument: str = "2gamma"):
    """Psi(rho) = N rho^beta exp(-gamma rho) 1F1(-n; 1 + 2 beta; 2 gamma rho), unit norm.

    ``argument="printed"`` swaps the 1F1 argument for alpha rho / (2 eta); it
    is kept only for comparison and does not solve the radial equation.
    """
    if int(n) != n or n < 0:
        raise OutOfRangeError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    if not sp.beta_exp(n) > 0:
        raise OutOfRangeError(
            f"n={n} has beta={sp.beta_exp(n):g} <= 0; not a bound state",
            window=(0, math.ceil(sp.vertex - 0.5) - 1),
        )
    norm = math.sqrt(radial_norm_sq(sp, n, argument))
    values = radial_profile(sp, n, rho, argument) / norm
    return values if np.ndim(values) else float(values)


def count_nodes(values) -> int:
    """Sign changes along a sampled profile, ignoring exact zeros."""
    v = np.asarray(values, dtype=float)
    signs = np.sign(v[v != 0.0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
