"""Vibrational thermodynamics of the Dunkl-Morse spectrum.

Two routes to the partition function: the lower-order Poisson closed form
(erfi based) and the direct Boltzmann sum over the closed-form levels.
Energies are in cm^-1 and temperatures in kelvin, so k_B is in cm^-1/K.

Every route works with a shifted log partition function
g(beta) = ln Z(beta) + beta * E_ref, where E_ref is the deepest level; Z
itself overflows long before g does.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .angular import DunklParams
from .errors import DomainError, RangeError, UnphysicalConfigurationError
from .numdiff import richardson_derivative
from .spectrum import Molecule, PekerisVariant, energy, pekeris_coefficients
from .specfun import dawson

K_B = 0.695034800  # cm^-1 / K


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    DIRECT_SUM = "direct_sum"


@dataclass(frozen=True)
class ThermoParams:
    P: float
    Q: float
    H: float
    lambda_max: float
    xi1_sq: float
    eta1: float
    alpha: float

    @property
    def E_ref(self) -> float:
        """Ground level P (Q - alpha^2 H^2), the n = 0 term of the sum."""
        return self.P * (self.Q - (self.alpha * self.H) ** 2)

    @property
    def n_max(self) -> int:
        return max(0, math.floor(self.lambda_max))


def thermo_params(mol: Molecule, p: DunklParams, variant=PekerisVariant.PAPER) -> ThermoParams:
    """Vibrational-only constants: the angular coefficient reduces to mu(mu + 1)."""
    c = pekeris_coefficients(mol.alpha, variant)
    shift = p.centrifugal_shift
    eta1_sq = mol.depth_ratio + c.C2 * shift
    if not eta1_sq > 0:
        raise UnphysicalConfigurationError(f"eta1^2 = {eta1_sq:g} <= 0")
    xi1_sq = mol.depth_ratio - 0.5 * c.C1 * shift
    eta1 = math.sqrt(eta1_sq)
    H = 0.5 - xi1_sq / (eta1 * mol.alpha)
    lam = -H
    assert H + lam + 1.0 == 1.0
    return ThermoParams(mol.P, shift * c.C0, H, lam, xi1_sq, eta1, mol.alpha)


def vibrational_levels(mol: Molecule, p: DunklParams, variant=PekerisVariant.PAPER) -> list[float]:
    """E_n (cm^-1) for n = 0 .. floor(lambda_max), from the spectrum module."""
    tp = thermo_params(mol, p, variant)
    return [energy(mol, p, n, 0, 0, variant).E_cm for n in range(tp.n_max + 1)]


# ---------------------------------------------------------------- closed form

def _closed_bracket(beta: float, tp: ThermoParams) -> float:
    # Z * exp(beta E_ref), with every exponential argument <= 0
    s = tp.alpha * math.sqrt(beta * tp.P)
    upper = tp.H + tp.lambda_max + 1.0
    x0 = s * tp.H
    x1 = s * upper
    gap = tp.P * tp.alpha ** 2 * (tp.H ** 2 - upper ** 2)  # E_top - E_ref
    boundary = 0.5 - 0.5 * math.exp(-beta * gap)
    integral = (math.exp(-beta * gap) * dawson(x1) - dawson(x0)) / s
    return boundary + integral


def log_partition_closed_shifted(beta: float, tp: ThermoParams) -> float:
    if not beta > 0:
        raise DomainError("closed-form partition function needs beta > 0")
    bracket = _closed_bracket(beta, tp)
    if not bracket > 0:
        raise DomainError(f"closed-form partition function is non-positive ({bracket:g})")
    return math.log(bracket)


def log_partition_closed(beta: float, tp: ThermoParams) -> float:
    return log_partition_closed_shifted(beta, tp) - beta * tp.E_ref


def partition_closed(beta: float, tp: ThermoParams) -> float:
    """Poisson lower-order closed form of Z(beta)."""
    log_z = log_partition_closed(beta, tp)
    if log_z > 709.0:
        raise RangeError(f"Z = exp({log_z:.1f}) overflows; use log_partition_closed")
    return math.exp(log_z)


# ---------------------------------------------------------------- direct sum

def log_partition_direct_shifted(beta: float, levels, e_ref: float | None = None) -> float:
    """ln(sum exp(-beta (E_n - e_ref))), accurate when the excited terms are tiny."""
    levels = np.asarray(levels, dtype=float)
    if levels.size == 0:
        raise DomainError("level list is empty")
    lowest = float(levels.min())
    if e_ref is None:
        e_ref = lowest
    weights = np.exp(-beta * (levels - e_ref))
    if e_ref != lowest:
        return math.log(math.fsum(weights.tolist()))
    # sum the excited terms apart from the unit ground weight; they can sit below epsilon
    excited = levels != lowest
    rest = math.fsum(weights[excited].tolist()) + (levels.size - np.count_nonzero(excited) - 1)
    return math.log1p(rest)


def log_partition_direct(beta: float, levels) -> float:
    e_ref = float(np.min(levels))
    return log_partition_direct_shifted(beta, levels, e_ref) - beta * e_ref


def partition_direct(beta: float, levels) -> float:
    """Boltzmann sum of exp(-beta E_n), compensated."""
    log_z = log_partition_direct(beta, levels)
    if log_z > 709.0:
        raise RangeError(f"Z = exp({log_z:.1f}) overflows; use log_partition_direct")
    return math.exp(log_z)


def boltzmann_moments(beta: float, levels) -> tuple[float, float]:
    """Exact <E> and variance <(E - <E>)^2> under the Boltzmann weights."""
    levels = np.asarray(levels, dtype=float)
    e_ref = levels.min()
    w = np.exp(-beta * (levels - e_ref))
    w /= math.fsum(w.tolist())
    mean = e_ref + math.fsum((w * (levels - e_ref)).tolist())
    var = math.fsum((w * (levels - mean) ** 2).tolist())
    return mean, var


# ---------------------------------------------------------------- thermal functions

@dataclass(frozen=True)
class ThermoPoint:
    T: float
    inverse_temperature: float
    ln_Z: float
    F: float
    U: float
    S: float
    Cv: float
    method: Method
    U_exact: float | None = None
    Cv_exact: float | None = None

    @property
    def Z(self) -> float:
        return math.exp(self.ln_Z) if self.ln_Z < 709.0 else math.inf


def _check_grid(T_grid) -> np.ndarray:
    T = np.asarray(T_grid, dtype=float)
    if T.ndim != 1 or T.size == 0:
        raise DomainError("temperature grid must be a non-empty 1-D sequence")
    if np.any(T <= 0):
        raise DomainError("temperatures must be positive")
    if np.any(np.diff(T) <= 0):
        raise DomainError("temperature grid must be strictly increasing")
    return T


def thermal_functions(T_grid, method=Method.DIRECT_SUM, tp: ThermoParams | None = None, levels=None, rtol=1e-7):
    """F, U, S, Cv on a temperature grid.

    ``closed_form`` needs ``tp``; ``direct_sum`` needs ``levels`` and also
    reports the exact <E> and energy variance for cross-checking.
    """
    method = Method(method)
    T = _check_grid(T_grid)
    if method is Method.CLOSED_FORM:
        if tp is None:
            raise DomainError("closed_form needs ThermoParams")
        e_ref = tp.E_ref
        g = lambda b: log_partition_closed_shifted(b, tp)  # noqa: E731
    else:
        if levels is None or len(levels) == 0:
            raise DomainError("direct_sum needs a non-empty level list")
        e_ref = float(np.min(levels))
        g = lambda b: log_partition_direct_shifted(b, levels, e_ref)  # noqa: E731

    points = []
    for temp in T:
        beta = 1.0 / (K_B * temp)
        g0 = g(beta)
        dg = richardson_derivative(g, beta, 1, beta * 1e-4, rtol=rtol)
        # a second difference at beta*1e-4 already loses ~8 digits to rounding
        d2g = richardson_derivative(g, beta, 2, beta * 1e-2, rtol=rtol)
        u = e_ref - dg
        extra = {}
        if method is Method.DIRECT_SUM:
            mean, var = boltzmann_moments(beta, levels)
            extra = {"U_exact": mean, "Cv_exact": K_B * beta * beta * var}
        points.append(
            ThermoPoint(
                T=float(temp),
                inverse_temperature=beta,
                ln_Z=g0 - beta * e_ref,
                F=e_ref - g0 / beta,
                U=u,
                S=K_B * (g0 - beta * dg),
                Cv=K_B * beta * beta * d2g,
                method=method,
                **extra,
            )
        )
    return points
