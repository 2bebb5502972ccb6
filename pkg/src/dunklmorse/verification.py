"""Oracle comparisons run by ``dunklmorse verify``.

Each check yields a named residual, its tolerance and a verdict. Sample
grids are fixed so reports are reproducible.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .angular import (
    DunklParams,
    ParityLabels,
    azimuthal_inner_product,
    verify_azimuthal_eigen,
    verify_polar_eigen,
)
from .molecules import BUILTIN
from .oracle import (
    Discretization,
    highprec_reference,
    ode_residual,
    radial_eigensolve,
    textbook_morse_pekeris_energy,
)
from .spectrum import (
    angular_coefficient,
    count_nodes,
    energy,
    level_energy,
    pekeris_coefficients,
    radial_wavefunction,
    spectral_params,
)
from .thermo import Method, thermal_functions, vibrational_levels

LNGAMMA_GRID = (1e-3, 0.05, 0.1, 0.5, 0.9, 0.999, 1.0001, 1.5, 1.9999, 2.5, 3.7, 7.2, 10.0, 15.5, 50.0, 123.4, 1e3, 1e5, 1e6)
JACOBI_PARAMS = ((0.1, -0.4), (-0.5, -0.5), (0.9, 1.3), (2.5, 0.5), (-0.9, 0.3))
JACOBI_X = (-0.9, -0.3, 0.3, 0.8)
KUMMER_GRID = (
    (-3.0, 2.5, 1.7), (0.5, 1.5, 2.0), (1.2, 3.4, -5.0), (-5.0, 2.2, 10.0), (2.0, 1.5, 20.0),
    (0.3, 0.7, -15.0), (-10.0, 3.3, 40.0), (-0.5, 1.5, 3.0),
)
ERFI_GRID = (-3.0, 0.01, 0.5, 1.0, 2.0, 3.5, 5.0, 10.0, 20.0, 26.0)
DAWSON_GRID = (0.1, 1.0, 3.0, 6.9, 7.1, 10.0, 50.0)
SECTORS = ((1, 1), (-1, -1), (1, -1), (-1, 1))


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)


def _rel(a, b):
    return abs(a - b) / abs(b) if b else abs(a)


def specfun_checks() -> list[Check]:
    worst = {
        "lngamma": max(_rel(specfun.ln_gamma(x), highprec_reference("lngamma", x)) for x in LNGAMMA_GRID),
        "jacobi": max(
            _rel(specfun.jacobi(n, a, b, x), highprec_reference("jacobi", n, a, b, x))
            for n, (a, b), x in itertools.product(range(9), JACOBI_PARAMS, JACOBI_X)
        ),
        "1f1": max(_rel(specfun.kummer_1f1(*args), highprec_reference("1f1", *args)) for args in KUMMER_GRID),
        "erfi": max(_rel(specfun.erfi(x), highprec_reference("erfi", x)) for x in ERFI_GRID),
        "dawson": max(_rel(specfun.dawson(x), highprec_reference("dawson", x)) for x in DAWSON_GRID),
    }
    checks = [Check(f"specfun.{k} vs extended precision", v, 1e-10) for k, v in worst.items()]
    ident = max(
        _rel(specfun.erfi(x), 2.0 / math.sqrt(math.pi) * math.exp(x * x) * specfun.dawson(x))
        for x in ERFI_GRID
    )
    checks.append(Check("erfi = 2/sqrt(pi) exp(x^2) F(x)", ident, 1e-12))
    return checks


def _azimuthal_states(max_index=3):
    for s1, s2 in SECTORS:
        labels = ParityLabels(s1, s2, 1)
        for twice in range(0, 2 * max_index + 1):
            m = twice / 2
            try:
                labels.check_m(m)
            except ValueError:
                continue
            yield labels, m


def angular_checks(mus=(-0.4, 0.0, 0.4), max_index=3, grid_size=2048, orthogonality=True) -> list[Check]:
    az = pol = ortho = 0.0
    for mu in mus:
        p = DunklParams.isotropic(mu)
        states = list(_azimuthal_states(max_index))
        for labels, m in states:
            az = max(az, verify_azimuthal_eigen(labels, m, p, grid_size))
        ms = sorted({m for _, m in states})
        for m in ms:
            for s3, ells in ((1, range(0, max_index + 1)), (-1, [k + 0.5 for k in range(max_index)])):
                for ell in ells:
                    pol = max(pol, verify_polar_eigen(s3, ell, m, p, grid_size))
        if orthogonality:
            for (la, ma), (lb, mb) in itertools.combinations_with_replacement(states, 2):
                target = 1.0 if (la, ma) == (lb, mb) else 0.0
                ortho = max(ortho, abs(azimuthal_inner_product(la, ma, lb, mb, p) - target))
    checks = [
        Check("azimuthal eigen residual", az, 1e-6),
        Check("polar eigen residual", pol, 1e-5),
    ]
    if orthogonality:
        checks.append(Check("azimuthal orthonormality", ortho, 1e-8))
    return checks


def reduction_check() -> Check:
    worst = 0.0
    p = DunklParams()
    for name in ("H2", "HCl"):
        mol = BUILTIN[name]
        coeffs = pekeris_coefficients(mol.alpha)
        for n, ell in itertools.product(range(11), range(4)):
            m = 0
            e = energy(mol, p, n, ell, m).E_cm
            ref = textbook_morse_pekeris_energy(mol.P, mol.D, mol.alpha, 2 * (ell + m), n, coeffs)
            worst = max(worst, _rel(e, ref))
    return Check("mu = 0 reduces to textbook Morse-Pekeris", worst, 1e-10)


def eigensolver_checks(n_max=5) -> list[Check]:
    mol = BUILTIN["H2"]
    worst = 0.0
    for mu in (-0.4, 0.4):
        p = DunklParams.isotropic(mu)
        A = angular_coefficient(p, 1, 1)
        sp = spectral_params(mol, p, A)
        numeric = radial_eigensolve(mol, p, A, k=n_max + 1)
        for n in range(n_max + 1):
            worst = max(worst, _rel(numeric[n], level_energy(sp, n)))
    ratio = convergence_ratio()
    return [
        Check("finite-difference eigenvalues vs closed form", worst, 1e-4),
        Check("h-halving error ratio distance from 4", abs(ratio - 4.0), 0.5),
    ]


def convergence_ratio(points=(1025, 2049, 4097)) -> float:
    """Ratio of successive n = 0 errors for H2, mu_i = -0.4, as h halves."""
    mol = BUILTIN["H2"]
    p = DunklParams.isotropic(-0.4)
    A = angular_coefficient(p, 1, 1)
    exact = level_energy(spectral_params(mol, p, A), 0)
    errs = [abs(radial_eigensolve(mol, p, A, Discretization(n_points=k))[0] - exact) for k in points]
    return errs[-2] / errs[-1]


def wavefunction_checks(n_max=3) -> list[Check]:
    mol = BUILTIN["H2"]
    p = DunklParams.isotropic(-0.4)
    sp = spectral_params(mol, p, angular_coefficient(p, 1, 1))
    upper = math.exp(mol.alpha)
    grid = np.linspace(0.02 * upper, 0.98 * upper, 400)
    fine = np.linspace(1e-6, upper, 20001)[1:-1]
    worst = 0.0
    node_miss = 0
    for n in range(n_max + 1):
        worst = max(worst, ode_residual(sp, n, grid))
        node_miss += count_nodes(radial_wavefunction(sp, n, fine)) != n
    return [
        Check("radial ODE residual (2 gamma rho)", worst, 1e-6),
        Check("radial node-count mismatches", float(node_miss), 0.0),
    ]


def thermo_checks() -> list[Check]:
    T = np.geomspace(100.0, 5000.0, 64)
    u_err = cv_err = 0.0
    shape_bad = 0
    for name in ("H2", "HCl"):
        levels = vibrational_levels(BUILTIN[name], DunklParams.isotropic(0.4))
        pts = thermal_functions(T, Method.DIRECT_SUM, levels=levels)
        for pt in pts:
            u_err = max(u_err, _rel(pt.U, pt.U_exact))
            cv_err = max(cv_err, _rel(pt.Cv, pt.Cv_exact))
        S = np.array([pt.S for pt in pts])
        shape_bad += int(np.any(np.diff(S) < 0)) + sum(pt.Cv < 0 for pt in pts)
    return [
        Check("thermo U vs exact <E>", u_err, 1e-6),
        Check("thermo Cv vs exact variance", cv_err, 1e-6),
        Check("thermo S monotone and Cv >= 0 violations", float(shape_bad), 0.0),
    ]


def run_all() -> list[Check]:
    return (
        specfun_checks()
        + angular_checks()
        + [reduction_check()]
        + eigensolver_checks()
        + wavefunction_checks()
        + thermo_checks()
    )

