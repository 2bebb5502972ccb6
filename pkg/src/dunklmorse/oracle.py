"""Brute-force verifiers independent of the closed forms.

* a finite-difference radial eigensolver (Pekeris or exact centrifugal term),
* an ODE residual for the rho-form radial equation,
* a textbook Morse-Pekeris energy coded through the shifted-Morse route,
* extended-precision series references for the special-function kernels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .angular import DunklParams
from .errors import ConvergenceError, DomainError, DomainTooSmallError
from .numdiff import central_derivatives
from .spectrum import (
    Molecule,
    PekerisVariant,
    SpectralParams,
    angular_coefficient,
    level_energy,
    pekeris_coefficients,
    radial_profile,
)

LEAK_TOL = 1e-8


@dataclass(frozen=True)
class Discretization:
    chi_min: float = -0.999
    chi_max: float = 5.0
    n_points: int = 8192

    def __post_init__(self):
        if not self.chi_min > -1.0:
            raise DomainError("chi_min must exceed -1")
        if not self.chi_max > self.chi_min:
            raise DomainError("chi_max must exceed chi_min")
        if self.n_points < 100:
            raise DomainError("n_points must be at least 100")

    @property
    def step(self) -> float:
        return (self.chi_max - self.chi_min) / (self.n_points - 1)

    def interior(self) -> np.ndarray:
        return np.linspace(self.chi_min, self.chi_max, self.n_points)[1:-1]


def tridiagonal_eigensolve(potential: np.ndarray, h: float, k: int, vectors: bool = False):
    """k lowest eigenpairs of -d^2/dx^2 + V with Dirichlet ends.

    ``potential`` holds V at the interior nodes. LAPACK's bisection driver
    selects the requested index range.
    """
    potential = np.asarray(potential, dtype=float)
    if k < 1 or k > potential.size:
        raise DomainError(f"cannot extract {k} eigenvalues from {potential.size} nodes")
    diag = 2.0 / (h * h) + potential
    off = np.full(potential.size - 1, -1.0 / (h * h))
    try:
        result = eigh_tridiagonal(diag, off, eigvals_only=not vectors, select="i", select_range=(0, k - 1))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc
    return result


def effective_potential(mol: Molecule, A: float, chi, variant=PekerisVariant.PAPER, centrifugal: str = "pekeris"):
    """Dimensionless effective potential of the chi-form radial equation."""
    chi = np.asarray(chi, dtype=float)
    y = np.exp(-mol.alpha * chi)
    if centrifugal == "pekeris":
        cent = pekeris_coefficients(mol.alpha, variant).centrifugal(mol.alpha, chi)
    elif centrifugal == "exact":
        cent = 1.0 / (1.0 + chi) ** 2
    else:
        raise DomainError(f"unknown centrifugal form {centrifugal!r}")
    return A * cent + mol.depth_ratio * (y * y - 2.0 * y)


def _leaks(vecs: np.ndarray) -> tuple[bool, bool]:
    scale = np.max(np.abs(vecs), axis=0)
    left = np.max(np.abs(vecs[:3]) / scale)
    right = np.max(np.abs(vecs[-3:]) / scale)
    return left > LEAK_TOL, right > LEAK_TOL


def radial_eigensolve(
    mol: Molecule,
    p: DunklParams,
    A: float,
    disc: Discretization | None = None,
    variant=PekerisVariant.PAPER,
    k: int = 1,
    centrifugal: str = "pekeris",
    max_doublings: int = 8,
) -> np.ndarray:
    """k lowest eigenvalues (cm^-1) of the discretized radial problem.

    With ``disc=None`` the box starts at chi_max = 6/alpha and doubles until
    no eigenvector touches the right wall.
    """
    adaptive = disc is None
    if adaptive:
        disc = Discretization(chi_max=6.0 / mol.alpha)
    for _ in range(max_doublings + 1):
        chi = disc.interior()
        values, vecs = tridiagonal_eigensolve(
            effective_potential(mol, A, chi, variant, centrifugal), disc.step, k, vectors=True
        )
        left, right = _leaks(vecs)
        if left:
            raise DomainTooSmallError("eigenvector reaches chi_min; domain cannot be widened below -1")
        if not right:
            return values * mol.P
        if not adaptive:
            raise DomainTooSmallError(f"eigenvector reaches chi_max={disc.chi_max}")
        disc = Discretization(disc.chi_min, disc.chi_min + 2.0 * (disc.chi_max - disc.chi_min), disc.n_points)
    raise DomainTooSmallError("boundary leak persists after box doubling")


def pekeris_error_profile(mol, p, ells, m, n=0, variant=PekerisVariant.TAYLOR_MATCHED, disc=None):
    """|E_pekeris - E_exact| (cm^-1) for level n across angular indices ``ells``."""
    out = []
    for ell in ells:
        A = angular_coefficient(p, ell, m)
        pek = radial_eigensolve(mol, p, A, disc, variant, k=n + 1)[n]
        ex = radial_eigensolve(mol, p, A, disc, variant, k=n + 1, centrifugal="exact")[n]
        out.append(abs(pek - ex))
    return out


# ---------------------------------------------------------------- ODE residual

def ode_residual(sp: SpectralParams, n: int, grid, psi=None, argument: str = "2gamma", h: float | None = None) -> float:
    """Normalized max-norm of the rho-form radial equation applied to Psi.

    ``psi`` defaults to the analytic profile of level n; the constant term
    uses the level energy through W = E/P - A C0.
    """
    grid = np.asarray(grid, dtype=float)
    if psi is None:
        psi = lambda r: radial_profile(sp, n, r, argument)  # noqa: E731
    if h is None:
        # rounding dominates below this step for the 9-point stencil
        h = min(4e-3, 0.2 * float(grid.min()))
    value, d1, d2 = central_derivatives(psi, grid, h)
    scale = np.max(np.abs(value))
    if scale == 0.0:
        return 0.0
    a2 = sp.alpha ** 2
    W = sp.W_of_E(level_energy(sp, n))
    lhs = (
        grid ** 2 * d2
        + grid * d1
        + (2.0 * sp.xi_sq / a2) * grid * value
        - (sp.eta ** 2 / a2) * grid ** 2 * value
        + (W / a2) * value
    )
    return float(np.max(np.abs(lhs)) / scale)


# ---------------------------------------------------------------- textbook energy

def textbook_morse_pekeris_energy(P, D, alpha, L, n, coeffs) -> float:
    """Rotating Morse level via the shifted-Morse (omega_e, omega_e x_e) form.

    The Pekeris-approximated potential is rewritten as V_min + D_e (y' ^2 - 2 y')
    and the level as V_min + omega (n + 1/2) - omega x (n + 1/2)^2.
    """
    rot = L * (L + 1.0)
    u = D / P + rot * coeffs.C2          # coefficient of exp(-2 alpha chi)
    v = 2.0 * D / P - rot * coeffs.C1    # minus the coefficient of exp(-alpha chi)
    depth = v * v / (4.0 * u)
    v_min = rot * coeffs.C0 - depth
    omega = 2.0 * alpha * math.sqrt(depth)
    omega_x = alpha * alpha
    return P * (v_min + omega * (n + 0.5) - omega_x * (n + 0.5) ** 2)


# ---------------------------------------------------------------- extended precision

def _mp_series(term0, ratio, max_terms=200_000):
    total = term0
    term = term0
    tiny = mpmath.mpf(10) ** (-mpmath.mp.dps - 5)
    for k in range(max_terms):
        term = term * ratio(k)
        total += term
        if term == 0 or (abs(term) < tiny * abs(total) and abs(ratio(k + 1)) < 0.5):
            return total
    raise ConvergenceError("extended-precision series did not converge")


def highprec_reference(fn: str, *args, dps: int = 40) -> float:
    """Extended-precision ground truth for ``jacobi``, ``1f1``, ``erfi``, ``lngamma``."""
    with mpmath.workdps(dps):
        if fn == "jacobi":
            n, a, b, x = args
            n = int(n)
            a, b, x = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(x)
            lo, hi = (x - 1) / 2, (x + 1) / 2
            total = mpmath.mpf(0)
            for s in range(n + 1):
                total += mpmath.binomial(n + a, n - s) * mpmath.binomial(n + b, s) * lo ** s * hi ** (n - s)
            return float(total)
        if fn == "1f1":
            a, b, z = (mpmath.mpf(v) for v in args)
            # cancellation in alternating sums costs about |z|/ln(10) digits
            with mpmath.workdps(dps + int(abs(z) / 2.3) + 10):
                if a <= 0 and a == int(a):
                    total = mpmath.mpf(1)
                    term = mpmath.mpf(1)
                    for k in range(int(-a)):
                        term *= (a + k) * z / ((b + k) * (k + 1))
                        total += term
                    return float(total)
                return float(_mp_series(mpmath.mpf(1), lambda k: (a + k) * z / ((b + k) * (k + 1))))
        if fn == "erfi":
            (x,) = args
            x = mpmath.mpf(x)
            if x == 0:
                return 0.0
            x2 = x * x
            with mpmath.workdps(dps + 10):
                # sum x^(2k+1) / (k! (2k+1)) with the k! carried in the ratio
                total = _mp_series(x, lambda k: x2 * (2 * k + 1) / ((k + 1) * (2 * k + 3)))
                return float(2 / mpmath.sqrt(mpmath.pi) * total)
        if fn == "lngamma":
            (x,) = args
            if not x > 0:
                raise DomainError("lngamma reference needs x > 0")
            return float(mpmath.loggamma(mpmath.mpf(x)))
        if fn == "dawson":
            (x,) = args
            if abs(x) > 60:
                raise DomainError("dawson reference series is impractical beyond |x| = 60")
            x = mpmath.mpf(x)
            with mpmath.workdps(dps + int(x * x / 2.3) + 10):
                total = _mp_series(x, lambda k: x * x * (2 * k + 1) / ((k + 1) * (2 * k + 3))) if x else mpmath.mpf(0)
                return float(mpmath.exp(-x * x) * total)
    raise DomainError(f"unknown reference function {fn!r}")
