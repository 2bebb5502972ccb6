"""Dunkl angular sector: deformation parameters, parity classes, separation constants
and the six angular eigenfunction families.

Azimuthal functions are normalized on [0, 2pi) under |cos phi|^(2 mu1) |sin phi|^(2 mu2);
polar functions on [0, pi] under sin^(1 + 2 mu1 + 2 mu2)(theta) |cos theta|^(2 mu3).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numdiff import central_derivatives
from .specfun import jacobi, jacobi_norm_sq


@dataclass(frozen=True)
class DunklParams:
    mu1: float = 0.0
    mu2: float = 0.0
    mu3: float = 0.0

    def __post_init__(self):
        for name in ("mu1", "mu2", "mu3"):
            if not getattr(self, name) > -0.5:
                raise DomainError(f"{name} must exceed -1/2 for square integrability")

    @classmethod
    def isotropic(cls, mu_i: float) -> "DunklParams":
        return cls(mu_i, mu_i, mu_i)

    @property
    def mu(self) -> float:
        return self.mu1 + self.mu2 + self.mu3

    @property
    def delta(self) -> float:
        return -(1.0 + self.mu1 + self.mu2 + self.mu3)

    @property
    def centrifugal_shift(self) -> float:
        """mu(mu + 1), equal to delta(delta + 1)."""
        return self.mu * (self.mu + 1.0)


@dataclass(frozen=True)
class ParityLabels:
    """Reflection eigenvalues (s1, s2, s3), each +1 or -1."""

    s1: int = 1
    s2: int = 1
    s3: int = 1

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            if getattr(self, name) not in (1, -1):
                raise DomainError(f"{name} must be +1 or -1")

    def check_m(self, m: float) -> None:
        _check_m(self.s1, self.s2, m)

    def check_ell(self, ell: float) -> None:
        _check_ell(self.s3, ell)


def _is_half_odd(v: float) -> bool:
    return (2 * v) == int(2 * v) and int(2 * v) % 2 == 1


def _check_m(s1: int, s2: int, m: float) -> None:
    if m < 0:
        raise DomainError(f"azimuthal index must be non-negative, got {m}")
    if s1 * s2 == 1:
        if not float(m).is_integer():
            raise DomainError(f"sector ({s1:+d},{s2:+d}) needs integer m, got {m}")
        if s1 == -1 and m < 1:
            raise DomainError("sector (-,-) needs m >= 1")
    elif not _is_half_odd(m):
        raise DomainError(f"sector ({s1:+d},{s2:+d}) needs half-odd m, got {m}")


def _check_ell(s3: int, ell: float) -> None:
    if ell < 0:
        raise DomainError(f"polar index must be non-negative, got {ell}")
    if s3 == 1 and not float(ell).is_integer():
        raise DomainError(f"s3=+1 needs integer ell, got {ell}")
    if s3 == -1 and not _is_half_odd(ell):
        raise DomainError(f"s3=-1 needs half-odd ell, got {ell}")


def azimuthal_eigenvalue(m: float, p: DunklParams) -> float:
    """lambda^2 = 4 m (m + mu1 + mu2).

    Negative for m = 1/2 when mu1 + mu2 < -1/2; that is a legitimate sector.
    """
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    return 4.0 * m * (m + p.mu1 + p.mu2)


def polar_eigenvalue(ell: float, m: float, p: DunklParams) -> float:
    """varpi^2 = 4 (ell + m)(ell + m + mu + 1/2)."""
    if ell < 0 or m < 0:
        raise DomainError(f"indices must be non-negative, got ell={ell}, m={m}")
    k = ell + m
    return 4.0 * k * (k + p.mu + 0.5)


# (prefactor, degree shift, Jacobi a offset, Jacobi b offset, norm factor) per (s1, s2)
_AZIMUTHAL_CLASSES = {
    (1, 1): (lambda phi: 1.0, 0.0, -0.5, -0.5, 1.0),
    (-1, -1): (lambda phi: np.sin(2 * phi), -1.0, 0.5, 0.5, 4.0),
    (1, -1): (lambda phi: np.sin(phi), -0.5, -0.5, 0.5, 1.0),
    (-1, 1): (lambda phi: np.cos(phi), -0.5, 0.5, -0.5, 1.0),
}


def _azimuthal_parts(s1, s2, m, p):
    _check_m(s1, s2, m)
    prefactor, shift, da, db, factor = _AZIMUTHAL_CLASSES[(s1, s2)]
    degree = int(round(m + shift))
    a, b = p.mu1 + da, p.mu2 + db
    norm = math.sqrt(factor * 2.0 ** (-(a + b)) * jacobi_norm_sq(degree, a, b))
    return prefactor, degree, a, b, norm


def azimuthal_wavefunction(labels: ParityLabels, m: float, p: DunklParams, phi):
    """Normalized azimuthal eigenfunction of the (s1, s2) class."""
    prefactor, degree, a, b, norm = _azimuthal_parts(labels.s1, labels.s2, m, p)
    phi = np.asarray(phi, dtype=float)
    values = prefactor(phi) * jacobi(degree, a, b, -np.cos(2 * phi)) / norm
    return values if phi.ndim else float(values)


def polar_wavefunction(s3: int, ell: float, m: float, p: DunklParams, theta):
    """Normalized polar eigenfunction for reflection label ``s3``.

    The odd class carries an explicit cos(theta) so that it changes sign
    under theta -> pi - theta.
    """
    if s3 not in (1, -1):
        raise DomainError("s3 must be +1 or -1")
    _check_ell(s3, ell)
    if m < 0 or 2 * m != int(2 * m):
        raise DomainError(f"m must be a non-negative half-integer, got {m}")
    a = 2.0 * m + p.mu1 + p.mu2
    b = p.mu3 - 0.5 if s3 == 1 else p.mu3 + 0.5
    degree = int(round(ell if s3 == 1 else ell - 0.5))
    norm = math.sqrt(0.5 * 2.0 ** (-(a + b)) * jacobi_norm_sq(degree, a, b))
    theta = np.asarray(theta, dtype=float)
    values = np.sin(theta) ** int(round(2 * m)) * jacobi(degree, a, b, np.cos(2 * theta)) / norm
    if s3 == -1:
        values = values * np.cos(theta)
    return values if theta.ndim else float(values)


def azimuthal_weight(p: DunklParams, phi):
    return np.abs(np.cos(phi)) ** (2 * p.mu1) * np.abs(np.sin(phi)) ** (2 * p.mu2)


def polar_weight(p: DunklParams, theta):
    return np.sin(theta) ** (1 + 2 * (p.mu1 + p.mu2)) * np.abs(np.cos(theta)) ** (2 * p.mu3)


# ---------------------------------------------------------------- operator checks

def _offset_grid(grid_size: int, period: float) -> tuple[np.ndarray, float]:
    if grid_size < 64:
        raise DomainError("grid_size must be at least 64")
    h = period / grid_size
    return (np.arange(grid_size) + 0.5) * h, h


def _reject_singular(points, singular, h):
    for s in singular:
        if np.any(np.abs(points - s) < 1e-3 * h):
            raise DomainError(f"grid point on coordinate singularity {s}")


def apply_azimuthal_operator(f, p: DunklParams, phi, h):
    """J_phi f at ``phi``; derivatives by 8th-order stencils, reflections exact."""
    value, d1, d2 = central_derivatives(f, phi, h)
    reflect1 = value - f(np.pi - phi)
    reflect2 = value - f(-phi)
    return (
        d2
        + 2.0 * (p.mu2 / np.tan(phi) - p.mu1 * np.tan(phi)) * d1
        - p.mu1 / np.cos(phi) ** 2 * reflect1
        - p.mu2 / np.sin(phi) ** 2 * reflect2
    )


def apply_polar_operator(f, p: DunklParams, theta, h):
    """J_theta f at ``theta``; derivatives by 8th-order stencils, reflection exact."""
    value, d1, d2 = central_derivatives(f, theta, h)
    reflect3 = value - f(np.pi - theta)
    return (
        d2
        + 2.0 * ((0.5 + p.mu1 + p.mu2) / np.tan(theta) - p.mu3 * np.tan(theta)) * d1
        - p.mu3 / np.cos(theta) ** 2 * reflect3
    )


def verify_azimuthal_eigen(labels: ParityLabels, m: float, p: DunklParams, grid_size: int = 2048) -> float:
    """Max-norm of (J_phi + lambda^2) Phi over a half-offset grid on [0, 2pi)."""
    phi, h = _offset_grid(grid_size, 2.0 * np.pi)
    _reject_singular(phi, (0.0, np.pi / 2, np.pi, 3 * np.pi / 2, 2 * np.pi), h)
    f = lambda x: azimuthal_wavefunction(labels, m, p, x)  # noqa: E731
    residual = apply_azimuthal_operator(f, p, phi, h) + azimuthal_eigenvalue(m, p) * f(phi)
    return float(np.max(np.abs(residual)))


def verify_polar_eigen(s3: int, ell: float, m: float, p: DunklParams, grid_size: int = 2048) -> float:
    """Max-norm of (J_theta - lambda^2/sin^2 + varpi^2) Theta on a half-offset grid of [0, pi]."""
    theta, h = _offset_grid(grid_size, np.pi)
    _reject_singular(theta, (0.0, np.pi / 2, np.pi), h)
    f = lambda x: polar_wavefunction(s3, ell, m, p, x)  # noqa: E731
    lam2 = azimuthal_eigenvalue(m, p)
    residual = (
        apply_polar_operator(f, p, theta, h)
        - lam2 / np.sin(theta) ** 2 * f(theta)
        + polar_eigenvalue(ell, m, p) * f(theta)
    )
    return float(np.max(np.abs(residual)))


# ---------------------------------------------------------------- inner products

def _quadrant_quad(g, lo, p_lo, p_hi):
    """int over [lo, lo + pi/2] of g(x) sin(u)^p_lo cos(u)^p_hi, u = x - lo.

    The endpoint singularities go to QUADPACK's algebraic weight; g only sees
    the smooth factor (sin u / u)^p_lo (cos u / (pi/2 - u))^p_hi.
    """
    from scipy.integrate import quad

    hi = lo + np.pi / 2

    def smooth(x):
        u = x - lo
        return np.sinc(u / np.pi) ** p_lo * np.sinc((np.pi / 2 - u) / np.pi) ** p_hi * g(x)

    val, _ = quad(smooth, lo, hi, weight="alg", wvar=(p_lo, p_hi), limit=200, epsabs=1e-14, epsrel=1e-13)
    return val


def azimuthal_inner_product(labels_a: ParityLabels, m_a: float, labels_b: ParityLabels, m_b: float, p: DunklParams) -> float:
    """<Phi_a, Phi_b> on [0, 2pi) under |cos phi|^(2 mu1) |sin phi|^(2 mu2)."""
    def g(x):
        return azimuthal_wavefunction(labels_a, m_a, p, x) * azimuthal_wavefunction(labels_b, m_b, p, x)

    total = 0.0
    for q in range(4):
        # |sin phi| vanishes at even multiples of pi/2, |cos phi| at odd ones
        p_lo, p_hi = (2 * p.mu2, 2 * p.mu1) if q % 2 == 0 else (2 * p.mu1, 2 * p.mu2)
        total += _quadrant_quad(g, q * np.pi / 2, p_lo, p_hi)
    return total


def polar_inner_product(s3: int, ell_a: float, ell_b: float, m: float, p: DunklParams) -> float:
    """<Theta_a, Theta_b> on [0, pi] under sin^(1 + 2 mu1 + 2 mu2) |cos|^(2 mu3)."""
    def g(x):
        return polar_wavefunction(s3, ell_a, m, p, x) * polar_wavefunction(s3, ell_b, m, p, x)

    s_pow = 1 + 2 * (p.mu1 + p.mu2)
    c_pow = 2 * p.mu3
    return _quadrant_quad(g, 0.0, s_pow, c_pow) + _quadrant_quad(g, np.pi / 2, c_pow, s_pow)
