"""Real special-function kernels: log-gamma, Jacobi polynomials, Kummer 1F1, erfi, Dawson."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, RangeError

_EPS = 2.0 ** -52
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
# largest x with exp(x**2) finite in double precision
ERFI_MAX_ARG = math.sqrt(math.log(np.finfo(float).max))


@dataclass(frozen=True)
class Accuracy:
    """Termination and verification tolerances for the series kernels."""

    abs_tol: float = 1e-14
    rel_tol: float = 1e-12
    max_terms: int = 10_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")

    def tail_ok(self, tail: float, total: float) -> bool:
        # four digits of headroom below the advertised tolerance
        return tail <= 1e-4 * max(self.rel_tol * abs(total), self.abs_tol)


DEFAULT_ACCURACY = Accuracy()


# ---------------------------------------------------------------- log-gamma

_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# zeta(k) - 1 for k = 2..40; coefficients of the Taylor series of ln Gamma about 2
_ZETA_MINUS_ONE = (
    0.6449340668482264, 0.2020569031595943, 0.08232323371113819, 0.03692775514336993,
    0.01734306198444914, 0.008349277381922827, 0.00407735619794434, 0.0020083928260822143,
    0.0009945751278180853, 0.0004941886041194645, 0.0002460865533080483, 0.00012271334757848915,
    6.124813505870483e-05, 3.058823630702049e-05, 1.528225940865187e-05, 7.637197637899763e-06,
    3.81729326499984e-06, 1.908212716553939e-06, 9.539620338727962e-07, 4.769329867878064e-07,
    2.38450502727733e-07, 1.1921992596531106e-07, 5.960818905125948e-08, 2.980350351465228e-08,
    1.4901554828365043e-08, 7.45071178983543e-09, 3.725334024788457e-09, 1.862659723513049e-09,
    9.313274324196682e-10, 4.656629065033784e-10, 2.3283118336765053e-10, 1.164155017270052e-10,
    5.820772087902701e-11, 2.9103850444971e-11, 1.4551921891041985e-11, 7.275959835057482e-12,
    3.637979547378651e-12, 1.818989650307066e-12, 9.094947840263888e-13,
)
_EULER_GAMMA = 0.5772156649015329

# Stirling series coefficients B_{2k} / (2k (2k-1))
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)


def _lngamma_near_two(eps: float) -> float:
    # ln Gamma(2 + eps) = (1 - gamma) eps + sum_k (zeta(k) - 1) (-eps)^k / k, |eps| <= 0.5
    acc = (1.0 - _EULER_GAMMA) * eps
    power = -eps
    for k, c in enumerate(_ZETA_MINUS_ONE, start=2):
        power *= -eps
        acc += c * power / k
    return acc


def _lngamma_lanczos(x: float) -> float:
    z = x - 1.0
    series = _LANCZOS_P[0]
    for i in range(1, len(_LANCZOS_P)):
        series += _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(series)


def _lngamma_stirling(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    power = inv
    for c in _STIRLING:
        corr += c * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_TWO_PI + corr


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for real x > 0."""
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise DomainError(f"ln_gamma requires finite x > 0, got {x!r}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        return ln_gamma(x + 1.0) - math.log(x)
    if 0.8 <= x < 1.5:
        return _lngamma_near_two(x - 1.0) - math.log(x)
    if 1.5 <= x < 2.5:
        return _lngamma_near_two(x - 2.0)
    if x < 10.0:
        return _lngamma_lanczos(x)
    return _lngamma_stirling(x)


# ---------------------------------------------------------------- Jacobi

def jacobi(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^(a,b)(x) by the three-term recurrence.

    Accepts scalar or array ``x``; returns the same shape.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    if not (a > -1 and b > -1):
        raise DomainError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    ab = a + b
    a2b2 = a * a - b * b
    for k in range(2, n + 1):
        c = 2.0 * k + ab
        denom = 2.0 * k * (k + ab) * (c - 2.0)
        p, p_prev = (
            (c - 1.0) * (c * (c - 2.0) * x + a2b2) * p
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * p_prev
        ) / denom, p
    return p if p.ndim else float(p)


def jacobi_norm_sq(n: int, a: float, b: float) -> float:
    """Squared L2 norm of P_n^(a,b) on [-1, 1] under (1-x)^a (1+x)^b."""
    if n == 0:
        log_h = (a + b + 1.0) * math.log(2.0) + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)
    else:
        log_h = (
            (a + b + 1.0) * math.log(2.0)
            - math.log(2.0 * n + a + b + 1.0)
            + ln_gamma(n + a + 1.0)
            + ln_gamma(n + b + 1.0)
            - ln_gamma(n + a + b + 1.0)
            - ln_gamma(n + 1.0)
        )
    return math.exp(log_h)


# ---------------------------------------------------------------- Kummer 1F1

def _nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def kummer_1f1(a: float, b: float, z: float, accuracy: Accuracy = DEFAULT_ACCURACY) -> float:
    """Confluent hypergeometric function 1F1(a; b; z) for real arguments.

    Polynomial cases (a a non-positive integer) are summed exactly; negative
    z otherwise goes through Kummer's transformation so the series has
    terms of one sign.
    """
    a, b, z = float(a), float(b), float(z)
    polynomial = _nonpositive_integer(a)
    if _nonpositive_integer(b) and not (polynomial and -a <= -b):
        raise DomainError(f"1F1 undefined for b={b} with a={a}")
    if z == 0.0 or a == 0.0:
        return 1.0
    if polynomial:
        terms = [1.0]
        t = 1.0
        for k in range(int(-a)):
            t *= (a + k) * z / ((b + k) * (k + 1))
            terms.append(t)
        return math.fsum(terms)
    if z < 0:
        return math.exp(z) * kummer_1f1(b - a, b, -z, accuracy)
    return _kummer_series(a, b, z, accuracy)


def _kummer_series(a, b, z, accuracy):
    terms = [1.0]
    t = 1.0
    total = 1.0
    for k in range(accuracy.max_terms):
        ratio = (a + k) * z / ((b + k) * (k + 1))
        t *= ratio
        terms.append(t)
        total += t
        nxt = abs((a + k + 1) * z / ((b + k + 1) * (k + 2)))
        if nxt < 1.0 and accuracy.tail_ok(abs(t) * nxt / (1.0 - nxt), total):
            return math.fsum(terms)
    raise ConvergenceError(f"1F1({a}; {b}; {z}) did not converge in {accuracy.max_terms} terms")


# ---------------------------------------------------------------- erfi / Dawson

# below this |x| the Maclaurin series of erfi is used; above, the asymptotic Dawson series
_SERIES_CUTOFF = 7.0


def _erfi_series_sum(x: float, accuracy: Accuracy) -> float:
    # sum_k x^(2k+1) / (k! (2k+1)); all terms share the sign of x
    x2 = x * x
    power = x
    total = x
    for k in range(1, accuracy.max_terms):
        power *= x2 / k
        term = power / (2 * k + 1)
        total += term
        if k > x2 and accuracy.tail_ok(abs(term) * x2 / (k + 1 - x2), total):
            return total
    raise ConvergenceError(f"erfi series did not converge at x={x}")


def _dawson_asymptotic(x: float) -> float:
    # F(x) ~ 1/(2x) sum (2k-1)!! / (2x^2)^k, truncated at the smallest term
    inv = 1.0 / (2.0 * x * x)
    total = 1.0
    term = 1.0
    k = 1
    while True:
        nxt = term * (2 * k - 1) * inv
        if abs(nxt) >= abs(term) or abs(nxt) < _EPS * abs(total) * 0.25:
            break
        total += nxt
        term = nxt
        k += 1
    return total / (2.0 * x)


def dawson(x: float, accuracy: Accuracy = DEFAULT_ACCURACY) -> float:
    """Dawson's integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt."""
    x = float(x)
    if not math.isfinite(x):
        if math.isnan(x):
            return x
        return 0.0
    if x == 0.0:
        return 0.0
    if abs(x) < _SERIES_CUTOFF:
        return math.exp(-x * x) * _erfi_series_sum(x, accuracy)
    return _dawson_asymptotic(x)


def erfi_scaled(x: float, accuracy: Accuracy = DEFAULT_ACCURACY) -> float:
    """exp(-x^2) * erfi(x); finite for every real x."""
    return _TWO_OVER_SQRT_PI * dawson(x, accuracy)


def erfi(x: float, accuracy: Accuracy = DEFAULT_ACCURACY) -> float:
    """Imaginary error function erfi(x) = (2/sqrt(pi)) int_0^x exp(t^2) dt.

    Raises RangeError once exp(x^2) overflows; use ``erfi_scaled`` there.
    """
    x = float(x)
    if math.isnan(x):
        return x
    if abs(x) < _SERIES_CUTOFF:
        return _TWO_OVER_SQRT_PI * _erfi_series_sum(x, accuracy) if x else 0.0
    if abs(x) >= ERFI_MAX_ARG:
        raise RangeError(f"erfi({x}) overflows; use erfi_scaled")
    value = _TWO_OVER_SQRT_PI * math.exp(x * x) * _dawson_asymptotic(x)
    if math.isinf(value):
        raise RangeError(f"erfi({x}) overflows; use erfi_scaled")
    return value
