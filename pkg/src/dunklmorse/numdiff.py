"""Finite-difference helpers: 8th-order central stencils and Richardson derivatives."""
from __future__ import annotations

import numpy as np

from .errors import NumericalDifferentiationError

_OFFSETS = np.arange(-4, 5)
_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])


def central_derivatives(f, x, h):
    """Return (f, f', f'') at points ``x`` using 9-point stencils of spacing ``h``.

    ``f`` must be a vectorized callable that is smooth across x +- 4h.
    """
    x = np.asarray(x, dtype=float)
    samples = np.stack([f(x + k * h) for k in _OFFSETS])
    d1 = np.tensordot(_D1, samples, axes=1) / h
    d2 = np.tensordot(_D2, samples, axes=1) / (h * h)
    return samples[4], d1, d2


def richardson_derivative(g, x, order, h0, rtol=1e-7, max_halvings=12, atol=0.0):
    """First or second derivative of scalar ``g`` at ``x``.

    Central differences with step h, h/2, ... are combined by one Richardson
    step; halving stops once two successive extrapolants agree to ``rtol``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")

    def central(h):
        if order == 1:
            return (g(x + h) - g(x - h)) / (2 * h)
        return (g(x + h) - 2 * g(x) + g(x - h)) / (h * h)

    h = h0
    coarse = central(h)
    previous = None
    for _ in range(max_halvings):
        h *= 0.5
        fine = central(h)
        estimate = (4 * fine - coarse) / 3
        if previous is not None:
            scale = max(abs(estimate), abs(previous))
            if abs(estimate - previous) <= max(rtol * scale, atol):
                return estimate
        previous = estimate
        coarse = fine
    raise NumericalDifferentiationError(
        f"derivative of order {order} at x={x} did not settle to rtol={rtol}"
    )
