"""Cancellation-free entire functions used by the closed-form segment integrals."""
import cmath
import math

import numpy as np

# Below this modulus the direct formulas lose digits; the Taylor series is used instead.
_SERIES_RADIUS = 0.5
_SERIES_TERMS = 24


def phi1(z: complex) -> complex:
    """(e^z - 1) / z, equal to 1 at z = 0."""
    if abs(z) < _SERIES_RADIUS:
        total, term = 0j, 1 + 0j
        for k in range(_SERIES_TERMS):
            total += term / math.factorial(k + 1)
            term *= z
        return total
    return (cmath.exp(z) - 1) / z


def phi2(z: complex) -> complex:
    """(e^z - 1 - z) / z**2, equal to 1/2 at z = 0."""
    if abs(z) < _SERIES_RADIUS:
        total, term = 0j, 1 + 0j
        for k in range(_SERIES_TERMS):
            total += term / math.factorial(k + 2)
            term *= z
        return total
    return (cmath.exp(z) - 1 - z) / z**2


def x_minus_sin_over_x2(x: float) -> float:
    """(x - sin x) / x**2, odd in x and equal to 0 at x = 0."""
    if abs(x) < _SERIES_RADIUS:
        # x/3! - x^3/5! + x^5/7! - ...
        total, term = 0.0, x
        for k in range(_SERIES_TERMS // 2):
            total += (-1) ** k * term / math.factorial(2 * k + 3)
            term *= x * x
        return total
    return (x - math.sin(x)) / (x * x)


def phi1_array(z):
    """Vectorized :func:`phi1` for complex arrays."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < _SERIES_RADIUS
    out = np.empty_like(z)
    zs = z[small]
    acc = np.full(zs.shape, 1.0 / math.factorial(_SERIES_TERMS), dtype=complex)
    for k in range(_SERIES_TERMS - 1, 0, -1):
        acc = acc * zs + 1.0 / math.factorial(k)
    out[small] = acc
    zl = z[~small]
    out[~small] = (np.exp(zl) - 1) / zl
    return out
