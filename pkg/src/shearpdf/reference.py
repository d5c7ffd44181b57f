"""Reference closed forms in their commonly quoted normalisation.

These are not used by any computation. They exist so that the ratio between
each quoted form and the oracle-normalised value shipped in this package can
be measured and tabulated (see ``scripts/constants_table.py``).
"""
from __future__ import annotations

import math


def msv_constant_zonal(nu, omega_z, t, phi=1.0):
    return math.pi * phi / (2 * nu * t * math.sqrt(4 + omega_z**2 * t**2 / 3))


def msv_constant_hyperbolic(nu, omega, t, phi=1.0):
    return omega * phi / (2 * math.pi * nu * math.sinh(omega * t))


def msv_gaussian_zonal(nu, omega_z, t, alpha, phi=1.0):
    inv = 1 / alpha
    a = (2 * nu * t + inv) ** 2 + (nu * t) * (omega_z * t) ** 2 * (nu * t + 2 * inv) / 3
    return phi / (alpha * math.sqrt(a))


def msv_gaussian_hyperbolic(nu, omega, t, alpha, phi=1.0):
    a = nu / (2 * omega) * math.expm1(2 * omega * t) + 1 / alpha
    b = -nu / (2 * omega) * math.expm1(-2 * omega * t) + 1 / alpha
    return 2 * phi / (alpha * math.sqrt(a * b))


def msv_aniso_zonal(nu, omega_z, t, phi=1.0):
    return math.sqrt(math.pi / (2 * nu * t * (1 + omega_z**2 * t**2 / 3))) * phi


def sqrt2e_delta_zonal(nu, omega_z, t, kx0, ky):
    """Quoted ``sqrt(2 E)`` for a single mode under zonal shear."""
    return nu * (ky**2 * omega_z**2 * t**2 + ky * kx0 * omega_z * t + kx0**2 + ky**2)


def info_rate_constant_zonal(omega_z, t):
    """Quoted ``E`` for the constant spectrum (shear rate enters linearly)."""
    return (4 + 2 * omega_z * t**2 / 3) ** 2 / (2 * t**2 * (4 + omega_z * t**2 / 3) ** 2)


def tau_constant_hyperbolic(omega, t):
    return 1 / (omega * math.tanh(omega * t))


def field_exponent_denominator() -> float:
    """Quoted denominator multiplying ``C`` and ``D`` in the patch exponent."""
    return 8.0


def kl_second_order_coefficient() -> float:
    """Quoted coefficient of ``int (d_t p)^2/p (dt)^2`` in the small-step KL expansion."""
    return 1.0


def decaying_shear_q(omega_z0, tau0, ky, t):
    """Quoted phase integral for exponentially decaying zonal shear."""
    return (ky * omega_z0 * tau0) ** 2 * tau0 / 3 * (-math.expm1(-t / tau0)) ** 3 + ky**2 * t
