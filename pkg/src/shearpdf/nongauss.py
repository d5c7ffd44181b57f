"""Inhomogeneous vortex decay under symmetric strain and the non-Gaussian
PDFs that follow from a random vortex size.

An initial patch ``exp(-alpha r^2 / 4)`` is stretched along ``z2 = y - x`` and
compressed along ``z1 = x + y`` while viscosity smooths it. Treating ``alpha``
as a uniform random variable turns the deterministic field at a fixed point
into a random variable whose PDF follows from a change of variables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import kinematics as kin
from .numerics import quad2d


@dataclass(frozen=True)
class InhomogeneousField:
    alpha: float = 2.0
    omega: float = 2.0
    nu: float = 0.1

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.omega < 0:
            raise ValueError(f"strain rate must be >= 0, got {self.omega}")
        if self.nu < 0:
            raise ValueError(f"viscosity must be >= 0, got {self.nu}")

    def flow(self):
        return kin.Hyperbolic(self.omega, self.omega) if self.omega > 0 else kin.ZonalOnly(0.0)

    def widths(self, t: float) -> tuple[float, float]:
        """``(C, D)``: Gaussian variances of the decayed spectrum along the
        stretched and compressed wavevector directions."""
        w, inv = self.omega, 0.5 / self.alpha
        x = 2 * w * t
        if w == 0:
            g = self.nu * t / 2
            return g + inv, g + inv
        return (self.nu * math.expm1(x) / (4 * w) + inv,
                -self.nu * math.expm1(-x) / (4 * w) + inv)


class RotatedCoords(NamedTuple):
    z1: float
    z2: float

    @classmethod
    def from_xy(cls, x, y) -> "RotatedCoords":
        return cls(x + y, y - x)

    def to_xy(self) -> tuple:
        return (self.z1 - self.z2) / 2, (self.z1 + self.z2) / 2


@dataclass(frozen=True)
class AlphaEnsemble:
    """Uniform distribution of ``alpha`` on ``[lo, hi]``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo >= 0 and self.hi > self.lo and math.isfinite(self.hi)):
            raise ValueError(f"need 0 <= lo < hi < inf, got [{self.lo}, {self.hi}]")

    def density(self, alpha):
        a = np.asarray(alpha, dtype=float)
        return np.where((a >= self.lo) & (a <= self.hi), 1.0 / (self.hi - self.lo), 0.0)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self.lo, self.hi, n)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    density: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])


def vorticity_field(field: InhomogeneousField, t: float, x, y):
    if t < 0:
        raise ValueError("t must be >= 0")
    c, d = field.widths(t)
    z1, z2 = x + y, y - x
    e = math.exp(2 * field.omega * t)
    return np.exp(-e * z1 * z1 / (16 * c) - z2 * z2 / (16 * d * e)) / (2 * field.alpha * math.sqrt(c * d))


def vorticity_field_oracle(field: InhomogeneousField, t: float, x: float, y: float,
                           half_width: float = 7.0, cells: int = 256) -> float:
    """Inverse Fourier transform of the decayed initial spectrum by Simpson.

    The transform pair is ``w(x) = int d^2k e^{i k.x} w~(k)`` with
    ``w~(k, 0) = exp(-|k|^2/alpha) / (pi alpha)``. Integration runs over
    initial wavevectors (unit Jacobian) in coordinates scaled so the envelope
    is ``exp(-|u|^2)``; the scaling is read off from the log-envelope, so no
    closed form enters.
    """
    flow = field.flow()

    def log_env(kx0, ky0):
        return -(kx0 * kx0 + ky0 * ky0) / field.alpha - field.nu * kin.phase_integral(flow, (kx0, ky0), t)

    l0 = log_env(0.0, 0.0)
    s = np.array([[l0 - log_env(1.0, 0.0), 0.0], [0.0, l0 - log_env(0.0, 1.0)]])
    s[0, 1] = s[1, 0] = 0.5 * (l0 - log_env(1.0, 1.0) - s[0, 0] - s[1, 1])
    lam, vec = np.linalg.eigh(s)
    w = vec / np.sqrt(lam)
    phi = flow.transition(t)
    # phase k(t).x = k0 . (Phi^T x)
    gx = phi[0, 0] * x + phi[1, 0] * y
    gy = phi[0, 1] * x + phi[1, 1] * y

    def integrand(u, v):
        kx0 = w[0, 0] * u + w[0, 1] * v
        ky0 = w[1, 0] * u + w[1, 1] * v
        return np.exp(log_env(kx0, ky0)) * np.cos(kx0 * gx + ky0 * gy)

    return abs(np.linalg.det(w)) * quad2d(integrand, half_width, cells) / (math.pi * field.alpha)


# --- change of variables ---------------------------------------------------

def pushforward_density(ensemble: AlphaEnsemble, alpha_of_omega: Callable, dalpha_domega: Callable, omega):
    """``|d alpha / d omega| p(alpha(omega))``; zero off the ensemble support."""
    w = np.asarray(omega, dtype=float)
    a = alpha_of_omega(w)
    return np.abs(dalpha_domega(w)) * ensemble.density(a)


def pdf_initial(omega, r2: float, ensemble: AlphaEnsemble):
    """PDF of the initial field ``exp(-alpha r^2/4)`` at radius ``sqrt(r2)``."""
    if not r2 > 0:
        raise ValueError("r2 must be positive")
    w = np.asarray(omega, dtype=float)
    inside = (w > 0) & (w < 1)
    ws = np.where(inside, w, 0.5)
    out = np.where(inside, pushforward_density(ensemble, lambda v: -4 * np.log(v) / r2,
                                               lambda v: -4 / (v * r2), ws), 0.0)
    return float(out) if out.ndim == 0 else out


def weak_geometry(x, y, t, omega):
    """``z1^2 e^{2 W t} + z2^2 e^{-2 W t}``, the exponent of the weakly
    diffused field per unit ``alpha/8``."""
    z1, z2 = x + y, y - x
    return z1 * z1 * math.exp(2 * omega * t) + z2 * z2 * math.exp(-2 * omega * t)


def weak_alpha_max(t, omega, nu):
    return (2 * omega / nu) * math.exp(-2 * omega * t)


def weak_map(x, y, t, omega):
    """``alpha -> omega(alpha)`` when viscosity is negligible against ``1/alpha``."""
    g = weak_geometry(x, y, t, omega)
    return lambda a: np.exp(-a * g / 8)


def pdf_weak_inhomogeneity(w, x, y, t, omega, nu, alpha_max=None):
    """PDF for ``alpha`` uniform on ``[0, alpha_max]``; falls as ``1/w``.

    ``alpha_max`` defaults to ``(2 W/nu) e^{-2 W t}``, the edge of the regime.
    """
    g = weak_geometry(x, y, t, omega)
    amax = weak_alpha_max(t, omega, nu) if alpha_max is None else alpha_max
    w = np.asarray(w, dtype=float)
    inside = (w > math.exp(-amax * g / 8)) & (w <= 1)
    ws = np.where(inside, w, 1.0)
    out = np.where(inside, 8 / (ws * g * amax), 0.0)
    return float(out) if out.ndim == 0 else out


def strong_level(x, y, t, omega, nu):
    """Upper support edge ``exp(-W t - G2)`` of the strongly diffused regime."""
    z1, z2 = x + y, y - x
    g2 = (omega / (4 * nu)) * (z1 * z1 + math.exp(-2 * omega * t) * z2 * z2)
    return math.exp(-omega * t - g2)


def strong_map(x, y, t, omega, nu):
    """``alpha -> omega`` once viscosity dominates the spectral width."""
    e = strong_level(x, y, t, omega, nu)
    return lambda a: 2 * omega * e / (nu * np.asarray(a, dtype=float))


def pdf_strong_inhomogeneity(w, x, y, t, omega, nu, alpha_c):
    """PDF for ``alpha`` uniform on ``[2W/nu, alpha_c]``; falls as ``w^-2``."""
    a0 = 2 * omega / nu
    if not alpha_c > a0:
        raise ValueError(f"alpha_c must exceed 2*omega/nu = {a0}")
    e = strong_level(x, y, t, omega, nu)
    w = np.asarray(w, dtype=float)
    inside = (w >= a0 * e / alpha_c) & (w <= e)
    ws = np.where(inside, w, 1.0)
    out = np.where(inside, a0 * e / (ws * ws * (alpha_c - a0)), 0.0)
    return float(out) if out.ndim == 0 else out


class NonMonotoneMapError(ValueError):
    pass


def check_monotone(ensemble: AlphaEnsemble, alpha_map: Callable, probes: int = 4097) -> int:
    """Return +1 or -1 for increasing or decreasing maps; raise otherwise."""
    a = np.linspace(ensemble.lo, ensemble.hi, probes)
    d = np.diff(np.asarray(alpha_map(a), dtype=float))
    if np.all(d > 0):
        return 1
    if np.all(d < 0):
        return -1
    i = int(np.argmax(d <= 0)) if np.any(d <= 0) else 0
    raise NonMonotoneMapError(f"map is not strictly monotone near alpha={a[i]!r}")


def pdf_mc_oracle(ensemble: AlphaEnsemble, alpha_map: Callable, samples: int = 1_000_000,
                  seed: int = 0, bins=50) -> Histogram:
    """Histogram of ``alpha_map(alpha)`` over seeded uniform draws of ``alpha``.

    ``bins`` is a count (uniform bins over the image of the support) or an
    explicit edge array.
    """
    check_monotone(ensemble, alpha_map)
    rng = np.random.default_rng(seed)
    w = np.asarray(alpha_map(ensemble.sample(rng, int(samples))), dtype=float)
    if np.ndim(bins) == 0:
        ends = sorted(float(alpha_map(np.array(v))) for v in (ensemble.lo, ensemble.hi))
        edges = np.linspace(ends[0], ends[1], int(bins) + 1)
    else:
        edges = np.asarray(bins, dtype=float)
    counts, _ = np.histogram(w, bins=edges)
    return Histogram(edges, counts / (samples * np.diff(edges)))


def expected_histogram(ensemble: AlphaEnsemble, omega_to_alpha: Callable, edges) -> np.ndarray:
    """Exact bin-averaged density implied by a monotone map's inverse."""
    edges = np.asarray(edges, dtype=float)
    a = np.clip(omega_to_alpha(edges), ensemble.lo, ensemble.hi)
    return np.abs(np.diff(a)) / (ensemble.hi - ensemble.lo) / np.diff(edges)
