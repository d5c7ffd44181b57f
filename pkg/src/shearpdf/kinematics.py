"""Wavevector trajectories under a linear background shear.

A Fourier mode ``exp(i k(t).x)`` advected by ``U = (-y Omega_s, -x Omega_z)``
keeps its shape if ``dkx/dt = Omega_z ky`` and ``dky/dt = Omega_s kx``. The
opposite-sign streamer ``U = (y Omega_s, -x Omega_z)`` flips the second
equation and rotates ``k``. Every trajectory is linear in the initial
wavevector, ``k(t) = Phi(t) k0`` with ``det Phi = 1``, so the phase-mixing
integral ``Q = int_0^t |k|^2`` is the quadratic form ``k0 . G(t) k0`` with
``G = int_0^t Phi^T Phi``. Spectral integrals downstream lean on that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .numerics import rk4_path


class WaveVector2(NamedTuple):
    kx: float
    ky: float


class RotatedSumDiff(NamedTuple):
    """Sum/difference coordinates ``p = kx + ky``, ``q = ky - kx``."""

    p: float
    q: float

    @classmethod
    def from_wavevector(cls, k) -> "RotatedSumDiff":
        kx, ky = k
        return cls(kx + ky, ky - kx)

    def to_wavevector(self) -> WaveVector2:
        return WaveVector2((self.p - self.q) / 2, (self.p + self.q) / 2)


def _check_rate(name, value, positive=False):
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    if positive and not value > 0:
        raise ValueError(f"{name} must be > 0, got {value}")


def _sinh_minus_x(x):
    """``sinh(x) - x`` without cancellation near zero."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-2
    x2 = x * x
    series = x * x2 / 6 * (1 + x2 / 20 * (1 + x2 / 42 * (1 + x2 / 72)))
    return np.where(small, series, np.sinh(x) - x)


def _x_minus_sin(x):
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-2
    x2 = x * x
    series = x * x2 / 6 * (1 - x2 / 20 * (1 - x2 / 42 * (1 - x2 / 72)))
    return np.where(small, series, x - np.sin(x))


def _decay_moments(x):
    """``x - (1 - e^-x)`` and ``x - 2(1 - e^-x) + (1 - e^-2x)/2``, cancellation-free."""
    if x < 0.05:
        m1 = m2 = 0.0
        term = 1.0
        for n in range(1, 25):
            term *= x / n
            sign = 1.0 if n % 2 else -1.0
            if n >= 2:
                m1 -= sign * term
            if n >= 3:
                m2 += sign * (2.0 ** (n - 1) - 2.0) * term
        return m1, m2
    e1 = -math.expm1(-x)
    e2 = -math.expm1(-2 * x)
    return x - e1, x - 2 * e1 + 0.5 * e2


@dataclass(frozen=True)
class ZonalOnly:
    """Zonal flow ``U = (0, -x Omega_z)``."""

    omega_z: float

    def __post_init__(self):
        _check_rate("omega_z", self.omega_z)

    def shear_rate(self, t=0.0):
        return self.omega_z

    def mean_vorticity(self, t=0.0):
        return -self.omega_z

    def mean_vorticity_rate(self, t=0.0):
        return 0.0

    def rhs(self, k, t):
        return np.array([self.omega_z * k[1], 0.0 * k[0]])

    def transition(self, t):
        return np.array([[1.0, self.omega_z * t], [0.0, 1.0]])

    def gram(self, t):
        w = self.omega_z
        return np.array([[t, w * t * t / 2], [w * t * t / 2, t + w * w * t**3 / 3]])


@dataclass(frozen=True)
class Hyperbolic:
    """Same-sign zonal flow plus streamer: ``U = (-y Omega_s, -x Omega_z)``."""

    omega_z: float
    omega_s: float

    def __post_init__(self):
        _check_rate("omega_z", self.omega_z, positive=True)
        _check_rate("omega_s", self.omega_s, positive=True)

    @property
    def omega(self) -> float:
        return math.sqrt(self.omega_z) * math.sqrt(self.omega_s)

    @property
    def symmetric(self) -> bool:
        return self.omega_z == self.omega_s

    def shear_rate(self, t=0.0):
        return self.omega

    def mean_vorticity(self, t=0.0):
        return -self.omega_z + self.omega_s

    def mean_vorticity_rate(self, t=0.0):
        return 0.0

    def rhs(self, k, t):
        return np.array([self.omega_z * k[1], self.omega_s * k[0]])

    def transition(self, t):
        w = self.omega
        ch, sh = math.cosh(w * t), math.sinh(w * t)
        return np.array([[ch, self.omega_z / w * sh], [self.omega_s / w * sh, ch]])

    def gram(self, t):
        w = self.omega
        x = w * t
        i_s = float(_sinh_minus_x(2 * x)) / (4 * w)
        i_c = t + i_s
        i_cs = math.sinh(x) ** 2 / (2 * w)
        a, b = self.omega_z / w, self.omega_s / w
        g01 = (a + b) * i_cs
        return np.array([[i_c + b * b * i_s, g01], [g01, a * a * i_s + i_c]])


@dataclass(frozen=True)
class Elliptic:
    """Opposite-sign zonal flow plus streamer: ``U = (y Omega_s, -x Omega_z)``."""

    omega_z: float
    omega_s: float

    def __post_init__(self):
        _check_rate("omega_z", self.omega_z, positive=True)
        _check_rate("omega_s", self.omega_s, positive=True)

    @property
    def omega(self) -> float:
        return math.sqrt(self.omega_z) * math.sqrt(self.omega_s)

    def shear_rate(self, t=0.0):
        return self.omega

    def mean_vorticity(self, t=0.0):
        return -self.omega_z - self.omega_s

    def mean_vorticity_rate(self, t=0.0):
        return 0.0

    def rhs(self, k, t):
        return np.array([self.omega_z * k[1], -self.omega_s * k[0]])

    def transition(self, t):
        w = self.omega
        c, s = math.cos(w * t), math.sin(w * t)
        return np.array([[c, self.omega_z / w * s], [-self.omega_s / w * s, c]])

    def gram(self, t):
        w = self.omega
        x = w * t
        j_s = float(_x_minus_sin(2 * x)) / (4 * w)
        j_c = t - j_s
        j_cs = math.sin(x) ** 2 / (2 * w)
        a, b = self.omega_z / w, self.omega_s / w
        g01 = (a - b) * j_cs
        return np.array([[j_c + b * b * j_s, g01], [g01, a * a * j_s + j_c]])

    def radius_squared(self, k0) -> float:
        """``kbar^2``; ``|k(t)|^2`` oscillates between ``kbar^2`` and ``kbar^2 Omega_s/Omega_z``."""
        kx0, ky0 = k0
        return kx0**2 + ky0**2 * self.omega_z / self.omega_s


@dataclass(frozen=True)
class DecayingZonal:
    """Zonal flow whose shear relaxes as ``Omega_z0 exp(-t/tau0)``."""

    omega_z0: float
    tau0: float

    def __post_init__(self):
        _check_rate("omega_z0", self.omega_z0)
        _check_rate("tau0", self.tau0, positive=True)

    def shear_rate(self, t=0.0):
        return self.omega_z0 * math.exp(-t / self.tau0)

    def mean_vorticity(self, t=0.0):
        return -self.shear_rate(t)

    def mean_vorticity_rate(self, t=0.0):
        return self.shear_rate(t) / self.tau0

    def rhs(self, k, t):
        return np.array([self.shear_rate(t) * k[1], 0.0 * k[0]])

    def _displacement(self, t):
        return self.omega_z0 * self.tau0 * -math.expm1(-t / self.tau0)

    def transition(self, t):
        return np.array([[1.0, self._displacement(t)], [0.0, 1.0]])

    def gram(self, t):
        s = self.omega_z0 * self.tau0
        m1, m2 = _decay_moments(t / self.tau0)
        g01 = s * self.tau0 * m1
        return np.array([[t, g01], [g01, t + s * s * self.tau0 * m2]])


ShearFlowSpec = Union[ZonalOnly, Hyperbolic, Elliptic, DecayingZonal]


def _check_time(t):
    if t < 0:
        raise ValueError(f"trajectories start at t=0; got t={t}")


def wavevector_rhs(flow: ShearFlowSpec, k, t: float) -> WaveVector2:
    return WaveVector2(*map(float, flow.rhs(k, t)))


def wavevector_at(flow: ShearFlowSpec, k0, t: float) -> WaveVector2:
    """Exact ``k(t)`` starting from ``k0`` at ``t = 0``."""
    _check_time(t)
    kx0, ky0 = k0
    if isinstance(flow, Hyperbolic) and flow.symmetric:
        w = flow.omega
        p = (kx0 + ky0) * math.exp(w * t)
        d = (kx0 - ky0) * math.exp(-w * t)
        return WaveVector2((p + d) / 2, (p - d) / 2)
    phi = flow.transition(t)
    return WaveVector2(float(phi[0, 0] * kx0 + phi[0, 1] * ky0), float(phi[1, 0] * kx0 + phi[1, 1] * ky0))


def initial_from_current(flow: ShearFlowSpec, kt, t: float) -> WaveVector2:
    """Invert :func:`wavevector_at`: the ``k0`` that reaches ``kt`` at time ``t``."""
    _check_time(t)
    kx, ky = kt
    if isinstance(flow, Hyperbolic) and flow.symmetric:
        w = flow.omega
        p = (kx + ky) * math.exp(-w * t)
        d = (kx - ky) * math.exp(w * t)
        return WaveVector2((p + d) / 2, (p - d) / 2)
    (a, b), (c, d) = flow.transition(t)
    return WaveVector2(float(d * kx - b * ky), float(-c * kx + a * ky))


def initial_from_current_grid(flow: ShearFlowSpec, kx, ky, t: float):
    """Vectorised inverse map for arrays of current wavevectors."""
    _check_time(t)
    (a, b), (c, d) = flow.transition(t)
    return d * kx - b * ky, -c * kx + a * ky


def hyperbolic_phase_form(flow: Hyperbolic, k0) -> tuple[float, float]:
    """``(kbar, theta)`` with ``kx = kbar sinh(Omega t + theta)``,
    ``ky = kbar (Omega/Omega_z) cosh(Omega t + theta)``.

    Only exists when ``|Omega_z ky0| > Omega |kx0|``.
    """
    kx0, ky0 = k0
    w = flow.omega
    lead = flow.omega_z * ky0 / w
    if not abs(lead) > abs(kx0):
        raise ValueError("sinh/cosh parametrisation needs |Omega_z ky0| > Omega |kx0|")
    kbar = math.copysign(math.sqrt(lead * lead - kx0 * kx0), ky0)
    return kbar, math.asinh(kx0 / kbar)


def wavevector_phase_form(flow: Hyperbolic, k0, t: float) -> WaveVector2:
    kbar, theta = hyperbolic_phase_form(flow, k0)
    arg = flow.omega * t + theta
    return WaveVector2(kbar * math.sinh(arg), kbar * flow.omega / flow.omega_z * math.cosh(arg))


def q_zonal(kx0, ky, omega_z, t):
    """Phase integral for pure zonal shear, written out term by term."""
    return (ky * omega_z) ** 2 * t**3 / 3 + ky * kx0 * omega_z * t * t + (kx0 * kx0 + ky * ky) * t


def q_hyperbolic(kx0, ky0, omega, t):
    """Phase integral for equal-rate hyperbolic shear in sum/difference form."""
    x = 2 * omega * t
    return ((kx0 + ky0) ** 2 * np.expm1(x) - (kx0 - ky0) ** 2 * np.expm1(-x)) / (4 * omega)


def phase_integral(flow: ShearFlowSpec, k0, t: float):
    """``Q(t) = int_0^t |k(t1)|^2 dt1`` for the trajectory starting at ``k0``.

    ``k0`` may be a pair of arrays; the result broadcasts.
    """
    _check_time(t)
    kx0, ky0 = k0
    if isinstance(flow, ZonalOnly):
        return q_zonal(kx0, ky0, flow.omega_z, t)
    if isinstance(flow, Hyperbolic) and flow.symmetric:
        return q_hyperbolic(kx0, ky0, flow.omega, t)
    g = flow.gram(t)
    return g[0, 0] * kx0 * kx0 + 2 * g[0, 1] * kx0 * ky0 + g[1, 1] * ky0 * ky0


def phase_integral_numeric(flow: ShearFlowSpec, k0, t: float, steps: int = 4000) -> float:
    """RK4 on the augmented state ``(kx, ky, Q)``; the oracle for every closed form."""
    _check_time(t)
    if t == 0:
        return 0.0

    def rhs(s, y):
        dk = flow.rhs(y[:2], s)
        return np.array([dk[0], dk[1], y[0] ** 2 + y[1] ** 2])

    _, ys = rk4_path(rhs, [k0[0], k0[1], 0.0], 0.0, t, steps)
    return float(ys[-1, 2])


def wavevector_numeric(flow: ShearFlowSpec, k0, t: float, steps: int = 4000) -> WaveVector2:
    if t == 0:
        return WaveVector2(float(k0[0]), float(k0[1]))
    _, ys = rk4_path(lambda s, y: flow.rhs(y, s), [k0[0], k0[1]], 0.0, t, steps)
    return WaveVector2(*map(float, ys[-1]))


def q2_in_current_coords(kt, t: float, omega: float):
    """Equal-rate hyperbolic phase integral expressed through the current ``k(t)``."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    _check_time(t)
    kx, ky = kt
    x = 2 * omega * t
    return ((kx + ky) ** 2 * -np.expm1(-x) + (kx - ky) ** 2 * np.expm1(x)) / (4 * omega)


def initial_norm_in_current_coords(kt, t: float, omega: float):
    """``|k0|^2`` for equal-rate hyperbolic shear, written through ``k(t)``."""
    kx, ky = kt
    return 0.5 * ((kx - ky) ** 2 * np.exp(2 * omega * t) + (kx + ky) ** 2 * np.exp(-2 * omega * t))


def kinetic_metric(flow: ShearFlowSpec, t: float) -> np.ndarray:
    """``Phi(t)^T Phi(t)``: ``|k(t)|^2 = k0 . H k0``."""
    phi = flow.transition(t)
    return phi.T @ phi
