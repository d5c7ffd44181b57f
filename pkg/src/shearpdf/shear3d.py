"""Single Fourier modes of a 3D velocity field in the uniform shear
``U = (0, -W x, 0)``.

The wavevector drifts as ``kx(t) = kx0 + W ky t`` while ``ky, kz`` stay
fixed. Eliminating pressure with incompressibility gives a linear system
that is cleanest in the variable ``tau = kx(t)/ky``::

    d vx / d tau = -2 tau vx / (tau^2 + g)
    d vz / d tau = -2 b vx / (tau^2 + g)
    vy = -tau vx - b vz

with ``b = kz/ky`` and ``g = 1 + b^2``. Viscosity only multiplies every
component by ``exp(-nu Q(t, 0))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .numerics import FitResult, fit_loglog_slope, rk4_integrate

DIV_TOL = 1e-8


class WaveVector3(NamedTuple):
    kx: float
    ky: float
    kz: float

    def at(self, omega: float, t: float) -> "WaveVector3":
        return WaveVector3(self.kx + omega * self.ky * t, self.ky, self.kz)

    @property
    def norm_sq(self) -> float:
        return self.kx * self.kx + self.ky * self.ky + self.kz * self.kz


@dataclass(frozen=True)
class VelocityModes:
    vx: complex
    vy: complex
    vz: complex
    pressure: complex = 0j

    def as_array(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.vz], dtype=complex)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.as_array()) ** 2))


class CompressibleModeError(ValueError):
    pass


def divergence_residual(k: WaveVector3, v: VelocityModes, scale: float | None = None) -> float:
    """``|k.v| / (|k| scale)``, with ``scale`` defaulting to ``|v|``."""
    kv = k.kx * v.vx + k.ky * v.vy + k.kz * v.vz
    s = math.sqrt(v.energy()) if scale is None else scale
    kn = math.sqrt(k.norm_sq)
    if s == 0 or kn == 0:
        return 0.0
    return abs(kv) / (kn * s)


def q3_integral(k0: WaveVector3, omega: float, t: float, t1: float = 0.0) -> float:
    """``int_{t1}^{t} |k(s)|^2 ds`` for the drifting wavevector."""
    if t1 > t:
        raise ValueError("need t1 <= t")
    a = omega * k0.ky
    dt = t - t1
    kh2 = k0.ky**2 + k0.kz**2
    return (k0.kx**2 * dt + k0.kx * a * (t * t - t1 * t1) + a * a * (t**3 - t1**3) / 3 + kh2 * dt)


def pressure_of(k: WaveVector3, vx: complex, omega: float) -> complex:
    k2 = k.norm_sq
    return -2j * omega * k.ky * vx / k2 if k2 else 0j


def _tau_rhs(b, g):
    def rhs(tau, y):
        d = -2.0 * y[0] / (tau * tau + g)
        return np.array([tau * d, b * d])
    return rhs


def _inviscid(k0: WaveVector3, v0: VelocityModes, omega: float, t: float, steps: int) -> VelocityModes:
    if omega == 0 or t == 0:
        return v0
    if k0.ky == 0:
        # no drift of kx; the shear only tilts vx into vy
        return VelocityModes(v0.vx, v0.vy + omega * t * v0.vx, v0.vz)
    b = k0.kz / k0.ky
    g = 1.0 + b * b
    tau0 = k0.kx / k0.ky
    tau1 = tau0 + omega * t
    vx, vz = rk4_integrate(_tau_rhs(b, g), np.array([v0.vx, v0.vz], dtype=complex), tau0, tau1, steps)
    return VelocityModes(complex(vx), complex(-tau1 * vx - b * vz), complex(vz))


def _check_incompressible(k0: WaveVector3, v0: VelocityModes):
    r = divergence_residual(k0, v0)
    if r > DIV_TOL:
        raise CompressibleModeError(f"initial velocity is not divergence-free: |k.v|/(|k||v|) = {r:.3e}")


def evolve_velocity_3d(k0: WaveVector3, v0: VelocityModes, omega: float, nu: float, t: float,
                       steps: int = 2000) -> VelocityModes:
    """Mode amplitudes at time ``t`` including the viscous envelope."""
    if t < 0:
        raise ValueError("t must be >= 0")
    _check_incompressible(k0, v0)
    v = _inviscid(k0, v0, omega, t, steps)
    env = math.exp(-nu * q3_integral(k0, omega, t))
    kt = k0.at(omega, t)
    vx, vy, vz = v.vx * env, v.vy * env, v.vz * env
    return VelocityModes(vx, vy, vz, pressure_of(kt, vx, omega))


def velocity_trajectory(k0: WaveVector3, v0: VelocityModes, omega: float, nu: float,
                        ts: Sequence[float], steps_per_unit: int = 200) -> list[tuple[float, VelocityModes, float]]:
    """``(t, modes, divergence residual)`` along an increasing time grid,
    continuing the integration from one sample to the next."""
    _check_incompressible(k0, v0)
    ts = np.asarray(ts, dtype=float)
    if np.any(np.diff(ts) <= 0) or ts[0] < 0:
        raise ValueError("times must be nonnegative and strictly increasing")
    scale = math.sqrt(v0.energy())
    out = []
    t_prev, v_prev, k_prev = 0.0, v0, k0
    for t in ts:
        dt = t - t_prev
        steps = max(1, int(math.ceil(steps_per_unit * abs(omega) * dt * max(1.0, abs(k0.ky)))))
        v_prev = _inviscid(k_prev, v_prev, omega, dt, steps)
        k_prev = k0.at(omega, t)
        t_prev = t
        env = math.exp(-nu * q3_integral(k0, omega, t))
        v = VelocityModes(v_prev.vx * env, v_prev.vy * env, v_prev.vz * env)
        v = VelocityModes(v.vx, v.vy, v.vz, pressure_of(k_prev, v.vx, omega))
        out.append((float(t), v, divergence_residual(k_prev, v, scale * env if scale else None)))
    return out


def component_decay_exponents(k0: WaveVector3, v0: VelocityModes, omega: float, nu: float = 0.0,
                              window: tuple[float, float] = (5.0, 50.0), samples: int = 40) -> dict[str, FitResult]:
    """Log-log slopes of ``|vx|, |vy|, |vz|`` against ``t`` over ``window``."""
    ts = np.geomspace(window[0], window[1], samples)
    traj = velocity_trajectory(k0, v0, omega, nu, ts)
    out = {}
    for name in ("vx", "vy", "vz"):
        mags = [abs(getattr(v, name)) for _, v, _ in traj]
        out[name] = fit_loglog_slope(zip(ts, mags))
    return out


def vx_decay_exponent(k0: WaveVector3, v0: VelocityModes, omega: float, nu: float = 0.0,
                      window: tuple[float, float] = (5.0, 50.0), samples: int = 40) -> FitResult:
    return component_decay_exponents(k0, v0, omega, nu, window, samples)["vx"]
