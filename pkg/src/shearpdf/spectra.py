"""Evolved power spectra and the mean-square vorticity.

Each Fourier amplitude decays as ``exp(-nu Q)``, so the spectrum carries
``exp(-2 nu Q)`` and ``<w^2>(t) = int d^2k psi(k(t))``. The map ``k0 -> k(t)``
has unit Jacobian, so the integral can be taken over initial wavevectors.

Closed forms below are normalised by the quadrature oracle
(:func:`mean_square_vorticity_oracle`), which evaluates that integral
directly from the pointwise phase integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np

from . import kinematics as kin
from .kinematics import DecayingZonal, Hyperbolic, ShearFlowSpec, ZonalOnly
from .numerics import NumericalError, central_diff, quad2d, simpson1d


@dataclass(frozen=True)
class Delta:
    """Single initial mode ``phi delta(kx0 - a) delta(ky0 - b)``."""

    a: float = 0.0
    b: float = 1.0
    phi: float = 1.0

    def __post_init__(self):
        _positive("phi", self.phi)


@dataclass(frozen=True)
class Constant:
    phi: float = 1.0

    def __post_init__(self):
        _positive("phi", self.phi)


@dataclass(frozen=True)
class GaussianIso:
    """``psi0 = phi/(alpha pi) exp(-|k0|^2/alpha)``; integrates to ``phi``."""

    alpha: float = 100.0
    phi: float = 1.0

    def __post_init__(self):
        _positive("alpha", self.alpha)
        _positive("phi", self.phi)


@dataclass(frozen=True)
class AnisoConstant:
    """Constant in ``ky`` and concentrated on ``kx0 = 0``: ``phi delta(kx0)``."""

    phi: float = 1.0

    def __post_init__(self):
        _positive("phi", self.phi)


SpectrumModel = Union[Delta, Constant, GaussianIso, AnisoConstant]


def _positive(name, v):
    if not (math.isfinite(v) and v > 0):
        raise ValueError(f"{name} must be a positive finite number, got {v}")


class DivergentSpectrumError(ValueError):
    """Unbounded initial spectrum evaluated where its integral diverges."""


class SpectralPeak(NamedTuple):
    """Location and weight of a delta spectrum at time ``t``."""

    kx: float
    ky: float
    weight: float


@dataclass(frozen=True)
class MsvCurve:
    ts: np.ndarray
    values: np.ndarray
    flow: ShearFlowSpec
    model: SpectrumModel
    nu: float
    oracle: np.ndarray | None = field(default=None)


def initial_spectrum(model: SpectrumModel, kx0, ky0):
    if isinstance(model, Constant):
        return model.phi * np.ones_like(np.asarray(kx0 + ky0, dtype=float))
    if isinstance(model, GaussianIso):
        return model.phi / (model.alpha * math.pi) * np.exp(-(kx0 * kx0 + ky0 * ky0) / model.alpha)
    raise ValueError(f"{type(model).__name__} has no pointwise density")


def evolved_spectrum(model: SpectrumModel, flow: ShearFlowSpec, nu: float, kt, t: float):
    """``psi(k(t)) = exp(-2 nu Q) psi(k0)`` at the current wavevector ``kt``.

    A :class:`Delta` spectrum has no pointwise value; it returns the
    :class:`SpectralPeak` (transported location and decayed weight) and ``kt``
    is ignored.
    """
    if isinstance(model, Delta):
        k0 = (model.a, model.b)
        kx, ky = kin.wavevector_at(flow, k0, t)
        return SpectralPeak(kx, ky, model.phi * math.exp(-2 * nu * kin.phase_integral(flow, k0, t)))
    k0 = kin.initial_from_current(flow, kt, t)
    return float(initial_spectrum(model, *k0) * math.exp(-2 * nu * kin.phase_integral(flow, k0, t)))


def spectrum_on_grid(model: SpectrumModel, flow: ShearFlowSpec, nu: float, kx, ky, t: float) -> np.ndarray:
    """Vectorised :func:`evolved_spectrum` over current-wavevector arrays."""
    kx0, ky0 = kin.initial_from_current_grid(flow, np.asarray(kx, float), np.asarray(ky, float), t)
    return initial_spectrum(model, kx0, ky0) * np.exp(-2 * nu * kin.phase_integral(flow, (kx0, ky0), t))


def _log_sinh_ratio(x):
    """``ln(sinh(x)/x)``, finite for every ``x >= 0``."""
    if x < 1e-4:
        return math.log1p(x * x / 6)
    if x < 1.0:
        return math.log(math.sinh(x) / x)
    return x + math.log1p(-math.exp(-2 * x)) - math.log(2.0 * x)


def _log_expm1_ratio(x):
    """``ln((e^x - 1)/x)``, finite for every ``x`` including 0."""
    if x == 0:
        return 0.0
    if x > 30:
        return x - math.log(x) + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x) / x)


def _needs_positive_time(model, nu, t):
    if isinstance(model, (Constant, AnisoConstant)):
        if t <= 0:
            raise DivergentSpectrumError("constant spectrum: <w^2> diverges at t = 0")
        if nu <= 0:
            raise DivergentSpectrumError("constant spectrum: <w^2> diverges without viscosity")


def log_mean_square_vorticity(model: SpectrumModel, flow: ShearFlowSpec, nu: float, t: float) -> float:
    """Natural log of ``<w^2>(t)``; stays finite where ``<w^2>`` underflows."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if nu < 0:
        raise ValueError("viscosity must be >= 0")
    _needs_positive_time(model, nu, t)
    sym_hyp = isinstance(flow, Hyperbolic) and flow.symmetric

    if isinstance(model, Delta):
        return math.log(model.phi) - 2 * nu * float(kin.phase_integral(flow, (model.a, model.b), t))

    if isinstance(model, Constant):
        if isinstance(flow, ZonalOnly):
            w = flow.omega_z
            return math.log(math.pi * model.phi / (nu * t)) - 0.5 * math.log(4 + w * w * t * t / 3)
        if sym_hyp:
            w = flow.omega
            x = w * t
            # ln(pi W phi / (2 nu sinh(W t))), written so tiny W t stays finite
            return math.log(math.pi * model.phi / (2 * nu * t)) - _log_sinh_ratio(x)
        g = flow.gram(t)
        return math.log(math.pi * model.phi) - 0.5 * math.log(np.linalg.det(2 * nu * g))

    if isinstance(model, GaussianIso):
        inv = 1.0 / model.alpha
        if isinstance(flow, ZonalOnly):
            w = flow.omega_z
            a = (2 * nu * t + inv) ** 2 + nu * t * (w * t) ** 2 * (nu * t + 2 * inv) / 3
            return math.log(model.phi * inv) - 0.5 * math.log(a)
        if sym_hyp:
            w = flow.omega
            x = 2 * w * t
            # nu expm1(+-x)/(2w) = nu t expm1(+-x)/x
            if nu > 0 and t > 0:
                log_a = float(np.logaddexp(math.log(nu * t) + _log_expm1_ratio(x), math.log(inv / 2)))
            else:
                log_a = math.log(inv / 2)
            b = nu * t * (-math.expm1(-x) / x if x > 0 else 1.0) + inv / 2
            return math.log(model.phi * inv / 2) - 0.5 * (log_a + math.log(b))
        m = 2 * nu * flow.gram(t) + inv * np.eye(2)
        return math.log(model.phi * inv) - 0.5 * math.log(np.linalg.det(m))

    if isinstance(model, AnisoConstant):
        if isinstance(flow, ZonalOnly):
            w = flow.omega_z
            return math.log(model.phi) + 0.5 * math.log(math.pi / (2 * nu * t * (1 + w * w * t * t / 3)))
        gyy = flow.gram(t)[1, 1]
        return math.log(model.phi) + 0.5 * math.log(math.pi / (2 * nu * gyy))

    raise TypeError(f"unknown spectrum model {model!r}")


def mean_square_vorticity(model: SpectrumModel, flow: ShearFlowSpec, nu: float, t: float) -> float:
    """Closed-form ``<w^2>(t)`` for any (spectrum, flow) pair."""
    return math.exp(log_mean_square_vorticity(model, flow, nu, t))


def msv_log_rate(model: SpectrumModel, flow: ShearFlowSpec, nu: float, t: float) -> float:
    """``-d ln<w^2>/dt``, which is also ``d ln(beta)/dt`` for the Gaussian PDF."""
    _needs_positive_time(model, nu, t)
    if isinstance(model, Delta):
        kx, ky = kin.wavevector_at(flow, (model.a, model.b), t)
        return 2 * nu * (kx * kx + ky * ky)
    h = kin.kinetic_metric(flow, t)
    if isinstance(model, Constant):
        if isinstance(flow, Hyperbolic) and flow.symmetric:
            return flow.omega / math.tanh(flow.omega * t)
        return 0.5 * float(np.trace(np.linalg.solve(flow.gram(t), h)))
    if isinstance(model, GaussianIso):
        if isinstance(flow, Hyperbolic) and flow.symmetric:
            w, inv = flow.omega, 1.0 / model.alpha
            x = 2 * w * t
            grown = nu * t * (-math.expm1(-x) / x if x > 0 else 1.0)
            ra = nu / (grown + math.exp(-x) * inv / 2)
            rb = nu * math.exp(-x) / (grown + inv / 2)
            return 0.5 * (ra + rb)
        m = 2 * nu * flow.gram(t) + np.eye(2) / model.alpha
        return 0.5 * float(np.trace(np.linalg.solve(m, 2 * nu * h)))
    if isinstance(model, AnisoConstant):
        return 0.5 * h[1, 1] / flow.gram(t)[1, 1]
    raise TypeError(f"unknown spectrum model {model!r}")


# --- quadrature oracle -----------------------------------------------------

def _log_initial(model, kx0, ky0):
    if isinstance(model, Constant):
        return math.log(model.phi) + 0.0 * kx0
    return math.log(model.phi / (model.alpha * math.pi)) - (kx0 * kx0 + ky0 * ky0) / model.alpha


def _whitening(logf):
    """Affine map ``k0 = W u`` making a log-quadratic integrand ``~exp(-|u|^2)``.

    The quadratic form is read off from four probe evaluations of the log
    integrand, which is exact for a quadratic and independent of any closed
    form for the integral itself.
    """
    l0 = logf(0.0, 0.0)
    sxx = l0 - logf(1.0, 0.0)
    syy = l0 - logf(0.0, 1.0)
    sxy = 0.5 * (l0 - logf(1.0, 1.0) - sxx - syy)
    s = np.array([[sxx, sxy], [sxy, syy]])
    lam, vec = np.linalg.eigh(s)
    if not lam.min() > 0:
        raise DivergentSpectrumError("spectral integrand is not decaying in every direction")
    w = vec / np.sqrt(lam)
    return w, abs(np.linalg.det(w))


def _oracle_integral(model, flow, nu, t, weight, cells, half_width):
    def logf(kx0, ky0):
        return _log_initial(model, kx0, ky0) - 2 * nu * kin.phase_integral(flow, (kx0, ky0), t)

    w, jac = _whitening(logf)

    def integrand(u, v):
        kx0 = w[0, 0] * u + w[0, 1] * v
        ky0 = w[1, 0] * u + w[1, 1] * v
        return np.exp(logf(kx0, ky0)) * weight(kx0, ky0)

    return jac * quad2d(integrand, half_width, cells)


def _oracle_line(model, flow, nu, t, weight, cells, half_width):
    q1 = float(kin.phase_integral(flow, (0.0, 1.0), t))
    scale = math.sqrt(2 * nu * q1)

    def integrand(u):
        ky = u / scale
        return model.phi * np.exp(-2 * nu * kin.phase_integral(flow, (0.0 * ky, ky), t)) * weight(0.0 * ky, ky)

    return simpson1d(integrand, half_width, cells) / scale


def _unit(kx0, ky0):
    return 1.0


def mean_square_vorticity_oracle(model: SpectrumModel, flow: ShearFlowSpec, nu: float, t: float,
                                 cells: int = 256, half_width: float = 9.0) -> float:
    """``int d^2k0 exp(-2 nu Q(k0, t)) psi0(k0)`` by composite Simpson.

    The integral is taken in whitened coordinates (see :func:`_whitening`) so
    that strongly sheared, highly elongated integrands stay resolved.
    """
    _needs_positive_time(model, nu, t)
    if isinstance(model, Delta):
        return model.phi * math.exp(-2 * nu * float(kin.phase_integral(flow, (model.a, model.b), t)))
    if isinstance(model, AnisoConstant):
        return _oracle_line(model, flow, nu, t, _unit, cells, half_width)
    return _oracle_integral(model, flow, nu, t, _unit, cells, half_width)


def dissipation_integral_oracle(model: SpectrumModel, flow: ShearFlowSpec, nu: float, t: float,
                                cells: int = 256, half_width: float = 9.0) -> float:
    """``int d^2k |k(t)|^2 psi(k(t))`` by the same quadrature."""
    _needs_positive_time(model, nu, t)
    phi_t = flow.transition(t)

    def ksq(kx0, ky0):
        kx = phi_t[0, 0] * kx0 + phi_t[0, 1] * ky0
        ky = phi_t[1, 0] * kx0 + phi_t[1, 1] * ky0
        return kx * kx + ky * ky

    if isinstance(model, Delta):
        return float(ksq(model.a, model.b)) * mean_square_vorticity_oracle(model, flow, nu, t)
    if isinstance(model, AnisoConstant):
        return _oracle_line(model, flow, nu, t, ksq, cells, half_width)
    return _oracle_integral(model, flow, nu, t, ksq, cells, half_width)


def dissipation_balance_residual(model: SpectrumModel, flow: ShearFlowSpec, nu: float, t: float,
                                 h: float | None = None) -> float:
    """Relative mismatch between ``d<w^2>/dt`` and ``-2 nu int |k|^2 psi``.

    The left side is a centred difference of the closed form; the right side
    comes from quadrature.
    """
    if t <= 0:
        raise ValueError("balance is checked at t > 0")
    if nu == 0:
        return 0.0
    lhs = central_diff(lambda s: mean_square_vorticity(model, flow, nu, s), t, h)
    if lhs == 0:
        raise NumericalError(f"d<w^2>/dt vanishes at t={t}; relative residual undefined")
    rhs = -2 * nu * dissipation_integral_oracle(model, flow, nu, t)
    return abs(lhs - rhs) / abs(lhs)


def msv_curve(model: SpectrumModel, flow: ShearFlowSpec, nu: float, ts: Sequence[float],
              with_oracle: bool = False) -> MsvCurve:
    ts = np.asarray(ts, dtype=float)
    vals = np.array([mean_square_vorticity(model, flow, nu, t) for t in ts])
    orc = np.array([mean_square_vorticity_oracle(model, flow, nu, t) for t in ts]) if with_oracle else None
    return MsvCurve(ts, vals, flow, model, nu, orc)
