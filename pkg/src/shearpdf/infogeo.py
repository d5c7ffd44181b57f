"""Information rate, dynamical time and information length.

``E(t) = int dw (d_t p)^2 / p`` is the squared inverse dynamical time,
``tau = E^{-1/2}``, and ``L(t) = int_0^t sqrt(E) dt``. For a Gaussian with
inverse width ``beta`` and mean ``mu`` the integral is
``(1/2)(beta'/beta)^2 + 2 beta mu'^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import spectra
from .kinematics import DecayingZonal, ShearFlowSpec
from .numerics import NumericalError, RealGrid1D, cumtrapz, trapezoid

DENSITY_FLOOR = 1e-300


@dataclass(frozen=True)
class GriddedPdf:
    """Density sampled on a uniform grid; mass checked by trapezoid."""

    grid: RealGrid1D
    density: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.density, dtype=float)
        if d.shape != (self.grid.count,):
            raise ValueError(f"density has {d.size} samples, grid has {self.grid.count}")
        if np.any(d < 0) or not np.all(np.isfinite(d)):
            raise ValueError("density must be finite and nonnegative")
        object.__setattr__(self, "density", d)
        m = self.mass()
        if abs(m - 1.0) > 1e-6:
            raise ValueError(f"density mass is {m!r}, expected 1 within 1e-6")

    def mass(self) -> float:
        return trapezoid(self.density, self.grid.spacing)

    @property
    def omega(self) -> np.ndarray:
        return self.grid.points()


@dataclass(frozen=True)
class InfoSeries:
    ts: np.ndarray
    E: np.ndarray
    tau: np.ndarray
    L: np.ndarray
    width_term: np.ndarray | None = None
    mean_term: np.ndarray | None = None


def info_rate_gaussian(beta: float, dbeta_dt: float, mean_rate: float) -> float:
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return 0.5 * (dbeta_dt / beta) ** 2 + 2.0 * beta * mean_rate**2


def _same_grid(p1: GriddedPdf, p2: GriddedPdf):
    if p1.grid != p2.grid:
        raise ValueError(f"grid mismatch: {p1.grid} vs {p2.grid}")


def info_rate_grid(p_prev: GriddedPdf, p_next: GriddedPdf, dt: float, floor: float = DENSITY_FLOOR) -> float:
    """``int (d_t p)^2 / p`` at the midpoint of two snapshots ``dt`` apart.

    Bins where the midpoint density falls below ``floor`` are dropped.
    """
    _same_grid(p_prev, p_next)
    if not dt > 0:
        raise ValueError("dt must be positive")
    mid = 0.5 * (p_prev.density + p_next.density)
    rate = (p_next.density - p_prev.density) / dt
    keep = mid >= floor
    integrand = np.where(keep, rate**2 / np.where(keep, mid, 1.0), 0.0)
    return trapezoid(integrand, p_prev.grid.spacing)


def tau_from_rate(E) -> np.ndarray:
    E = np.asarray(E, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(E > 0, 1.0 / np.sqrt(np.where(E > 0, E, 1.0)), np.inf)


def information_length(ts: Sequence[float], E: Sequence[float]) -> np.ndarray:
    """Cumulative trapezoid of ``sqrt(E)``."""
    E = np.asarray(E, dtype=float)
    if np.any(~np.isfinite(E)):
        raise ValueError("information rate must be finite")
    if np.any(E < 0):
        i = int(np.argmax(E < 0))
        raise ValueError(f"negative information rate {E[i]!r} at index {i}")
    return cumtrapz(ts, np.sqrt(E))


def kl_divergence(p1: GriddedPdf, p2: GriddedPdf, floor: float = DENSITY_FLOOR) -> float:
    """``int p2 ln(p2/p1)``; bins with either density below ``floor`` are dropped.

    Evaluated as ``int [p2 ln(p2/p1) - p2 + p1]``, equal for normalised
    densities, so that rounding in the grid mass does not leak into the small
    divergences of nearby PDFs.
    """
    _same_grid(p1, p2)
    a, b = p1.density, p2.density
    keep = (a >= floor) & (b >= floor)
    a = np.where(keep, a, 1.0)
    b = np.where(keep, b, 1.0)
    r = (b - a) / a
    # log1p keeps nearby PDFs exact; far apart, r -> -1 and the plain log is safer
    with np.errstate(divide="ignore"):
        log_ratio = np.where(np.abs(r) < 0.5, np.log1p(r), np.log(b) - np.log(a))
    integrand = b * log_ratio - (b - a)
    return trapezoid(np.where(keep, integrand, 0.0), p1.grid.spacing)


def kl_limit_check(pdf_trajectory: Callable[[float], GriddedPdf], t: float, dt: float) -> float:
    """Relative gap between the KL curvature at coincidence and ``E``.

    The curvature is the second difference of ``D(p(t1), p(t))`` in ``t1``
    around ``t1 = t``; ``E`` is the centred grid rate over ``[t - dt, t + dt]``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    p0 = pdf_trajectory(t)
    pm, pp = pdf_trajectory(t - dt), pdf_trajectory(t + dt)
    curvature = (kl_divergence(pp, p0) + kl_divergence(pm, p0)) / dt**2
    e = info_rate_grid(pm, pp, 2 * dt)
    if e == 0:
        raise NumericalError(f"information rate vanishes at t={t}; relative residual undefined")
    return abs(curvature - e) / e


def _series(ts, width, mean, keep_terms=False) -> InfoSeries:
    E = width + mean
    return InfoSeries(ts, E, tau_from_rate(E), information_length(ts, E),
                      width if keep_terms else None, mean if keep_terms else None)


def info_series(model, flow: ShearFlowSpec, nu: float, ts: Sequence[float]) -> InfoSeries:
    """Analytic series for the Gaussian PDF of a (spectrum, flow) pair."""
    ts = np.asarray(ts, dtype=float)
    width = np.empty_like(ts)
    mean = np.empty_like(ts)
    for i, t in enumerate(ts):
        rate = spectra.msv_log_rate(model, flow, nu, t)
        width[i] = 0.5 * rate**2
        drift = flow.mean_vorticity_rate(t)
        if drift == 0:
            mean[i] = 0.0
        else:
            log_beta = math.log(0.5) - spectra.log_mean_square_vorticity(model, flow, nu, t)
            mean[i] = 2.0 * math.exp(log_beta + 2 * math.log(abs(drift)))
    return _series(ts, width, mean, keep_terms=isinstance(flow, DecayingZonal))


def info_series_grid(model, flow: ShearFlowSpec, nu: float, ts: Sequence[float],
                     grid: RealGrid1D | None = None, dt: float = 1e-4) -> InfoSeries:
    """Same series with ``E`` taken from gridded PDFs at ``t -/+ dt/2``.

    Without ``grid`` each time uses the default grid of the later snapshot.
    """
    from .gauss_pdf import default_grid, gaussian_pdf_at, to_grid

    ts = np.asarray(ts, dtype=float)
    E = np.empty_like(ts)
    for i, t in enumerate(ts):
        lo = max(t - 0.5 * dt, 0.0)
        hi = lo + dt
        a, b = gaussian_pdf_at(model, flow, nu, lo), gaussian_pdf_at(model, flow, nu, hi)
        g = grid or default_grid(b)
        pm, pp = to_grid(a, g), to_grid(b, g)
        E[i] = info_rate_grid(pm, pp, dt)
    return InfoSeries(ts, E, tau_from_rate(E), information_length(ts, E))


def info_series_decaying_zonal(omega_z0: float, tau0: float, nu: float,
                               model: spectra.SpectrumModel, ts: Sequence[float]) -> InfoSeries:
    """Width and mean-drift contributions for an exponentially decaying zonal flow.

    ``beta`` is evaluated exactly for the decaying shear (not a frozen-shear
    surrogate) and the mean vorticity is ``-Omega_z(t)``.
    """
    if not isinstance(model, spectra.Constant):
        raise ValueError("decaying zonal series is defined for the constant spectrum")
    ts = np.asarray(ts, dtype=float)
    if np.any(ts <= 0):
        raise spectra.DivergentSpectrumError("constant spectrum needs t > 0")
    return info_series(model, DecayingZonal(omega_z0, tau0), nu, ts)
