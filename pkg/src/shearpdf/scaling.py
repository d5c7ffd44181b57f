"""Effective dissipation times and their scaling with the shearing rate."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import spectra
from .infogeo import InfoSeries
from .kinematics import Hyperbolic, ZonalOnly
from .numerics import FitResult, NumericalError, bisect_root, fit_line, fit_loglog_slope

T_MAX = 1e6


class NoCrossingError(NumericalError):
    pass


def reference_level(model: spectra.SpectrumModel, flow, nu: float) -> float:
    """Initial ``<w^2>`` for bounded spectra; the amplitude ``phi`` for
    spectra whose ``<w^2>`` is infinite at ``t = 0``."""
    if isinstance(model, (spectra.Constant, spectra.AnisoConstant)):
        return model.phi
    return spectra.mean_square_vorticity(model, flow, nu, 0.0)


def effective_dissipation_time(model: spectra.SpectrumModel, flow, nu: float,
                               threshold: float = math.exp(-1)) -> float:
    """First time at which ``<w^2>`` falls to ``threshold`` times the reference level."""
    if not 0 < threshold < 1:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    target = math.log(threshold * reference_level(model, flow, nu))

    def gap(t):
        return spectra.log_mean_square_vorticity(model, flow, nu, t) - target

    hi = 1.0
    while gap(hi) > 0:
        hi *= 2.0
        if hi > T_MAX:
            raise NoCrossingError(f"<w^2> stays above {threshold:g} x reference up to t={T_MAX:g}")
    if isinstance(model, (spectra.Constant, spectra.AnisoConstant)):
        lo = hi
        while True:
            lo *= 0.5
            if lo < 1e-300:
                raise NoCrossingError("<w^2> is below the reference level at all resolvable times")
            if gap(lo) > 0:
                break
    else:
        lo = 0.0
    return bisect_root(gap, lo, hi, rtol=1e-10)


@dataclass(frozen=True)
class ScanPair:
    """A spectrum model paired with a family of flows indexed by one rate."""

    name: str
    model: spectra.SpectrumModel
    flow_kind: str
    expected_exponent: float = math.nan

    def flow(self, omega: float):
        if self.flow_kind == "zonal":
            return ZonalOnly(omega)
        if self.flow_kind == "hyperbolic":
            return Hyperbolic(omega, omega)
        raise ValueError(f"unknown flow kind {self.flow_kind!r}")


def pair_by_name(name: str, alpha: float = 100.0, phi: float = 1.0) -> ScanPair:
    table = {
        "delta-zonal": (spectra.Delta(0.0, 1.0, phi), "zonal", -2 / 3),
        "constant-zonal": (spectra.Constant(phi), "zonal", -1 / 2),
        "constant-hyperbolic": (spectra.Constant(phi), "hyperbolic", -1.0),
        "delta-hyperbolic": (spectra.Delta(0.0, 1.0, phi), "hyperbolic", -1.0),
        "gaussian-zonal": (spectra.GaussianIso(alpha, phi), "zonal", math.nan),
    }
    if name not in table:
        raise ValueError(f"unknown pair {name!r}; choose from {', '.join(table)}")
    model, kind, expected = table[name]
    return ScanPair(name, model, kind, expected)


TABLE_PAIRS = ("delta-zonal", "constant-zonal", "constant-hyperbolic", "delta-hyperbolic")


@dataclass(frozen=True)
class TauEScan:
    omegas: np.ndarray
    tau_e: np.ndarray
    fit: FitResult
    pair: ScanPair
    log_fit: FitResult | None = None


def default_omegas(n: int = 7) -> np.ndarray:
    return np.geomspace(4.0, 64.0, n)


def scan_tau_e(pair: ScanPair, nu: float = 0.1, omegas: Sequence[float] | None = None,
               threshold: float = math.exp(-1), jobs: int = 1) -> TauEScan:
    """``tau_e`` over a set of rates with a log-log fit.

    Hyperbolic pairs also get a straight-line fit of ``W tau_e`` against
    ``ln W``.
    """
    omegas = np.sort(np.asarray(default_omegas() if omegas is None else omegas, dtype=float))

    def one(w):
        return effective_dissipation_time(pair.model, pair.flow(w), nu, threshold)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as ex:
        taus = np.array(list(ex.map(one, omegas)))
    fit = fit_loglog_slope(zip(omegas, taus))
    log_fit = fit_line(np.log(omegas), omegas * taus) if pair.flow_kind == "hyperbolic" else None
    return TauEScan(omegas, taus, fit, pair, log_fit)


def table_rows(scans: Sequence[TauEScan]) -> list[list]:
    rows = []
    for s in scans:
        for w, tau in zip(s.omegas, s.tau_e):
            rows.append([s.pair.name, float(w), float(tau), s.fit.slope, s.pair.expected_exponent])
    return rows


TABLE_COLUMNS = ["pair", "omega", "tau_e", "fitted_exponent", "expected_exponent"]


@dataclass(frozen=True)
class PlateauStats:
    mean: float
    max_rel_dev: float


def fit_tau_t_asymptote(series: InfoSeries, window: tuple[float, float], kind: str):
    """Late-time shape of ``tau(t)`` inside ``window``.

    ``powerlaw`` fits ``ln tau`` against ``ln t``, ``exponential`` fits
    ``ln tau`` against ``t``, ``plateau`` returns the mean and the largest
    relative deviation from it.
    """
    lo, hi = window
    sel = (series.ts >= lo) & (series.ts <= hi)
    if not sel.any():
        raise ValueError(f"no samples in window [{lo}, {hi}]")
    ts, tau = series.ts[sel], series.tau[sel]
    if kind == "powerlaw":
        return fit_loglog_slope(zip(ts, tau))
    if kind == "exponential":
        return fit_line(ts, np.log(tau))
    if kind == "plateau":
        m = float(tau.mean())
        return PlateauStats(m, float(np.max(np.abs(tau / m - 1))))
    raise ValueError(f"unknown kind {kind!r}")
