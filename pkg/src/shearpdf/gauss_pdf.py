"""Gaussian vorticity PDFs ``sqrt(beta/pi) exp(-beta (w - mu)^2)``.

``beta = 1/(2<w^2>)`` comes from the spectra module and the mean is the
vorticity of the background flow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import spectra
from .infogeo import GriddedPdf
from .kinematics import ShearFlowSpec
from .numerics import RealGrid1D

GRID_HALF_WIDTH = 6.0
GRID_POINTS = 513


class TruncatedMassError(ValueError):
    pass


@dataclass(frozen=True)
class GaussianPdf:
    mean: float
    beta: float

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta}")

    @property
    def variance(self) -> float:
        return 0.5 / self.beta


def gaussian_pdf_at(model: spectra.SpectrumModel, flow: ShearFlowSpec, nu: float, t: float) -> GaussianPdf:
    log_msv = spectra.log_mean_square_vorticity(model, flow, nu, t)
    if log_msv < -700:
        raise ValueError(f"<w^2> = exp({log_msv:.4g}) at t={t}: PDF width is below double precision")
    return GaussianPdf(float(flow.mean_vorticity(t)), 0.5 * math.exp(-log_msv))


def pdf_density(p: GaussianPdf, omega):
    d = np.asarray(omega, dtype=float) - p.mean
    out = math.sqrt(p.beta / math.pi) * np.exp(-p.beta * d * d)
    return float(out) if out.ndim == 0 else out


def default_grid(p: GaussianPdf) -> RealGrid1D:
    """``mean +/- 6/sqrt(beta)`` with 513 points."""
    w = GRID_HALF_WIDTH / math.sqrt(p.beta)
    return RealGrid1D(p.mean - w, p.mean + w, GRID_POINTS)


def truncated_mass(p: GaussianPdf, grid: RealGrid1D) -> float:
    s = math.sqrt(p.beta)
    return 0.5 * (math.erfc(s * (p.mean - grid.start)) + math.erfc(s * (grid.stop - p.mean)))


def to_grid(p: GaussianPdf, grid: RealGrid1D, max_truncated: float = 1e-9) -> GriddedPdf:
    lost = truncated_mass(p, grid)
    if lost >= max_truncated:
        raise TruncatedMassError(f"grid [{grid.start}, {grid.stop}] truncates mass {lost:.3e} (limit {max_truncated:g})")
    # offsets from the mean, so very narrow PDFs far from zero keep exact spacing
    off = (grid.start - p.mean) + grid.spacing * np.arange(grid.count)
    return GriddedPdf(grid, math.sqrt(p.beta / math.pi) * np.exp(-p.beta * off * off))


def pdf_series(model: spectra.SpectrumModel, flow: ShearFlowSpec, nu: float, ts: Sequence[float],
               omega_grid: RealGrid1D | None = None) -> list[tuple[float, GriddedPdf]]:
    """Gridded PDFs at each time; each snapshot gets its own default grid
    unless ``omega_grid`` is given."""
    out = []
    for t in ts:
        p = gaussian_pdf_at(model, flow, nu, float(t))
        out.append((float(t), to_grid(p, omega_grid or default_grid(p))))
    return out
