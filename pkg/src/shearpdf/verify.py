"""Oracle and invariant checks behind ``shearpdf verify``.

Each check returns a measured number and a bound. The report prints one line
per check with fixed formatting so two runs are byte-identical.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import gauss_pdf, infogeo, kinematics as kin, nongauss, numerics, scaling, shear3d, spectra
from .output import emit_table

# module -> list of (name, fn) where fn() -> (measured, bound, passed)
CHECKS: dict[str, list[tuple[str, Callable[[], tuple[float, float, bool]]]]] = {}


def check(module: str, name: str):
    def deco(fn):
        CHECKS.setdefault(module, []).append((name, fn))
        return fn
    return deco


def _le(value, bound):
    return float(value), float(bound), bool(value <= bound)


def _rel(a, b):
    return 0.0 if a == b else abs(a - b) / abs(b)


# numerics

@check("numerics", "rk4_exponential")
def _():
    y = numerics.rk4_integrate(lambda t, y: y, np.array([1.0]), 0.0, 1.0, 1000)[0]
    return _le(abs(y - math.e), 1e-9)


@check("numerics", "simpson_gaussian")
def _():
    v = numerics.quad2d(lambda x, y: np.exp(-x * x - y * y), 8.0, 200)
    return _le(_rel(v, math.pi), 1e-10)


# kinematics

_FLOWS = [kin.ZonalOnly(2.0), kin.Hyperbolic(2.0, 2.0), kin.Hyperbolic(1.0, 4.0),
          kin.Elliptic(2.0, 2.0), kin.Elliptic(1.0, 4.0), kin.DecayingZonal(2.0, 1.5)]
_K0 = [(0.0, 1.0), (1.0, 1.0), (1.0, 0.0), (-1.0, 2.0)]


@check("kinematics", "wavevector_vs_rk4")
def _():
    worst = 0.0
    for f in _FLOWS:
        for k0 in _K0:
            a = np.array(kin.wavevector_at(f, k0, 2.0))
            b = np.array(kin.wavevector_numeric(f, k0, 2.0, steps=2000))
            worst = max(worst, np.linalg.norm(a - b) / np.linalg.norm(b))
    return _le(worst, 1e-8)


@check("kinematics", "phase_integral_vs_rk4")
def _():
    worst = 0.0
    for f in _FLOWS:
        for k0 in _K0:
            a = float(kin.phase_integral(f, k0, 2.0))
            b = kin.phase_integral_numeric(f, k0, 2.0, steps=2000)
            worst = max(worst, _rel(a, b))
    return _le(worst, 1e-8)


@check("kinematics", "elliptic_norm_conserved")
def _():
    f = kin.Elliptic(2.0, 2.0)
    worst = max(abs(sum(c * c for c in kin.wavevector_at(f, (1.0, -2.0), t)) - 5.0) / 5.0
                for t in np.linspace(0, 3, 31))
    return _le(worst, 1e-12)


# spectra

_PAIRS = [(m, f) for m in (spectra.Constant(1.0), spectra.GaussianIso(100.0, 1.0), spectra.GaussianIso(1.0, 1.0),
                           spectra.AnisoConstant(1.0), spectra.Delta(0.5, 1.0, 1.0))
          for f in (kin.ZonalOnly(2.0), kin.Hyperbolic(2.0, 2.0), kin.Elliptic(1.0, 3.0))]


@check("spectra", "closed_form_vs_quadrature")
def _():
    worst = 0.0
    for m, f in _PAIRS:
        for t in (0.1, 1.0, 3.0):
            worst = max(worst, _rel(spectra.mean_square_vorticity(m, f, 0.1, t),
                                    spectra.mean_square_vorticity_oracle(m, f, 0.1, t)))
    return _le(worst, 1e-6)


@check("spectra", "dissipation_balance")
def _():
    worst = max(spectra.dissipation_balance_residual(m, f, 0.1, 0.5)
                for m in (spectra.Delta(0.0, 1.0, 1.0), spectra.GaussianIso(100.0, 1.0))
                for f in (kin.ZonalOnly(2.0), kin.Hyperbolic(2.0, 2.0)))
    return _le(worst, 1e-5)


@check("spectra", "constant_zonal_value")
def _():
    return _le(abs(spectra.mean_square_vorticity(spectra.Constant(1.0), kin.ZonalOnly(2.0), 0.1, 1.0) - 13.6034952), 1e-6)


# gauss_pdf

@check("gauss_pdf", "series_mass_and_narrowing")
def _():
    series = gauss_pdf.pdf_series(spectra.Delta(0.0, 1.0, 1.0), kin.ZonalOnly(2.0), 0.1, 0.6 * np.arange(11))
    mass_err = max(abs(g.mass() - 1.0) for _, g in series)
    peaks = np.array([g.density.max() for _, g in series])
    ok = mass_err <= 1e-9 and bool(np.all(np.diff(peaks) > 0))
    return float(mass_err), 1e-9, ok


# infogeo

@check("infogeo", "grid_rate_vs_gaussian")
def _():
    m, f = spectra.Delta(0.0, 1.0, 1.0), kin.ZonalOnly(2.0)
    a = infogeo.info_series(m, f, 0.1, [1.0]).E[0]
    b = infogeo.info_series_grid(m, f, 0.1, [1.0]).E[0]
    return _le(_rel(b, a), 1e-4)


@check("infogeo", "kl_curvature_limit")
def _():
    m, f = spectra.Delta(0.0, 1.0, 1.0), kin.ZonalOnly(2.0)
    grid = gauss_pdf.default_grid(gauss_pdf.gaussian_pdf_at(m, f, 0.1, 1.0))
    traj = lambda s: gauss_pdf.to_grid(gauss_pdf.gaussian_pdf_at(m, f, 0.1, s), grid)
    return _le(infogeo.kl_limit_check(traj, 1.0, 1e-3), 1e-3)


@check("infogeo", "gaussian_kl_value")
def _():
    g = numerics.RealGrid1D(-12.0, 12.0, 2001)
    p1 = gauss_pdf.to_grid(gauss_pdf.GaussianPdf(0.0, 1.0), g)
    p2 = gauss_pdf.to_grid(gauss_pdf.GaussianPdf(0.0, 0.5), g)
    return _le(abs(infogeo.kl_divergence(p1, p2) - 0.5 * (1 - math.log(2))), 1e-5)


@check("infogeo", "constant_hyperbolic_plateau")
def _():
    s = infogeo.info_series(spectra.Constant(1.0), kin.Hyperbolic(2.0, 2.0), 0.1, np.linspace(1.5, 3.0, 31))
    return _le(abs(s.tau[-1] * 2.0 / math.sqrt(2) - 1), 1e-2)


# nongauss

@check("nongauss", "field_vs_fourier_quadrature")
def _():
    worst = 0.0
    for fld in (nongauss.InhomogeneousField(2.0, 2.0, 0.1), nongauss.InhomogeneousField(2.0, 2.0, 0.0)):
        for t in (0.0, 0.5, 1.0):
            for x, y in ((0.0, 0.0), (1.0, 0.0), (0.5, -0.5), (-1.0, 1.0)):
                worst = max(worst, abs(nongauss.vorticity_field(fld, t, x, y)
                                       - nongauss.vorticity_field_oracle(fld, t, x, y)))
    return _le(worst, 1e-6)


@check("nongauss", "weak_regime_monte_carlo")
def _():
    x, y, t, w, nu = 1.0, 0.0, 1.0, 2.0, 0.1
    ens = nongauss.AlphaEnsemble(0.0, nongauss.weak_alpha_max(t, w, nu))
    amap = nongauss.weak_map(x, y, t, w)
    edges = np.geomspace(float(amap(np.array(ens.hi))), 1.0, 51)
    h = nongauss.pdf_mc_oracle(ens, amap, 1_000_000, 1, edges)
    exact = nongauss.pdf_weak_inhomogeneity(h.centers, x, y, t, w, nu)
    return _le(float(np.max(np.abs(h.density / exact - 1)[5:45])), 0.05)


@check("nongauss", "strong_regime_slope")
def _():
    x, y, t, w, nu = 0.0, 0.0, 1.0, 2.0, 0.1
    ens = nongauss.AlphaEnsemble(2 * w / nu, 60.0)
    h = nongauss.pdf_mc_oracle(ens, nongauss.strong_map(x, y, t, w, nu), 1_000_000, 1, 50)
    slope = numerics.fit_line(np.log(h.centers), np.log(h.density)).slope
    return _le(abs(slope + 2), 0.05)


# scaling

@check("scaling", "delta_zonal_exponent")
def _():
    return _le(abs(scaling.scan_tau_e(scaling.pair_by_name("delta-zonal")).fit.slope + 2 / 3), 0.05)


@check("scaling", "constant_zonal_exponent")
def _():
    return _le(abs(scaling.scan_tau_e(scaling.pair_by_name("constant-zonal")).fit.slope + 0.5), 0.05)


@check("scaling", "delta_hyperbolic_log_law")
def _():
    r2 = scaling.scan_tau_e(scaling.pair_by_name("delta-hyperbolic")).log_fit.r_squared
    return float(r2), 0.99, bool(r2 >= 0.99)


@check("scaling", "tau_e_decreasing_in_rate")
def _():
    bad = sum(int(np.any(np.diff(scaling.scan_tau_e(scaling.pair_by_name(n)).tau_e) >= 0))
              for n in scaling.TABLE_PAIRS)
    return _le(bad, 0)


# shear3d

@check("shear3d", "vx_algebraic_decay")
def _():
    fit = shear3d.vx_decay_exponent(shear3d.WaveVector3(0.0, 1.0, 1.0), shear3d.VelocityModes(1.0, 0.0, 0.0), 2.0)
    return _le(abs(fit.slope + 2), 0.05)


@check("shear3d", "incompressibility")
def _():
    traj = shear3d.velocity_trajectory(shear3d.WaveVector3(0.5, 1.0, -1.0), shear3d.VelocityModes(1.0, 0.5, 1.0),
                                       2.0, 0.05, np.linspace(0.1, 10, 40))
    return _le(max(r for *_, r in traj), 1e-8)


@check("shear3d", "no_shear_viscous_decay")
def _():
    k0 = shear3d.WaveVector3(1.0, 2.0, -1.0)
    v = shear3d.evolve_velocity_3d(k0, shear3d.VelocityModes(1.0, 0.0, 1.0), 0.0, 0.1, 2.0)
    return _le(abs(v.vx - math.exp(-0.1 * 6 * 2)), 1e-8)


# cli

@check("cli", "table_bytes_stable")
def _():
    rows = [[1.0, 2.5e-7], [math.pi, -1e12]]
    a = emit_table(rows, ["a", "b"])
    ok = a == emit_table(rows, ["a", "b"]) and emit_table([[1.0]], ["col"]) == b"col\n1.00000000e0\n"
    return 0.0, 0.0, ok


def run_checks(module: str | None = None) -> tuple[str, bool]:
    if module is not None and module not in CHECKS:
        return f"unknown module {module!r}; choose from {', '.join(CHECKS)}\n", False
    lines, all_ok = [], True
    for mod, items in CHECKS.items():
        if module is not None and mod != module:
            continue
        for name, fn in items:
            try:
                measured, bound, ok = fn()
                detail = f"measured={measured:.6e} bound={bound:.1e}"
            except Exception as e:  # report, never crash the suite
                ok, detail = False, f"error={type(e).__name__}: {e}"
            all_ok &= ok
            lines.append(f"{'PASS' if ok else 'FAIL'} {mod}.{name} {detail}")
    lines.append(f"{'ALL PASS' if all_ok else 'FAILURES'} ({len(lines)} checks)")
    return "\n".join(lines) + "\n", all_ok
