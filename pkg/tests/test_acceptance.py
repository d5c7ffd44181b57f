"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line (shown in the "acceptance criteria"
section of the pytest summary). Run directly with
``python tests/test_acceptance.py``.
"""
import importlib.util
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from shearpdf import (cli, gauss_pdf as gp, infogeo as ig, kinematics as kin, nongauss as ng, scaling as sc,
                      shear3d as s3, spectra as sp)
from shearpdf.numerics import fit_line, fit_loglog_slope, rk4_path

ROOT = Path(__file__).resolve().parents[1]
NU = 0.1
K0S = [(0.0, 1.0), (1.0, 1.0), (1.0, 0.0), (-1.0, 2.0)]
RATES = [0.5, 1.0, 2.0, 4.0]
T_GRID = np.linspace(0.0, 3.0, 13)
SPECTRA_TIMES = [0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]


def flow_variants(w):
    return [kin.ZonalOnly(w), kin.Hyperbolic(w, w), kin.Hyperbolic(w / 2, 2 * w), kin.Elliptic(w, w),
            kin.Elliptic(w / 2, 2 * w), kin.DecayingZonal(w, 1.5)]


def augmented_path(flow, k0, steps=3000):
    """RK4 on (kx, ky, Q) over [0, 3], sampled on T_GRID."""
    def rhs(s, y):
        dk = flow.rhs(y[:2], s)
        return np.array([dk[0], dk[1], y[0] ** 2 + y[1] ** 2])
    ts, ys = rk4_path(rhs, [k0[0], k0[1], 0.0], 0.0, 3.0, steps)
    idx = np.rint(T_GRID / 3.0 * steps).astype(int)
    return ys[idx]


# A k0 on the contracting eigenvector of a strain decays like e^{-Wt} while RK4
# error rides the growing one, so errors are relative to |Phi| |k0| (and its integral).
def scale_k(flow, k0, t):
    return max(np.linalg.norm(flow.transition(t), 2) * math.hypot(*k0), 1e-300)


def scale_q(flow, k0, t):
    return np.trace(flow.gram(t)) * (k0[0] ** 2 + k0[1] ** 2)


# 1 ---------------------------------------------------------------------------

def test_c1_kinematics_vs_rk4(report):
    worst = 0.0
    for w in RATES:
        for f in flow_variants(w):
            for k0 in K0S:
                ys = augmented_path(f, k0)
                for t, y in zip(T_GRID, ys):
                    a = np.array(kin.wavevector_at(f, k0, t))
                    worst = max(worst, np.linalg.norm(a - y[:2]) / scale_k(f, k0, t))
    assert report("1a", "closed-form k(t) vs RK4, relative", worst, "<= 1e-8", worst <= 1e-8)


def test_c1_elliptic_norm(report):
    worst = 0.0
    for w in RATES:
        f = kin.Elliptic(w, w)
        for k0 in K0S:
            r0 = k0[0] ** 2 + k0[1] ** 2
            for t in T_GRID:
                k = kin.wavevector_at(f, k0, t)
                worst = max(worst, abs(k.kx**2 + k.ky**2 - r0) / r0)
    assert report("1b", "elliptic |k|^2 conservation, equal rates", worst, "<= 1e-12", worst <= 1e-12)


# 2 ---------------------------------------------------------------------------

def test_c2_phase_integral(report):
    worst = 0.0
    for w in RATES:
        for f in flow_variants(w):
            for k0 in K0S:
                ys = augmented_path(f, k0)
                for t, y in zip(T_GRID[1:], ys[1:]):
                    worst = max(worst, abs(float(kin.phase_integral(f, k0, t)) - y[2]) / scale_q(f, k0, t))
    assert report("2a", "closed-form Q vs integral of |k|^2, relative", worst, "<= 1e-8", worst <= 1e-8)


def test_c2_circle_minimum(report):
    ang = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    off = 0
    for w in RATES:
        for t in (0.25, 1.0, 3.0):
            q = kin.q2_in_current_coords((np.cos(ang), np.sin(ang)), t, w)
            off += int(abs(ang[np.argmin(q)] % np.pi - np.pi / 4) > 1e-12)
    assert report("2b", "Q2 minimum on each circle at kx=ky (64 angles), misplaced cases", off, "== 0", off == 0)


# 3 ---------------------------------------------------------------------------

SPECTRA_MODELS = [sp.Constant(), sp.GaussianIso(100.0), sp.GaussianIso(1.0), sp.AnisoConstant(), sp.Delta(0.5, 1.0)]


def test_c3_spectra_vs_quadrature(report):
    worst = 0.0
    for m in SPECTRA_MODELS:
        for f in flow_variants(2.0):
            for t in SPECTRA_TIMES:
                b = sp.mean_square_vorticity_oracle(m, f, NU, t)
                if b > 0:
                    worst = max(worst, abs(sp.mean_square_vorticity(m, f, NU, t) - b) / b)
                else:
                    # a single mode squeezed below double precision: compare logs with the RK4 phase
                    q = kin.phase_integral_numeric(f, (m.a, m.b), t, steps=4000)
                    log_b = math.log(m.phi) - 2 * NU * q
                    worst = max(worst, abs(sp.log_mean_square_vorticity(m, f, NU, t) - log_b) / abs(log_b))
    assert report("3a", "<w^2> closed forms vs 2D quadrature, relative", worst, "<= 1e-6", worst <= 1e-6)


def _load_constants_script():
    spec = importlib.util.spec_from_file_location("constants_table", ROOT / "scripts" / "constants_table.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_c3_constants_table_current(report, tmp_path):
    fresh = CONSTANTS.main(str(tmp_path / "CONSTANTS.md"))
    committed = (ROOT / "CONSTANTS.md").read_text()
    ok = fresh == committed
    assert report("3b", "CONSTANTS.md matches a fresh measurement of every quoted prefactor", "identical" if ok else
                  "differs", "identical", ok)


CONSTANTS = _load_constants_script()
# rows whose time dependence the criterion asks to confirm; the quoted information
# rate with the shear rate entering linearly and the decaying-shear phase are tabulated only
CHECKED_ROWS = [(name, fn) for name, fn in CONSTANTS.ROWS if not name.startswith(("E,", "phase integral"))]


def _variation(fn):
    r = CONSTANTS.ratios(fn)
    return float(np.max(np.abs(r / r[-1] - 1))), float(r[-1])


@pytest.mark.parametrize("name,fn", CHECKED_ROWS, ids=[n for n, _ in CHECKED_ROWS])
def test_c3_quoted_time_dependence(report, name, fn):
    var, ratio = _variation(fn)
    ok = var <= 1e-6
    assert report("3c", f"quoted form '{name}': ratio {ratio:.6g} varies in t by", var, "<= 1e-6", ok)


# 4 ---------------------------------------------------------------------------

@pytest.mark.parametrize("model", [sp.Delta(0.0, 1.0), sp.GaussianIso(100.0)], ids=["delta", "gaussian"])
@pytest.mark.parametrize("flow", [kin.ZonalOnly(2.0), kin.Hyperbolic(2.0, 2.0)], ids=["zonal", "hyperbolic"])
def test_c4_dissipation_balance(report, model, flow):
    worst = max(sp.dissipation_balance_residual(model, flow, NU, t) for t in (0.25, 0.5, 1.0))
    assert report("4", f"d<w^2>/dt = -2 nu int|k|^2 psi, {type(model).__name__}/{type(flow).__name__}", worst,
                  "<= 1e-5", worst <= 1e-5)


# 5 ---------------------------------------------------------------------------

@pytest.mark.parametrize("name,target,tol", [("delta-zonal", -2 / 3, 0.05), ("constant-zonal", -0.5, 0.05),
                                             ("constant-hyperbolic", -1.0, 0.1)])
def test_c5_power_law_exponents(report, name, target, tol):
    slope = sc.scan_tau_e(sc.pair_by_name(name), NU).fit.slope
    ok = abs(slope - target) <= tol
    assert report("5", f"tau_e exponent {name}, rates 4..64", slope, f"{target:.4g} +/- {tol}", ok)


def test_c5_delta_hyperbolic_log_law(report):
    r2 = sc.scan_tau_e(sc.pair_by_name("delta-hyperbolic"), NU).log_fit.r_squared
    assert report("5", "W tau_e linear in ln W, delta-hyperbolic, r^2", r2, ">= 0.99", r2 >= 0.99)


GAUSS_SLOPES = {}


def gaussian_slope(alpha):
    if alpha not in GAUSS_SLOPES:
        GAUSS_SLOPES[alpha] = sc.scan_tau_e(sc.pair_by_name("gaussian-zonal", alpha=alpha), NU).fit.slope
    return GAUSS_SLOPES[alpha]


@pytest.mark.parametrize("alpha", [1.0, 10.0, 100.0])
def test_c5_gaussian_between_limits(report, alpha):
    s = gaussian_slope(alpha)
    ok = -2 / 3 < s < -0.5
    assert report("5", f"Gaussian alpha={alpha:g} zonal exponent", s, "strictly inside (-2/3, -1/2)", ok)


def test_c5_gaussian_monotone(report):
    s = [gaussian_slope(a) for a in (1.0, 10.0, 100.0)]
    ok = s[0] < s[1] < s[2]
    assert report("5", "Gaussian exponent monotone in alpha (1, 10, 100)", ", ".join(f"{v:.4f}" for v in s),
                  "strictly increasing", ok)


# 6 ---------------------------------------------------------------------------

def test_c6_delta_zonal_powerlaw(report):
    s = ig.info_series(sp.Delta(0.0, 1.0), kin.ZonalOnly(2.0), NU, np.geomspace(5.0, 20.0, 40))
    slope = sc.fit_tau_t_asymptote(s, (5.0, 20.0), "powerlaw").slope
    ok = abs(slope + 1) <= 0.05
    assert report("6a", "tau(t) late log-log slope, delta/zonal", slope, "-1 +/- 0.05", ok)


def test_c6_constant_zonal_powerlaw(report):
    s = ig.info_series(sp.Constant(), kin.ZonalOnly(2.0), NU, np.geomspace(20.0, 60.0, 40))
    slope = sc.fit_tau_t_asymptote(s, (20.0, 60.0), "powerlaw").slope
    ok = abs(slope - 1) <= 0.05
    assert report("6b", "tau(t) late log-log slope, constant/zonal", slope, "+1 +/- 0.05", ok)


def test_c6_delta_hyperbolic_exponential(report):
    w = 2.0
    s = ig.info_series(sp.Delta(0.0, 1.0), kin.Hyperbolic(w, w), NU, np.linspace(1.0, 3.0, 41))
    rate = sc.fit_tau_t_asymptote(s, (1.0, 3.0), "exponential").slope
    ok = abs(rate + w) <= 0.05 * w
    assert report("6c", "ln tau(t) rate, delta/hyperbolic W=2", rate, "-W +/- 5%", ok)


def test_c6_constant_hyperbolic_plateau(report):
    products, devs = [], []
    for w in (1.0, 2.0, 4.0):
        s = ig.info_series(sp.Constant(), kin.Hyperbolic(w, w), NU, np.linspace(3 / w, 6 / w, 31))
        p = sc.fit_tau_t_asymptote(s, (3 / w, 6 / w), "plateau")
        devs.append(p.max_rel_dev)
        products.append(w * p.mean)
    spread = max(products) / min(products) - 1
    ok1 = max(devs) <= 0.01
    ok2 = spread <= 0.02
    report("6d", "tau(t) plateau variation over [3/W, 6/W], W in 1,2,4", max(devs), "<= 1%", ok1)
    report("6d", f"W * plateau constant across W (value {np.mean(products):.5f})", spread, "<= 2%", ok2)
    assert ok1 and ok2


# 7 ---------------------------------------------------------------------------

def test_c7_geodesic(report):
    ts = np.linspace(0.1, 6.0, 60)
    s = ig.info_series(sp.Delta(0.0, 1.0), kin.ZonalOnly(0.0), NU, ts)
    dev = float(np.max(np.abs(s.tau / s.tau[0] - 1)))
    r2 = fit_line(ts, s.L).r_squared
    ok1 = dev <= 1e-10
    ok2 = r2 >= 1 - 1e-12
    report("7", "tau(t) constant without shear, delta spectrum", dev, "<= 1e-10", ok1)
    report("7", "information length linear in t, r^2", r2, ">= 1 - 1e-12", ok2)
    assert ok1 and ok2


# 8 ---------------------------------------------------------------------------

@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_c8_kl_limit(report, t):
    m, f = sp.Delta(0.0, 1.0), kin.ZonalOnly(2.0)
    grid = gp.default_grid(gp.gaussian_pdf_at(m, f, NU, t))
    traj = lambda s: gp.to_grid(gp.gaussian_pdf_at(m, f, NU, s), grid)
    r1 = ig.kl_limit_check(traj, t, 1e-3)
    r2 = ig.kl_limit_check(traj, t, 5e-4)
    # halving ratio of an exactly second-order residual is 4 up to rounding; 1% slack
    ok1, ok2 = r1 <= 1e-3, r1 / r2 >= 4 * 0.99
    report("8", f"KL curvature vs E at t={t}, dt=1e-3", r1, "<= 1e-3", ok1)
    report("8", f"residual reduction when dt halves, t={t}", r1 / r2, ">= 4 (1% rounding slack)", ok2)
    assert ok1 and ok2


# 9 ---------------------------------------------------------------------------

def test_c9_field_vs_fourier(report):
    fld = ng.InhomogeneousField(2.0, 2.0, NU)
    worst = 0.0
    for t in (0.0, 0.5, 1.0):
        for x in np.linspace(-1.0, 1.0, 5):
            for y in np.linspace(-1.0, 1.0, 5):
                worst = max(worst, abs(ng.vorticity_field(fld, t, x, y) - ng.vorticity_field_oracle(fld, t, x, y)))
    assert report("9a", "strained patch vs inverse-Fourier quadrature, 5x5x3", worst, "<= 1e-6", worst <= 1e-6)


def test_c9_initial_patch(report):
    fld = ng.InhomogeneousField(2.0, 2.0, NU)
    xs = np.linspace(-3, 3, 13)
    X, Y = np.meshgrid(xs, xs)
    err = float(np.max(np.abs(ng.vorticity_field(fld, 0.0, X, Y) - np.exp(-fld.alpha * (X**2 + Y**2) / 4))))
    assert report("9b", "t=0 field equals exp(-alpha r^2/4)", err, "<= 1e-12", err <= 1e-12)


def test_c9_inviscid_anisotropy(report):
    fld = ng.InhomogeneousField(2.0, 2.0, 0.0)
    worst = 0.0
    for t in (0.25, 0.5, 1.0):
        c0 = ng.vorticity_field(fld, t, 0.0, 0.0)
        along_z1 = -math.log(ng.vorticity_field(fld, t, 0.25, 0.25) / c0)   # z1 = 0.5, z2 = 0
        along_z2 = -math.log(ng.vorticity_field(fld, t, -0.25, 0.25) / c0)  # z1 = 0, z2 = 0.5
        worst = max(worst, abs(math.sqrt(along_z1 / along_z2) / math.exp(2 * fld.omega * t) - 1))
    assert report("9c", "inviscid width ratio / e^{2Wt} - 1", worst, "<= 1e-10", worst <= 1e-10)


# 10 --------------------------------------------------------------------------

def _bin_average(density, edges, sub=200):
    out = np.empty(len(edges) - 1)
    for i in range(len(out)):
        w = np.linspace(edges[i], edges[i + 1], sub + 1)
        out[i] = np.trapezoid(density(w), w) / (edges[i + 1] - edges[i])
    return out


def _mc_supnorm(ens, amap, density, edges):
    h = ng.pdf_mc_oracle(ens, amap, 1_000_000, 20240601, edges)
    exact = _bin_average(density, edges)
    n = len(exact)
    lo, hi = int(round(0.1 * n)), int(round(0.9 * n))
    return float(np.max(np.abs(h.density[lo:hi] / exact[lo:hi] - 1))), h


def test_c10_initial_pdf(report):
    ens = ng.AlphaEnsemble(0.0, 40.0)
    edges = np.geomspace(math.exp(-10.0), 1.0, 51)
    sup, _ = _mc_supnorm(ens, lambda a: np.exp(-a / 4), lambda w: ng.pdf_initial(w, 1.0, ens), edges)
    assert report("10", "Monte Carlo vs initial-patch PDF, interior 80%", sup, "<= 5%", sup <= 0.05)


def test_c10_weak_pdf(report):
    x, y, t, w = 1.0, 0.0, 1.0, 2.0
    ens = ng.AlphaEnsemble(0.0, ng.weak_alpha_max(t, w, NU))
    amap = ng.weak_map(x, y, t, w)
    edges = np.geomspace(float(amap(np.array(ens.hi))), 1.0, 51)
    sup, _ = _mc_supnorm(ens, amap, lambda v: ng.pdf_weak_inhomogeneity(v, x, y, t, w, NU), edges)
    assert report("10", "Monte Carlo vs weak-inhomogeneity PDF, interior 80%", sup, "<= 5%", sup <= 0.05)


def test_c10_strong_pdf(report):
    x, y, t, w, ac = 0.0, 0.0, 1.0, 2.0, 60.0
    ens = ng.AlphaEnsemble(2 * w / NU, ac)
    amap = ng.strong_map(x, y, t, w, NU)
    e = ng.strong_level(x, y, t, w, NU)
    edges = np.linspace(2 * w / NU * e / ac, e, 51)
    sup, h = _mc_supnorm(ens, amap, lambda v: ng.pdf_strong_inhomogeneity(v, x, y, t, w, NU, ac), edges)
    slope = fit_loglog_slope(zip(h.centers, h.density)).slope
    ok1, ok2 = sup <= 0.05, abs(slope + 2) <= 0.05
    report("10", "Monte Carlo vs strong-inhomogeneity PDF, interior 80%", sup, "<= 5%", ok1)
    report("10", "strong-regime log-log slope of the MC histogram", slope, "-2 +/- 0.05", ok2)
    assert ok1 and ok2


# 11 --------------------------------------------------------------------------

def test_c11_incompressible(report):
    worst = 0.0
    for k0, v0 in [((0.5, 1.0, -1.0), (1.0, 0.5, 1.0)), ((0.0, 1.0, 1.0), (1.0, 0.0, 0.0)),
                   ((-2.0, 1.0, 0.5), (0.5, 1.0, 0.0))]:
        k = s3.WaveVector3(*k0)
        kv = np.array(k0)
        v = np.array(v0) - kv * (np.array(v0) @ kv) / (kv @ kv)
        traj = s3.velocity_trajectory(k, s3.VelocityModes(*v), 2.0, 0.05, np.linspace(0.1, 20.0, 50))
        worst = max(worst, max(r for *_, r in traj))
    assert report("11", "3D divergence residual |k.v|/(|k||v|)", worst, "<= 1e-8", worst <= 1e-8)


def test_c11_vx_exponent(report):
    slope = s3.vx_decay_exponent(s3.WaveVector3(0.0, 1.0, 1.0), s3.VelocityModes(1.0, 0.0, 0.0), 2.0, 0.0,
                                 (5.0, 50.0)).slope
    assert report("11", "vx log-log decay exponent, t in [5, 50], nu=0", slope, "-2 +/- 0.05", abs(slope + 2) <= 0.05)


def test_c11_no_shear(report):
    k0 = s3.WaveVector3(1.0, 2.0, -1.0)
    v0 = s3.VelocityModes(1.0, 0.0, 1.0)
    worst = 0.0
    for t in (0.5, 1.0, 2.0, 4.0):
        v = s3.evolve_velocity_3d(k0, v0, 0.0, NU, t)
        worst = max(worst, float(np.max(np.abs(v.as_array() - v0.as_array() * math.exp(-NU * k0.norm_sq * t)))))
    assert report("11", "W=0 reduces to exp(-nu|k|^2 t)", worst, "<= 1e-8", worst <= 1e-8)


# 12 --------------------------------------------------------------------------

def _cli_table(tmp_path, args, name="out.csv"):
    out = tmp_path / name
    assert cli.main(list(args) + ["--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    return lines[0].split(","), np.array([[float(v) for v in l.split(",")] for l in lines[1:]])


FIGURE_PDFS = {
    "1a": (sp.Delta(0.0, 1.0), kin.ZonalOnly(2.0), 0.6),
    "1b": (sp.Delta(0.0, 1.0), kin.ZonalOnly(0.0), 0.6),
    "1c": (sp.GaussianIso(100.0), kin.ZonalOnly(2.0), 0.6),
    "1d": (sp.GaussianIso(100.0), kin.ZonalOnly(0.0), 0.6),
    "3a": (sp.Delta(0.0, 1.0), kin.Hyperbolic(2.0, 2.0), 0.2),
    "3c": (sp.GaussianIso(100.0), kin.Hyperbolic(2.0, 2.0), 0.2),
}


@pytest.mark.parametrize("panel", list(FIGURE_PDFS))
def test_c12_pdf_series(report, panel):
    model, flow, step = FIGURE_PDFS[panel]
    series = gp.pdf_series(model, flow, NU, step * np.arange(11))
    mass_err = max(abs(g.mass() - 1) for _, g in series)
    peaks = np.array([g.density.max() for _, g in series])
    ok1 = mass_err <= 1e-9
    report("12", f"figure {panel} PDFs: max |mass - 1|", mass_err, "<= 1e-9", ok1)
    ok2 = True
    if flow.omega_z > 0:
        ok2 = bool(np.all(np.diff(peaks) > 0))
        report("12", f"figure {panel} peak density strictly increasing in t", "yes" if ok2 else "no", "yes", ok2)
    assert ok1 and ok2


def test_c12_pdf_cli_matches_library(report, tmp_path):
    _, arr = _cli_table(tmp_path, ["pdf", "--model", "delta", "--flow", "zonal", "--omega-z", "2",
                                   "--times", "0.6,1.2"])
    worst = 0.0
    for t in (0.6, 1.2):
        sel = arr[arr[:, 0] == t]
        p = gp.gaussian_pdf_at(sp.Delta(0.0, 1.0), kin.ZonalOnly(2.0), NU, t)
        worst = max(worst, float(np.max(np.abs(sel[:, 2] - gp.pdf_density(p, sel[:, 1])) / sel[:, 2].max())))
    assert report("12", "figure PDF CSV from the CLI vs library density", worst, "<= 1e-8 (9-digit CSV)",
                  worst <= 1e-8)


def test_c12_figure2_centroid_drift(report, tmp_path):
    _, arr = _cli_table(tmp_path, ["spectrum", "--model", "gaussian", "--alpha", "4", "--flow", "zonal",
                                   "--omega-z", "2", "--nu", "0", "--k-grid", "-40,40,321", "--times", "0,1,2,3"])
    worst = 0.0
    for t in (0.0, 1.0, 2.0, 3.0):
        for ky in (-2.0, -1.0, 1.0, 2.0):
            sel = arr[(arr[:, 2] == t) & (np.abs(arr[:, 1] - ky) < 1e-9)]
            centroid = np.sum(sel[:, 0] * sel[:, 3]) / np.sum(sel[:, 3])
            worst = max(worst, abs(centroid - 2.0 * ky * t))
    assert report("12", "figure 2 kx centroid drift minus W_z ky t, nu=0", worst, "<= 1e-8", worst <= 1e-8)


def test_c12_figure4_principal_direction(report, tmp_path):
    _, arr = _cli_table(tmp_path, ["spectrum", "--model", "constant", "--flow", "hyperbolic", "--omega-z", "2",
                                   "--k-grid", "-4,4,81", "--times", "0.5,1"])
    bad = 0
    for t in (0.5, 1.0):
        sel = arr[arr[:, 2] == t]
        r = np.hypot(sel[:, 0], sel[:, 1])
        diag = sel[(np.abs(sel[:, 0] - sel[:, 1]) < 1e-9) & (r > 0)]
        for kx, ky, _, psi in diag:
            # the circle through a diagonal point, and every larger one, stays below it
            outside = sel[np.hypot(sel[:, 0], sel[:, 1]) >= math.hypot(kx, ky) - 1e-12]
            bad += int(outside[:, 3].max() > psi * (1 + 1e-12))
    assert report("12", "figure 4 circle maxima on kx=ky, violations", bad, "== 0", bad == 0)


def test_c12_figure5_sheet(report, tmp_path):
    _, arr = _cli_table(tmp_path, ["field", "--xy-grid", "-6,6,121", "--times", "0.25,0.5,1"])
    worst = 0.0
    for t in (0.25, 0.5, 1.0):
        sel = arr[arr[:, 0] == t]
        w = sel[:, 3] / sel[:, 3].sum()
        x, y = sel[:, 1], sel[:, 2]
        cov = np.array([[np.sum(w * x * x), np.sum(w * x * y)], [np.sum(w * x * y), np.sum(w * y * y)]])
        lam, vec = np.linalg.eigh(cov)
        major = vec[:, 1]
        # sheet lies along z1 = x + y = 0, i.e. direction (1, -1)/sqrt(2)
        worst = max(worst, 1 - abs(major @ np.array([1.0, -1.0]) / math.sqrt(2)))
    assert report("12", "figure 5 major axis along z1=0, 1-|cos|", worst, "<= 1e-9", worst <= 1e-9)


# 13 --------------------------------------------------------------------------

def test_c13_verify_deterministic(report):
    cmd = [sys.executable, "-m", "shearpdf.cli", "verify"]
    a = subprocess.run(cmd, capture_output=True, cwd=ROOT)
    b = subprocess.run(cmd, capture_output=True, cwd=ROOT)
    ok = a.returncode == 0 and b.returncode == 0 and a.stdout == b.stdout and a.stdout.endswith(b"checks)\n")
    assert report("13", "verify twice: exit codes and byte-identical reports",
                  f"exit {a.returncode}/{b.returncode}, identical={a.stdout == b.stdout}", "exit 0, identical", ok)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
