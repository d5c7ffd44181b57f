"""Tabulate shipped/reference ratios for every quoted closed form.

Writes CONSTANTS.md at the repository root (or the path given as argv[1]).
"""
from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

from shearpdf import gauss_pdf, infogeo, kinematics as kin, nongauss, reference as ref, spectra

NU = 0.1
TIMES = (0.1, 0.5, 1.0, 2.0, 3.0)


def ratios(fn):
    return np.array([fn(t) for t in TIMES])


def msv(model, flow):
    return lambda t: spectra.mean_square_vorticity(model, flow, NU, t)


def kl_coefficient(t=1.0, dt=1e-3):
    m, f = spectra.Delta(0.0, 1.0, 1.0), kin.ZonalOnly(2.0)
    grid = gauss_pdf.default_grid(gauss_pdf.gaussian_pdf_at(m, f, NU, t))
    p = lambda s: gauss_pdf.to_grid(gauss_pdf.gaussian_pdf_at(m, f, NU, s), grid)
    d = infogeo.kl_divergence(p(t + dt), p(t))
    e = infogeo.info_rate_grid(p(t - dt), p(t + dt), 2 * dt)
    return d / (e * dt * dt)


def field_exponent_ratio(t):
    fld = nongauss.InhomogeneousField(2.0, 2.0, NU)
    c, d = fld.widths(t)
    pref = 1 / (2 * fld.alpha * math.sqrt(c * d))
    shipped = -math.log(nongauss.vorticity_field(fld, t, 1.0, 0.0) / pref)
    e = math.exp(4.0 * t)
    quoted = e / (8 * c) + 1 / (8 * d * e)
    return quoted / shipped


ROWS = [
    ("mean-square vorticity, constant spectrum, zonal shear (W=2)",
     lambda t: msv(spectra.Constant(), kin.ZonalOnly(2.0))(t) / ref.msv_constant_zonal(NU, 2.0, t)),
    ("mean-square vorticity, constant spectrum, symmetric strain (W=2)",
     lambda t: msv(spectra.Constant(), kin.Hyperbolic(2.0, 2.0))(t) / ref.msv_constant_hyperbolic(NU, 2.0, t)),
    ("mean-square vorticity, Gaussian spectrum alpha=100, zonal shear (W=2)",
     lambda t: msv(spectra.GaussianIso(100.0), kin.ZonalOnly(2.0))(t) / ref.msv_gaussian_zonal(NU, 2.0, t, 100.0)),
    ("mean-square vorticity, Gaussian spectrum alpha=100, symmetric strain (W=2)",
     lambda t: msv(spectra.GaussianIso(100.0), kin.Hyperbolic(2.0, 2.0))(t) / ref.msv_gaussian_hyperbolic(NU, 2.0, t, 100.0)),
    ("mean-square vorticity, spectrum constant in ky on kx0=0, zonal shear (W=2)",
     lambda t: msv(spectra.AnisoConstant(), kin.ZonalOnly(2.0))(t) / ref.msv_aniso_zonal(NU, 2.0, t)),
    ("sqrt(2E), single mode k0=(0,1), zonal shear (W=2)",
     lambda t: math.sqrt(2 * infogeo.info_series(spectra.Delta(0, 1), kin.ZonalOnly(2.0), NU, [t]).E[0])
     / ref.sqrt2e_delta_zonal(NU, 2.0, t, 0.0, 1.0)),
    ("sqrt(2E), single mode k0=(1,1), zonal shear (W=2)",
     lambda t: math.sqrt(2 * infogeo.info_series(spectra.Delta(1, 1), kin.ZonalOnly(2.0), NU, [t]).E[0])
     / ref.sqrt2e_delta_zonal(NU, 2.0, t, 1.0, 1.0)),
    ("E, constant spectrum, zonal shear (W=2)",
     lambda t: infogeo.info_series(spectra.Constant(), kin.ZonalOnly(2.0), NU, [t]).E[0] / ref.info_rate_constant_zonal(2.0, t)),
    ("tau, constant spectrum, symmetric strain (W=2)",
     lambda t: infogeo.info_series(spectra.Constant(), kin.Hyperbolic(2.0, 2.0), NU, [t]).tau[0] / ref.tau_constant_hyperbolic(2.0, t)),
    ("strained patch: quoted/shipped exponent at (x,y)=(1,0), alpha=2, W=2", field_exponent_ratio),
    ("phase integral, decaying zonal shear (W0=2, tau0=1), ky=1",
     lambda t: float(kin.phase_integral(kin.DecayingZonal(2.0, 1.0), (0.0, 1.0), t)) / ref.decaying_shear_q(2.0, 1.0, 1.0, t)),
]


def main(path: str | None = None) -> str:
    lines = [
        "# Normalisation constants",
        "",
        "Ratio of each quantity computed by this package (normalised by the quadrature",
        "and finite-difference oracles) to its reference closed form as commonly quoted.",
        "A ratio that is constant in t means only the prefactor differs. A ratio that",
        "varies means the quoted time dependence is not exact either.",
        f"Viscosity nu = {NU}. Regenerate with `python scripts/constants_table.py`.",
        "",
        "| quantity | " + " | ".join(f"t={t:g}" for t in TIMES) + " | max rel. variation | verdict |",
        "|---|" + "---|" * (len(TIMES) + 2),
    ]
    for name, fn in ROWS:
        r = ratios(fn)
        var = float(np.max(np.abs(r / r[-1] - 1)))
        verdict = "constant factor" if var <= 1e-6 else "time dependence differs"
        lines.append(f"| {name} | " + " | ".join(f"{v:.6g}" for v in r) + f" | {var:.2e} | {verdict} |")
    c = kl_coefficient()
    lines += [
        "",
        "| quantity | measured | quoted | ratio |",
        "|---|---|---|---|",
        f"| small-step KL coefficient of int (d_t p)^2/p dt^2 | {c:.6f} | {ref.kl_second_order_coefficient():g} | {c / ref.kl_second_order_coefficient():.6f} |",
        f"| denominator of C, D in the strained-patch exponent | 16 | {ref.field_exponent_denominator():g} | 2 |",
        "",
    ]
    text = "\n".join(lines)
    out = Path(path) if path else Path(__file__).resolve().parents[1] / "CONSTANTS.md"
    out.write_text(text)
    return text


if __name__ == "__main__":
    print(main(sys.argv[1] if len(sys.argv) > 1 else None))
