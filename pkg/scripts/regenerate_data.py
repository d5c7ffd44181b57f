"""Write the CSV data behind every figure and the tau_e table.

Usage: python scripts/regenerate_data.py [OUTDIR]   (default: ./data)

Each file is produced by the ``shearpdf`` CLI, so the same rows can be
reproduced one command at a time.
"""
from __future__ import annotations

import sys
from pathlib import Path

from shearpdf import cli

PDF_TIMES_SLOW = ",".join(f"{0.6 * n:g}" for n in range(11))
PDF_TIMES_FAST = ",".join(f"{0.2 * n:g}" for n in range(11))

JOBS = {
    "fig1a_delta_zonal_pdf.csv": ["pdf", "--model", "delta", "--flow", "zonal", "--omega-z", "2",
                                  "--times", PDF_TIMES_SLOW, "--fluctuation"],
    "fig1b_delta_noshear_pdf.csv": ["pdf", "--model", "delta", "--flow", "zonal", "--omega-z", "0",
                                    "--times", PDF_TIMES_SLOW, "--fluctuation"],
    "fig1c_gaussian_zonal_pdf.csv": ["pdf", "--model", "gaussian", "--alpha", "100", "--flow", "zonal",
                                     "--omega-z", "2", "--times", PDF_TIMES_SLOW, "--fluctuation"],
    "fig1d_gaussian_noshear_pdf.csv": ["pdf", "--model", "gaussian", "--alpha", "100", "--flow", "zonal",
                                       "--omega-z", "0", "--times", PDF_TIMES_SLOW, "--fluctuation"],
    "fig2_gaussian_zonal_spectrum.csv": ["spectrum", "--model", "gaussian", "--alpha", "4", "--flow", "zonal",
                                         "--omega-z", "2", "--k-grid", "-20,20,161", "--times", "0,1,2,3"],
    "fig3a_delta_hyperbolic_pdf.csv": ["pdf", "--model", "delta", "--flow", "hyperbolic", "--omega-z", "2",
                                       "--times", PDF_TIMES_FAST, "--fluctuation"],
    "fig3c_gaussian_hyperbolic_pdf.csv": ["pdf", "--model", "gaussian", "--alpha", "100", "--flow", "hyperbolic",
                                          "--omega-z", "2", "--times", PDF_TIMES_FAST, "--fluctuation"],
    "fig4_constant_hyperbolic_spectrum.csv": ["spectrum", "--model", "constant", "--flow", "hyperbolic",
                                              "--omega-z", "2", "--k-grid", "-4,4,81", "--times", "0.5,1"],
    "fig5_strained_patch.csv": ["field", "--alpha", "2", "--xy-grid", "-6,6,121", "--times", "0,0.25,0.5,1"],
    "tau_e_table.csv": ["taue", "--pair", "all"],
    "info_delta_zonal.csv": ["info", "--model", "delta", "--flow", "zonal", "--omega-z", "2"],
    "info_constant_hyperbolic.csv": ["info", "--model", "constant", "--flow", "hyperbolic", "--omega-z", "2"],
}


def main(outdir: str = "data") -> int:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, args in JOBS.items():
        code = cli.main(args + ["--out", str(out / name)])
        print(f"{'wrote' if code == 0 else 'FAILED'} {out / name}")
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:2]))
