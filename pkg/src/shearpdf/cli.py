"""Command-line front end: ``shearpdf <subcommand> [options]``.

Every subcommand writes one table (CSV by default) to ``--out`` or stdout.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from . import gauss_pdf, infogeo, kinematics, nongauss, scaling, shear3d, spectra
from .config import ConfigError, RunConfig, load_config
from .numerics import RealGrid1D
from .output import emit_table


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _grid(text: str) -> list:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start,stop,count, got {text!r}")
    try:
        return [float(parts[0]), float(parts[1]), int(parts[2])]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start,stop,count, got {text!r}") from None


def pmap(fn: Callable, items: Iterable, jobs: int) -> list:
    """Ordered parallel map; results follow the input order."""
    items = list(items)
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# --- subcommands -----------------------------------------------------------

def cmd_kpath(cfg: RunConfig, args) -> tuple[list, list]:
    k0 = args.k0
    ts = np.linspace(0.0, args.t_max, args.t_steps + 1)
    rows = []
    for t in ts:
        kx, ky = kinematics.wavevector_at(cfg.flow, k0, t)
        rows.append([t, kx, ky, float(kinematics.phase_integral(cfg.flow, k0, t))])
    return ["t", "kx", "ky", "q"], rows


def cmd_spectrum(cfg: RunConfig, args):
    if isinstance(cfg.model, spectra.Delta):
        raise ConfigError("model: the delta spectrum has no pointwise density; use kpath for its peak")
    k = RealGrid1D(*args.k_grid).points()
    KX, KY = np.meshgrid(k, k, indexing="ij")

    def one(t):
        return spectra.spectrum_on_grid(cfg.model, cfg.flow, cfg.nu, KX, KY, t)

    rows = []
    for t, psi in zip(args.times, pmap(one, args.times, args.jobs)):
        for kx, ky, p in zip(KX.ravel(), KY.ravel(), psi.ravel()):
            rows.append([kx, ky, t, p])
    return ["kx", "ky", "t", "psi"], rows


def _usable_times(cfg: RunConfig, ts):
    if isinstance(cfg.model, (spectra.Constant, spectra.AnisoConstant)):
        return [t for t in ts if t > 0]
    return list(ts)


def cmd_msv(cfg: RunConfig, args):
    ts = _usable_times(cfg, cfg.t_grid.points())

    def one(t):
        row = [t, spectra.mean_square_vorticity(cfg.model, cfg.flow, cfg.nu, t)]
        if args.oracle:
            row.append(spectra.mean_square_vorticity_oracle(cfg.model, cfg.flow, cfg.nu, t))
        return row

    cols = ["t", "msv"] + (["oracle"] if args.oracle else [])
    return cols, pmap(one, ts, args.jobs)


def cmd_pdf(cfg: RunConfig, args):
    ts = args.times if args.times is not None else list(cfg.t_grid.points())
    ts = _usable_times(cfg, ts)
    rows = []
    for t, g in gauss_pdf.pdf_series(cfg.model, cfg.flow, cfg.nu, ts, cfg.omega_grid):
        w = g.omega
        if args.fluctuation:
            mean = cfg.flow.mean_vorticity(t)
            w = (g.grid.start - mean) + g.grid.spacing * np.arange(g.grid.count)
        rows += [[t, x, p] for x, p in zip(w, g.density)]
    return ["t", "omega", "density"], rows


def cmd_field(cfg: RunConfig, args):
    field = nongauss.InhomogeneousField(args.alpha, args.strain, cfg.nu)
    xs = RealGrid1D(*args.xy_grid).points()
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    rows = []
    for t in args.times:
        w = nongauss.vorticity_field(field, t, X, Y)
        rows += [[t, x, y, v] for x, y, v in zip(X.ravel(), Y.ravel(), w.ravel())]
    return ["t", "x", "y", "omega"], rows


def cmd_nongauss_pdf(cfg: RunConfig, args):
    x, y, t, w, nu = args.x, args.y, args.t, args.strain, cfg.nu
    if args.regime == "weak":
        amax = args.alpha_max if args.alpha_max is not None else nongauss.weak_alpha_max(t, w, nu)
        ens = nongauss.AlphaEnsemble(0.0, amax)
        amap = nongauss.weak_map(x, y, t, w)
    else:
        amax = args.alpha_max if args.alpha_max is not None else 1.5 * 2 * w / nu
        ens = nongauss.AlphaEnsemble(2 * w / nu, amax)
        amap = nongauss.strong_map(x, y, t, w, nu)
    h = nongauss.pdf_mc_oracle(ens, amap, args.samples, cfg.seed, args.bins)
    return ["omega_bin_center", "density"], [[c, d] for c, d in zip(h.centers, h.density)]


def cmd_info(cfg: RunConfig, args):
    ts = _usable_times(cfg, cfg.t_grid.points())
    if args.grid_based:
        s = infogeo.info_series_grid(cfg.model, cfg.flow, cfg.nu, ts, cfg.omega_grid)
    else:
        s = infogeo.info_series(cfg.model, cfg.flow, cfg.nu, ts)
    return ["t", "E", "tau", "L"], [list(r) for r in zip(s.ts, s.E, s.tau, s.L)]


def cmd_taue(cfg: RunConfig, args):
    names = scaling.TABLE_PAIRS if args.pair == "all" else (args.pair,)
    omegas = args.omega_list if args.omega_list is not None else scaling.default_omegas()
    alpha = cfg.raw["alpha"]
    scans = [scaling.scan_tau_e(scaling.pair_by_name(n, alpha, cfg.raw["phi"]), cfg.nu, omegas,
                                args.threshold, args.jobs) for n in names]
    return scaling.TABLE_COLUMNS, scaling.table_rows(scans)


def _default_v0(k):
    k = np.asarray(k, dtype=float)
    e = np.array([1.0, 0.0, 0.0])
    v = e - k * (e @ k) / (k @ k)
    if np.allclose(v, 0):
        e = np.array([0.0, 1.0, 0.0])
        v = e - k * (e @ k) / (k @ k)
    return v


def cmd_v3d(cfg: RunConfig, args):
    k0 = shear3d.WaveVector3(*args.k0)
    v0 = shear3d.VelocityModes(*(args.v0 if args.v0 is not None else _default_v0(args.k0)))
    traj = shear3d.velocity_trajectory(k0, v0, args.strain, cfg.nu, cfg.t_grid.points())
    rows = [[t, abs(v.vx), abs(v.vy), abs(v.vz), r] for t, v, r in traj]
    return ["t", "abs_vx", "abs_vy", "abs_vz", "div_residual"], rows


# --- parser ----------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", default=d, help="JSON configuration file")
    p.add_argument("--out", default=d, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=d)
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS if suppress else 1)
    p.add_argument("--seed", type=int, default=d)


def _physics_flags(p):
    p.add_argument("--flow", choices=("zonal", "hyperbolic", "elliptic", "decaying"))
    p.add_argument("--omega-z", type=float)
    p.add_argument("--omega-s", type=float)
    p.add_argument("--tau0", type=float)
    p.add_argument("--model", choices=("delta", "constant", "gaussian", "aniso"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--phi", type=float)
    p.add_argument("--a", type=float, help="initial kx of the delta spectrum")
    p.add_argument("--b", type=float, help="initial ky of the delta spectrum")
    p.add_argument("--nu", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shearpdf", description=__doc__.splitlines()[0])
    _global_flags(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_, physics=True):
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        if physics:
            _physics_flags(p)
        return p

    p = add("kpath", "wavevector path and phase integral")
    p.add_argument("--k0", type=_floats, default=[0.0, 1.0])
    p.add_argument("--t-max", type=float, default=6.0)
    p.add_argument("--t-steps", type=int, default=60)

    p = add("spectrum", "evolved spectrum on a k grid")
    p.add_argument("--k-grid", type=_grid, default=[-40.0, 40.0, 161])
    p.add_argument("--times", type=_floats, default=[0.0, 1.0, 2.0, 3.0])

    p = add("msv", "mean-square vorticity over the time grid")
    p.add_argument("--t-grid", type=_grid)
    p.add_argument("--oracle", action="store_true", help="add the quadrature value")

    p = add("pdf", "Gaussian vorticity PDFs")
    p.add_argument("--times", type=_floats)
    p.add_argument("--omega-grid", type=_grid)
    p.add_argument("--fluctuation", action="store_true", help="emit omega minus the mean")

    p = add("field", "decaying strained vortex patch", physics=False)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--omega", dest="strain", type=float, default=2.0)
    p.add_argument("--nu", type=float)
    p.add_argument("--xy-grid", type=_grid, default=[-3.0, 3.0, 61])
    p.add_argument("--times", type=_floats, default=[0.0, 0.5, 1.0, 1.5])

    p = add("nongauss-pdf", "Monte-Carlo PDF of the patch value over random sizes", physics=False)
    p.add_argument("--regime", choices=("weak", "strong"), default="weak")
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--omega", dest="strain", type=float, default=2.0)
    p.add_argument("--nu", type=float)
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--bins", type=int, default=50)

    p = add("info", "information rate, dynamical time, information length")
    p.add_argument("--t-grid", type=_grid)
    p.add_argument("--grid-based", action="store_true")

    p = add("taue", "effective dissipation time scans")
    p.add_argument("--pair", choices=("all",) + scaling.TABLE_PAIRS + ("gaussian-zonal",), default="all")
    p.add_argument("--omega-list", type=_floats)
    p.add_argument("--threshold", type=float, default=math.exp(-1))

    p = add("v3d", "3D velocity mode in uniform shear", physics=False)
    p.add_argument("--k0", type=_floats, default=[0.0, 1.0, 1.0])
    p.add_argument("--v0", type=_floats)
    p.add_argument("--omega", dest="strain", type=float, default=2.0)
    p.add_argument("--nu", type=float)
    p.add_argument("--t-grid", type=_grid)

    p = add("verify", "run the oracle and invariant checks", physics=False)
    p.add_argument("--module", help="restrict to one module")
    return ap


COMMANDS = {
    "kpath": cmd_kpath, "spectrum": cmd_spectrum, "msv": cmd_msv, "pdf": cmd_pdf,
    "field": cmd_field, "nongauss-pdf": cmd_nongauss_pdf, "info": cmd_info,
    "taue": cmd_taue, "v3d": cmd_v3d,
}

_OVERRIDE_KEYS = ("flow", "omega_z", "omega_s", "tau0", "model", "alpha", "phi", "a", "b", "nu",
                  "t_grid", "omega_grid", "seed", "format")


def _overrides(args) -> dict:
    out = {k: getattr(args, k, None) for k in _OVERRIDE_KEYS}
    out["output"] = getattr(args, "out", None)
    return out


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--opt -2,2,3`` as ``--opt=-2,2,3`` so list values may start with a minus."""
    out: list[str] = []
    for tok in argv:
        if (out and out[-1].startswith("--") and "=" not in out[-1]
                and len(tok) > 1 and tok[0] == "-" and (tok[1].isdigit() or tok[1] == ".")):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(_attach_negative_values(sys.argv[1:] if argv is None else list(argv)))
    if args.command == "verify":
        from .verify import run_checks

        report, ok = run_checks(args.module)
        _write(report.encode(), getattr(args, "out", None))
        return 0 if ok else 1
    try:
        cfg = load_config(args.config, _overrides(args))
        if hasattr(args, "k0") and args.command == "kpath" and len(args.k0) != 2:
            raise ConfigError("k0: expected kx,ky")
        if args.command == "v3d" and len(args.k0) != 3:
            raise ConfigError("k0: expected kx,ky,kz")
        columns, rows = COMMANDS[args.command](cfg, args)
    except (ConfigError, ValueError, ArithmeticError) as e:
        print(f"shearpdf {args.command}: {e}", file=sys.stderr)
        return 2
    _write(emit_table(rows, columns, cfg.format), cfg.output_path)
    return 0


def _write(data: bytes, path):
    if path:
        with open(path, "wb") as f:
            f.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


if __name__ == "__main__":
    sys.exit(main())
