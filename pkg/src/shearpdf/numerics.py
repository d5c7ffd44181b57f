"""Small numerical building blocks used as oracles for the closed forms.

Everything here is a pure function of its arguments. Nothing is adaptive:
fixed-step RK4 and fixed composite Simpson keep results bit-reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


class NumericalError(ArithmeticError):
    """Raised when an oracle meets a non-finite value or a bad argument."""


@dataclass(frozen=True)
class RealGrid1D:
    """Uniform grid ``start, start + h, ..., stop`` with ``count`` points."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"grid count must be an integer >= 2, got {self.count}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid bounds must be finite")
        if not self.stop > self.start:
            raise ValueError(f"grid stop ({self.stop}) must exceed start ({self.start})")

    @property
    def spacing(self) -> float:
        return (self.stop - self.start) / (self.count - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.count))


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    stderr_slope: float


def rk4_path(rhs: Callable, y0, t0: float, t1: float, steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Classical RK4 from ``t0`` to ``t1`` returning every intermediate state.

    ``rhs(t, y)`` must return an array shaped like ``y``. Complex states are
    fine. Returns ``(ts, ys)`` with ``ys.shape == (steps + 1,) + y0.shape``.
    """
    if int(steps) != steps or steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps}")
    steps = int(steps)
    y = np.array(y0, dtype=np.result_type(np.asarray(y0).dtype, float), copy=True)
    h = (t1 - t0) / steps
    ts = t0 + h * np.arange(steps + 1)
    ts[-1] = t1
    ys = np.empty((steps + 1,) + y.shape, dtype=y.dtype)
    ys[0] = y
    for i in range(steps):
        t = ts[i]
        k1 = np.asarray(rhs(t, y))
        k2 = np.asarray(rhs(t + 0.5 * h, y + 0.5 * h * k1))
        k3 = np.asarray(rhs(t + 0.5 * h, y + 0.5 * h * k2))
        k4 = np.asarray(rhs(t + h, y + h * k3))
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise NumericalError(f"non-finite RK4 state at step {i + 1} (t={t + h!r})")
        ys[i + 1] = y
    return ts, ys


def rk4_integrate(rhs: Callable, y0, t0: float, t1: float, steps: int) -> np.ndarray:
    """Final state of a fixed-step classical RK4 integration."""
    return rk4_path(rhs, y0, t0, t1, steps)[1][-1]


def simpson_weights(n_cells: int, h: float) -> np.ndarray:
    if n_cells % 2:
        raise ValueError("composite Simpson needs an even number of cells")
    w = np.ones(n_cells + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def simpson1d(f: Callable, half_width: float, cells: int, center: float = 0.0) -> float:
    """Composite Simpson on ``[center - half_width, center + half_width]``."""
    cells = cells + (cells % 2)
    x = center + np.linspace(-half_width, half_width, cells + 1)
    y = np.asarray(f(x), dtype=float)
    bad = ~np.isfinite(y)
    if bad.any():
        raise NumericalError(f"non-finite integrand at x={x[bad][0]!r}")
    return float(simpson_weights(cells, 2.0 * half_width / cells) @ y)


def quad2d(f: Callable, half_width: float, cells_per_axis: int) -> float:
    """Composite Simpson over the square ``[-half_width, half_width]^2``.

    ``f(x, y)`` is called once on broadcast meshgrid arrays. An odd cell count
    is bumped to the next even one.
    """
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    n = int(cells_per_axis)
    if n < 2:
        raise ValueError("need at least 2 cells per axis")
    n += n % 2
    x = np.linspace(-half_width, half_width, n + 1)
    X, Y = np.meshgrid(x, x, indexing="ij")
    vals = np.asarray(f(X, Y), dtype=float)
    vals = np.broadcast_to(vals, X.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NumericalError(f"non-finite integrand at ({X[i, j]!r}, {Y[i, j]!r})")
    w = simpson_weights(n, 2.0 * half_width / n)
    return float(w @ vals @ w)


def default_step(t: float) -> float:
    return 1e-5 * max(1.0, abs(t))


def central_diff(f: Callable[[float], float], t: float, h: float | None = None) -> float:
    """Second-order centred difference ``(f(t+h) - f(t-h)) / 2h``."""
    if h is None:
        h = default_step(t)
    if not h > 0:
        raise ValueError("step h must be positive")
    fp, fm = f(t + h), f(t - h)
    if not (math.isfinite(fp) and math.isfinite(fm)):
        raise NumericalError(f"non-finite sample in central difference at t={t!r}, h={h!r}")
    if fp == fm:
        return 0.0
    return (fp - fm) / (2.0 * h)


def cumtrapz(ts: Sequence[float], ys: Sequence[float]) -> np.ndarray:
    """Cumulative trapezoid integral, starting at 0."""
    ts = np.asarray(ts, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if ts.shape != ys.shape:
        raise ValueError(f"length mismatch: {ts.shape[0]} times vs {ys.shape[0]} values")
    if ts.ndim != 1:
        raise ValueError("cumtrapz expects 1-D sequences")
    out = np.zeros_like(ys)
    if ts.size > 1:
        if np.any(np.diff(ts) <= 0):
            raise ValueError("ts must be strictly increasing")
        out[1:] = np.cumsum(0.5 * np.diff(ts) * (ys[1:] + ys[:-1]))
    return out


def trapezoid(ys, dx: float) -> float:
    ys = np.asarray(ys, dtype=float)
    return float(dx * (ys.sum() - 0.5 * (ys[0] + ys[-1])))


def fit_line(xs, ys) -> FitResult:
    """Ordinary least squares ``y = slope * x + intercept``."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    n = x.size
    if n < 3:
        raise ValueError("need at least 3 points for a fit")
    xm, ym = x.mean(), y.mean()
    sxx = np.sum((x - xm) ** 2)
    if sxx == 0:
        raise ValueError("abscissae are all equal")
    slope = np.sum((x - xm) * (y - ym)) / sxx
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - ym) ** 2))
    if ss_tot == 0.0 or ss_res <= 1e-30 * max(ss_tot, 1.0):
        r2 = 1.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    stderr = math.sqrt(ss_res / (n - 2) / sxx)
    return FitResult(float(slope), float(intercept), r2, stderr)


def fit_loglog_slope(points) -> FitResult:
    """Least-squares line through ``(ln x, ln y)``."""
    pts = [tuple(map(float, p)) for p in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points for a log-log fit")
    for p in pts:
        if not (p[0] > 0 and p[1] > 0):
            raise ValueError(f"log-log fit needs positive coordinates, got point {p}")
    x, y = np.array(pts).T
    return fit_line(np.log(x), np.log(y))


def bisect_root(f: Callable[[float], float], lo: float, hi: float, rtol: float = 1e-12) -> float:
    """Bisection on a bracket where ``f(lo) > 0 >= f(hi)`` (or the reverse)."""
    flo = f(lo)
    sign = 1.0 if flo > 0 else -1.0
    if sign * f(hi) > 0:
        raise ValueError("root is not bracketed")
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if sign * f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * abs(hi):
            break
    return 0.5 * (lo + hi)
