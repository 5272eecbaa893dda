"""Picard fixed-point solver for systems dy = F(t, y, x) dx driven by
irregular paths.

Each sweep of the operator y -> y0 + integral of F(., y, x) dx is evaluated
with the staircase machinery, component by component: for the j-th driver the
integrand is F_ij with every argument except x_j frozen along the current
iterate.  Windows are accepted on sup-norm contraction and chained; failure
halves the window dyadically.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .diagnostics import existence_report, scaling_norm
from .dyadic import DyadicPath, holder_seminorm
from .errors import (
    BadInterval,
    MissingConstants,
    NonFiniteIterate,
    WindowUnderflow,
)
from .integrator import ConvergenceConfig, ScalarField, cumulative_increments
from .quadrature import QuadratureConfig


@dataclass(frozen=True)
class FieldComponent:
    """One entry F_ij of the system field.

    ``evaluate(t, y, x)`` is vectorized: t has shape (N,), y (m, N), x (d, N);
    the result has shape (N,).  ``depends_on_driver`` says whether F_ij reads
    its own integration variable x_j; when False the composed integrand is a
    pure function of time and needs no inner quadrature.  ``holder`` may carry
    declared constants {'t': ..., 'y': ..., 'x': ...} for the window bound
    report; 'y' should already be summed over solution components.
    """

    evaluate: callable
    depends_on_driver: bool = False
    holder: dict | None = None


class MatrixField:
    """m x d matrix of FieldComponents with convenience constructors."""

    def __init__(self, components: list[list[FieldComponent]]):
        self.m = len(components)
        self.d = len(components[0])
        for row in components:
            if len(row) != self.d:
                raise BadInterval("ragged component matrix")
        self.components = components

    @staticmethod
    def scalar(evaluate, depends_on_driver=False, holder=None) -> "MatrixField":
        return MatrixField([[FieldComponent(evaluate, depends_on_driver, holder)]])

    @staticmethod
    def linear_in_y() -> "MatrixField":
        """F(t, y, x) = y for m = d = 1 (theta = 1, unit y-constant)."""
        return MatrixField.scalar(
            lambda t, y, x: y[0], holder={"t": 0.0, "y": 1.0, "x": 0.0}
        )

    @staticmethod
    def constant(c: float) -> "MatrixField":
        return MatrixField.scalar(
            lambda t, y, x: np.full_like(np.asarray(t, dtype=float), c),
            holder={"t": 0.0, "y": 0.0, "x": 0.0},
        )


@dataclass(frozen=True)
class OdeProblem:
    """The driven system dy = F(t, y, x) dx, y(0) = y0 on [0, horizon]."""

    F: MatrixField
    drivers: list[DyadicPath]
    y0: np.ndarray
    beta: float
    theta: float = 1.0
    horizon: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "y0", np.atleast_1d(np.asarray(self.y0, dtype=float)))
        if len(self.drivers) != self.F.d or self.y0.size != self.F.m:
            raise BadInterval("dimension mismatch between F, drivers, and y0")
        if not 0.0 < self.beta <= 1.0:
            raise BadInterval("beta must lie in (0, 1]")
        if not 0.0 < self.horizon <= 1.0:
            raise BadInterval("horizon must lie in (0, 1]")


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-8
    grid_level: int | None = None     # default: driver resolution - 4
    min_window: float = 2.0 ** -8
    max_picard: int = 100
    contraction_window: int = 3
    gamma: float | None = None        # default: theta * beta / 2
    quad: QuadratureConfig = QuadratureConfig()
    check_drivers: bool = True


@dataclass(frozen=True, eq=False)
class OdeSolution:
    t: np.ndarray
    y: np.ndarray                      # shape (m, len(t))
    windows: list[dict]
    residual: float
    converged: bool

    def component(self, i: int = 0) -> np.ndarray:
        return self.y[i]


def _interp_rows(t_src: np.ndarray, rows: np.ndarray, t_dst: np.ndarray) -> np.ndarray:
    return np.vstack([np.interp(t_dst, t_src, row) for row in rows])


def picard_operator(
    problem: OdeProblem,
    y_current: np.ndarray,
    a: float,
    b: float,
    grid_level: int,
    y_start: np.ndarray | None = None,
    cfg: SolverConfig | None = None,
) -> np.ndarray:
    """One application of the fixed-point map on the window [a, b].

    ``y_current`` holds the iterate on the level grid of [a, b] (shape
    (m, n_grid)); the return value is y_start + the cumulative component
    integrals on the same grid.
    """
    cfg = cfg or SolverConfig()
    y_start = problem.y0 if y_start is None else np.asarray(y_start, dtype=float)
    n_grid = round((b - a) * (1 << grid_level)) + 1
    t_grid = a + np.arange(n_grid) * 2.0 ** -grid_level
    if y_current.shape != (problem.F.m, n_grid):
        raise BadInterval("iterate shape does not match the window grid")
    int_cfg = ConvergenceConfig(quad=cfg.quad)
    out = np.repeat(y_start[:, None], n_grid, axis=1)
    for j, driver in enumerate(problem.drivers):
        K = driver.resolution_level
        fine = min(K - 1, max(K - 2, grid_level + 1))
        t_fine = a + np.arange(round((b - a) * (1 << fine)) + 1) * 2.0 ** -fine
        y_fine = _interp_rows(t_grid, y_current, t_fine)
        x_fine = np.vstack([d.eval(t_fine) for d in problem.drivers])
        for i in range(problem.F.m):
            comp = problem.F.components[i][j]
            sf = _composed_field(comp, j, t_fine, y_fine, x_fine)
            inc = cumulative_increments(sf, driver, a, b, grid_level, int_cfg)
            out[i, 1:] += np.cumsum(inc)
    if not np.isfinite(out).all():
        raise NonFiniteIterate("Picard sweep produced non-finite values")
    return out


def _composed_field(comp: FieldComponent, j: int, t_fine, y_fine, x_fine) -> ScalarField:
    """Freeze every argument of F_ij except x_j along the current iterate."""
    t0 = t_fine[0]
    step_inv = (t_fine.size - 1) / (t_fine[-1] - t_fine[0])

    def phi_index(t):
        return np.clip(np.rint((np.asarray(t) - t0) * step_inv).astype(int), 0, t_fine.size - 1)

    if not comp.depends_on_driver:
        vals = np.asarray(comp.evaluate(t_fine, y_fine, x_fine), dtype=float)

        def f_t(t):
            return vals[phi_index(t)]

        return ScalarField.t_only(f_t)

    def f_tx(t, x):
        x = np.asarray(x, dtype=float)
        idx = phi_index(t)
        tt = np.broadcast_to(t_fine[idx], x.shape)
        yy = np.stack([np.broadcast_to(row[idx], x.shape) for row in y_fine])
        xx = np.stack(
            [
                x if q == j else np.broadcast_to(x_fine[q][idx], x.shape)
                for q in range(x_fine.shape[0])
            ]
        )
        return comp.evaluate(tt, yy, xx)

    return ScalarField(evaluate=f_tx, depends_on="both")


def solve(problem: OdeProblem, cfg: SolverConfig | None = None) -> OdeSolution:
    """Window-chained Picard iteration from the constant start y0.

    A window is accepted when the sup-norm change drops below tol with an
    estimated contraction ratio below one; otherwise the window is halved
    (dyadically) down to ``cfg.min_window``.  Accepted windows feed their
    endpoint to the next one.
    """
    cfg = cfg or SolverConfig()
    K = min(d.resolution_level for d in problem.drivers)
    L = cfg.grid_level if cfg.grid_level is not None else K - 4
    if L < 1 or L > K - 2:
        raise BadInterval(f"solver grid level {L} incompatible with driver resolution {K}")
    T = problem.horizon
    if round(T * (1 << L)) != T * (1 << L):
        raise BadInterval("horizon must sit on the solver grid")
    if cfg.check_drivers:
        probe = problem.theta * problem.beta
        for j, d in enumerate(problem.drivers):
            verdict = existence_report(d.pyramid(), probe).verdict
            if verdict != "converging":
                warnings.warn(
                    f"driver {j}: existence diagnostic at exponent {probe:.3f} is "
                    f"{verdict}; solving best-effort",
                    stacklevel=2,
                )
    t_all = np.linspace(0.0, T, round(T * (1 << L)) + 1)
    y_all = np.zeros((problem.F.m, t_all.size))
    y_all[:, 0] = problem.y0
    windows: list[dict] = []
    t0 = 0.0
    y_start = problem.y0.copy()
    window = T
    converged_all = True
    while t0 < T - 1e-15:
        t1 = min(t0 + window, T)
        ok, y_win, iters, ratio = _picard_window(problem, y_start, t0, t1, L, cfg)
        if not ok:
            window *= 0.5
            if window < max(cfg.min_window, 2.0 ** -L):
                raise WindowUnderflow(
                    f"window shrank below {cfg.min_window} at t = {t0} without contraction"
                )
            continue
        i0 = round(t0 * (1 << L))
        i1 = round(t1 * (1 << L))
        y_all[:, i0 : i1 + 1] = y_win
        windows.append(
            {"start": t0, "end": t1, "iterations": iters, "contraction_ratio": ratio}
        )
        y_start = y_win[:, -1].copy()
        t0 = t1
    residual = _fixed_point_residual(problem, t_all, y_all, L, cfg)
    return OdeSolution(t=t_all, y=y_all, windows=windows, residual=residual,
                       converged=converged_all)


def _picard_window(problem, y_start, a, b, L, cfg):
    n_grid = round((b - a) * (1 << L)) + 1
    y = np.repeat(np.asarray(y_start, dtype=float)[:, None], n_grid, axis=1)
    changes: list[float] = []
    for it in range(1, cfg.max_picard + 1):
        y_new = picard_operator(problem, y, a, b, L, y_start=y_start, cfg=cfg)
        change = float(np.abs(y_new - y).max())
        changes.append(change)
        y = y_new
        if change < cfg.tol:
            ratio = _contraction_ratio(changes, cfg.contraction_window)
            if ratio < 1.0:
                return True, y, it, ratio
        if not np.isfinite(change):
            raise NonFiniteIterate("sup-norm change is not finite")
    return False, y, cfg.max_picard, _contraction_ratio(changes, cfg.contraction_window)


def _contraction_ratio(changes, window):
    pairs = [
        changes[i + 1] / changes[i]
        for i in range(max(0, len(changes) - 1 - window), len(changes) - 1)
        if changes[i] > 0
    ]
    if not pairs:
        return 0.0
    return float(np.mean(pairs))


def _fixed_point_residual(problem, t_all, y_all, L, cfg):
    """Post-hoc defect max_t |y(t) - y0 - integral of F dx over [0, t]|."""
    check = picard_operator(problem, y_all, float(t_all[0]), float(t_all[-1]), L,
                            y_start=problem.y0, cfg=cfg)
    return float(np.abs(check - y_all).max())


def integrand_bounds(
    problem: OdeProblem,
    y_seminorm: float,
    T: float | None = None,
    alpha: float | None = None,
) -> dict:
    """Per-component Hölder bounds for the composed integrands plus a window seed.

    Each component bound is |F,H(t)| T^(theta(1-beta)) + |F,H(y)| |y| +
    |F,H(x)| |x| T^(theta(alpha-beta)) from the declared constants.  The
    suggested first window halves T until the heuristic contraction factor
    built from the y-constants, driver scaling norms, and driver Hölder
    estimates drops below one half.
    """
    T = problem.horizon if T is None else T
    theta, beta = problem.theta, problem.beta
    alpha = beta if alpha is None else alpha
    gamma = theta * beta / 2.0
    x_holder = [holder_seminorm(d, alpha).seminorm_lower_bound for d in problem.drivers]
    x_gnorm = [
        scaling_norm(d.pyramid(), theta * beta, gamma, scan_depth=4).value
        for d in problem.drivers
    ]
    bounds = np.zeros((problem.F.m, problem.F.d))
    c_y_total = 0.0
    for i in range(problem.F.m):
        for j in range(problem.F.d):
            h = problem.F.components[i][j].holder
            if h is None or any(key not in h for key in ("t", "y", "x")):
                raise MissingConstants(f"component ({i}, {j}) lacks declared constants")
            bounds[i, j] = (
                h["t"] * T ** (theta * (1.0 - beta))
                + h["y"] * y_seminorm
                + h["x"] * x_holder[j] * T ** (theta * (alpha - beta))
            )
            c_y_total += h["y"]

    def contraction(t1: float) -> float:
        holder_term = 8.0 * max(x_holder, default=0.0)
        if alpha > beta:
            holder_term *= t1 ** (alpha - beta)
        norm_term = max(x_gnorm, default=0.0) * t1 ** (gamma + theta * beta - beta)
        return c_y_total * (norm_term + holder_term)

    t1 = T
    if c_y_total > 0:
        while contraction(t1) > 0.5 and t1 > 2.0 ** -30:
            t1 *= 0.5
    return {
        "component_bounds": bounds,
        "suggested_window": t1,
        "driver_holder": x_holder,
        "driver_scaling_norm": x_gnorm,
        "gamma": gamma,
    }


def continuity_experiment(
    problem_a: OdeProblem,
    problem_b: OdeProblem,
    cfg: SolverConfig | None = None,
) -> dict:
    """Solve both problems and report output distances against input distances."""
    cfg = cfg or SolverConfig()
    sol_a = solve(problem_a, cfg)
    sol_b = solve(problem_b, cfg)
    if sol_a.t.size != sol_b.t.size:
        raise BadInterval("problems must share horizon and grid for comparison")
    sup_out = float(np.abs(sol_a.y - sol_b.y).max())
    diff_path = _difference_path(sol_a, sol_b, problem_a.beta)
    sup_x = max(
        float(np.abs(da.samples - db.samples).max())
        for da, db in zip(problem_a.drivers, problem_b.drivers)
    )
    holder_x = max(
        holder_seminorm(
            DyadicPath(da.samples - db.samples, da.resolution_level), problem_a.beta
        ).seminorm_lower_bound
        if np.any(da.samples != db.samples)
        else 0.0
        for da, db in zip(problem_a.drivers, problem_b.drivers)
    )
    y0_dist = float(np.abs(problem_a.y0 - problem_b.y0).max())
    input_dist = y0_dist + sup_x + holder_x
    return {
        "input_distance": {"y0": y0_dist, "sup_x": sup_x, "holder_x": holder_x},
        "output_distance": {"sup": sup_out, "holder_beta": diff_path},
        "ratio": sup_out / input_dist if input_dist > 0 else 0.0,
        "solutions": (sol_a, sol_b),
    }


def _difference_path(sol_a: OdeSolution, sol_b: OdeSolution, beta: float) -> float:
    diff = sol_a.y[0] - sol_b.y[0]
    if not np.any(diff):
        return 0.0
    level = int(np.log2(sol_a.t.size - 1))
    if sol_a.t[-1] == 1.0:
        return holder_seminorm(DyadicPath(diff, level), beta).seminorm_lower_bound
    return float(np.abs(diff).max() / (sol_a.t[-1] - sol_a.t[0]) ** beta)
