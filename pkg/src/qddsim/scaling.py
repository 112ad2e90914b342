"""Duration sweeps and power-law exponent fits for grids of pulse numbers.

For every cell (N_x, N_z) the distance norm is sampled on a geometric tau
grid and the exponent zeta of d ~ tau^zeta is the least-squares slope of
log d against log tau. Only points with d inside an accepted window count:
the floor keeps clear of the rounding plateau of double precision, the
ceiling keeps out of the regime where subleading powers bend the curve.

The adaptive policy brackets the window per cell (the tau ranges differ by
orders of magnitude between zeta = 1 and zeta = 14 cells), then tightens
the ceiling until the fit is clean (r^2 at least 0.999); as a final guard
the largest-tau point is dropped once if it alone degrades the fit. Every
step depends only on computed distances, so results are deterministic and
independent of worker scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .evolution import TogglingEvolver
from .linalg import PauliAxis
from .metrics import BathKind, DistanceResult, make_states, qdd_distance
from .model import CouplingSet, HamiltonianParts, build_hamiltonian

R_SQUARED_MIN = 0.999


class WindowFailureError(RuntimeError):
    """No acceptable fit window for a cell; carries the achieved d range."""

    def __init__(self, message: str, d_range: tuple[float, float] | None = None):
        super().__init__(message)
        self.d_range = d_range


@dataclass
class GeometricGrid:
    """Fixed geometric tau grid (no adaptation)."""

    tau_min: float
    tau_max: float
    points: int = 16

    def __post_init__(self):
        if not (0 < self.tau_min < self.tau_max):
            raise ValueError("need 0 < tau_min < tau_max")
        if self.points < 6:
            raise ValueError("a geometric grid needs at least 6 points")

    def taus(self) -> np.ndarray:
        return np.geomspace(self.tau_min, self.tau_max, self.points)


@dataclass
class AdaptiveGrid:
    """Bracket tau per cell so the accepted d window is fully spanned."""

    d_lo: float = 1e-11
    d_hi: float = 1e-2
    points: int = 20
    tau_start: float = 1.0
    max_iterations: int = 200

    def __post_init__(self):
        if not (1e-13 < self.d_lo < self.d_hi < 1e-1):
            raise ValueError("need 1e-13 < d_lo < d_hi < 1e-1")


@dataclass
class SweepSpec:
    """Everything a sweep needs: model, bath preparation, grid and workers."""

    couplings: CouplingSet
    bath_kind: BathKind
    directions: list[tuple[PauliAxis, int]] | None = None
    n_x_values: Sequence[int] = (0, 1, 2, 3)
    n_z_values: Sequence[int] = (0, 1, 2, 3)
    tau_grid: GeometricGrid | AdaptiveGrid = field(default_factory=AdaptiveGrid)
    workers: int | None = None


@dataclass
class FitResult:
    zeta: float
    stderr: float
    r_squared: float
    window: tuple[float, float]
    n_points: int


@dataclass
class ScalingResult:
    """Fitted exponent of one cell together with the data behind it."""

    n_x: int
    n_z: int
    points: list[DistanceResult]
    zeta: float
    zeta_stderr: float
    r_squared: float
    window: tuple[float, float]

    def to_json_dict(self, spec: SweepSpec | None = None) -> dict:
        doc = {
            "n_x": self.n_x,
            "n_z": self.n_z,
            "zeta": self.zeta,
            "zeta_stderr": self.zeta_stderr,
            "r_squared": self.r_squared,
            "window": list(self.window),
            "points": [
                {"tau": p.tau, "d": p.d, "dx": p.d_gamma[0], "dy": p.d_gamma[1], "dz": p.d_gamma[2]}
                for p in self.points
            ],
        }
        if spec is not None:
            doc["seed"] = spec.couplings.seed
            doc["symmetry_class"] = spec.couplings.symmetry_class.value
            doc["topology"] = spec.couplings.topology.value
            doc["bath_kind"] = spec.bath_kind.value
        return doc


def _ols_loglog(taus: np.ndarray, ds: np.ndarray) -> FitResult:
    x, y = np.log(taus), np.log(ds)
    n = len(x)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    sxx = float(np.sum((x - x.mean()) ** 2))
    stderr = float(np.sqrt(ss_res / (n - 2) / sxx)) if n > 2 and sxx > 0 else 0.0
    return FitResult(
        zeta=float(slope),
        stderr=stderr,
        r_squared=r_squared,
        window=(float(taus[0]), float(taus[-1])),
        n_points=n,
    )


def fit_exponent(
    taus: Sequence[float],
    ds: Sequence[float],
    d_lo: float = 1e-11,
    d_hi: float = 1e-2,
) -> FitResult:
    """Least-squares slope of log d vs log tau over the accepted window.

    Uses only points with d in [d_lo, d_hi]; needs at least five of them.
    If the full-window fit has r^2 below 0.999, the largest-tau point is
    excluded once (the asymptotic-regime guard).
    """
    taus = np.asarray(taus, dtype=float)
    ds = np.asarray(ds, dtype=float)
    keep = (ds >= d_lo) & (ds <= d_hi)
    if int(keep.sum()) < 5:
        achieved = (float(ds.min()), float(ds.max())) if len(ds) else None
        raise WindowFailureError(
            f"only {int(keep.sum())} points inside d window [{d_lo:g}, {d_hi:g}]",
            d_range=achieved,
        )
    order = np.argsort(taus[keep])
    tw, dw = taus[keep][order], ds[keep][order]
    fit = _ols_loglog(tw, dw)
    if fit.r_squared < R_SQUARED_MIN and len(tw) > 5:
        retry = _ols_loglog(tw[:-1], dw[:-1])
        if retry.r_squared > fit.r_squared:
            fit = retry
    return fit


class _CellSampler:
    """Memoized d(tau) evaluation for one cell."""

    def __init__(self, parts, states, n_x, n_z, evolver):
        self.parts, self.states = parts, states
        self.n_x, self.n_z = n_x, n_z
        self.evolver = evolver
        self.cache: dict[float, DistanceResult] = {}
        self.evaluations = 0

    def result(self, tau: float) -> DistanceResult:
        hit = self.cache.get(tau)
        if hit is None:
            hit = qdd_distance(
                self.parts, self.states, self.n_x, self.n_z, tau, self.evolver
            )
            self.cache[tau] = hit
            self.evaluations += 1
        return hit

    def d(self, tau: float) -> float:
        return self.result(tau).d


def _adaptive_fit(sampler: _CellSampler, grid: AdaptiveGrid) -> tuple[FitResult, list[DistanceResult]]:
    """Fit the most asymptotic clean window.

    The leading power of d(tau) is defined at tau -> 0, so candidate window
    ceilings ascend from just above the floor: the first ceiling whose
    bracketed, freshly gridded points fit with r^2 >= 0.999 wins. Higher
    ceilings only come into play when the bottom of the window is bent by
    a crossover or grazes the rounding floor.
    """
    budget = grid.max_iterations
    ceilings = []
    ceiling = 1e3 * grid.d_lo
    while ceiling < grid.d_hi:
        ceilings.append(ceiling)
        ceiling *= 10.0
    ceilings.append(grid.d_hi)
    for d_hi_eff in ceilings:
        # walk tau down to the largest value inside the candidate window,
        # then keep walking until the floor is crossed
        t_hi = grid.tau_start
        while sampler.d(t_hi) >= d_hi_eff:
            t_hi /= 2.0
            if sampler.evaluations > budget:
                raise WindowFailureError(
                    "adaptation budget exhausted while bracketing the window top",
                    d_range=_d_range(sampler),
                )
        t_lo = t_hi
        while sampler.d(t_lo) > grid.d_lo:
            t_lo /= 2.0
            if sampler.evaluations > budget + 200:
                break
        taus = np.geomspace(t_lo, t_hi, grid.points)
        results = [sampler.result(t) for t in taus]
        ds = np.array([r.d for r in results])
        try:
            fit = fit_exponent(taus, ds, grid.d_lo, d_hi_eff)
        except WindowFailureError:
            continue
        if fit.r_squared >= R_SQUARED_MIN:
            kept = [r for r in results if grid.d_lo <= r.d <= d_hi_eff]
            return fit, kept
    raise WindowFailureError(
        "no tau window produced an acceptable fit", d_range=_d_range(sampler)
    )


def _d_range(sampler: _CellSampler) -> tuple[float, float] | None:
    if not sampler.cache:
        return None
    ds = [r.d for r in sampler.cache.values()]
    return (float(min(ds)), float(max(ds)))


def sweep_cell(
    spec: SweepSpec,
    n_x: int,
    n_z: int,
    parts: HamiltonianParts | None = None,
    evolver: TogglingEvolver | None = None,
    states=None,
) -> ScalingResult:
    """Sample d(tau) for one cell and fit its exponent."""
    if parts is None:
        parts = build_hamiltonian(spec.couplings)
    if evolver is None:
        evolver = TogglingEvolver(parts)
    if states is None:
        states = make_states(spec.bath_kind, spec.couplings.m, spec.directions)
    sampler = _CellSampler(parts, states, n_x, n_z, evolver)

    if isinstance(spec.tau_grid, GeometricGrid):
        taus = spec.tau_grid.taus()
        results = [sampler.result(t) for t in taus]
        fit = fit_exponent(taus, [r.d for r in results])
        if fit.r_squared < R_SQUARED_MIN:
            raise WindowFailureError(
                f"fixed grid fit has r^2 = {fit.r_squared:.6f} < {R_SQUARED_MIN}",
                d_range=_d_range(sampler),
            )
        kept = [r for r in results if 1e-11 <= r.d <= 1e-2]
    else:
        fit, kept = _adaptive_fit(sampler, spec.tau_grid)

    return ScalingResult(
        n_x=n_x,
        n_z=n_z,
        points=kept,
        zeta=fit.zeta,
        zeta_stderr=fit.stderr,
        r_squared=fit.r_squared,
        window=fit.window,
    )


@dataclass
class ExponentTable:
    """Grid of per-cell fits; failed cells keep their error message."""

    n_x_values: tuple[int, ...]
    n_z_values: tuple[int, ...]
    cells: dict[tuple[int, int], ScalingResult]
    failures: dict[tuple[int, int], str]

    def zeta(self, n_x: int, n_z: int) -> float:
        return self.cells[(n_x, n_z)].zeta

    def to_csv(self) -> str:
        """Rows are N_z, columns N_x; exponents rounded to two decimals."""
        header = "nz\\nx," + ",".join(str(nx) for nx in self.n_x_values)
        lines = [header]
        for nz in self.n_z_values:
            row = [str(nz)]
            for nx in self.n_x_values:
                cell = self.cells.get((nx, nz))
                row.append(f"{cell.zeta:.2f}" if cell is not None else "nan")
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def exponent_table(spec: SweepSpec) -> ExponentTable:
    """Fit every cell of the (N_x, N_z) grid, cells in parallel.

    Per-cell failures are recorded, not raised; the assembled table is
    deterministic regardless of worker count or completion order.
    """
    parts = build_hamiltonian(spec.couplings)
    evolver = TogglingEvolver(parts)
    states = make_states(spec.bath_kind, spec.couplings.m, spec.directions)
    cells_todo = [(nx, nz) for nx in spec.n_x_values for nz in spec.n_z_values]
    workers = spec.workers or os.cpu_count() or 1

    def run(cell):
        nx, nz = cell
        return sweep_cell(spec, nx, nz, parts=parts, evolver=evolver, states=states)

    cells: dict[tuple[int, int], ScalingResult] = {}
    failures: dict[tuple[int, int], str] = {}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for cell, future in [(c, pool.submit(run, c)) for c in cells_todo]:
            try:
                cells[cell] = future.result()
            except WindowFailureError as err:
                failures[cell] = str(err)
    return ExponentTable(
        n_x_values=tuple(spec.n_x_values),
        n_z_values=tuple(spec.n_z_values),
        cells=cells,
        failures=failures,
    )
