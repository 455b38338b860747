"""Drivers shared by the command line and the test-suite: single runs,
scheme comparisons, self-convergence studies and Cesaro averages."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .benchmarks import BenchmarkCase
from .boundary import Periodic
from .grid import Grid, Grid2D
from .postprocess import ScalarField, cesaro_average, density, l1_error, project_refine, restrict
from .stepper import RunResult, SchemeConfig, run_to_time


@dataclass
class TimedRun:
    scheme: str
    grid: Grid
    result: RunResult
    wall_time: float

    @property
    def rho(self) -> ScalarField:
        return density(self.result.field)


def run_case(
    case: BenchmarkCase,
    scheme: str,
    grid: Grid | None = None,
    t_final: float | None = None,
    **cfg_kwargs,
) -> TimedRun:
    """Run ``case`` to ``t_final`` (default: the case's) and time the loop.

    Remaining keyword arguments go to :class:`SchemeConfig` (plus the
    ``snapshot_times``/``on_snapshot``/``on_step`` hooks of ``run_to_time``).
    """
    hooks = {k: cfg_kwargs.pop(k) for k in ("snapshot_times", "on_snapshot", "on_step") if k in cfg_kwargs}
    grid = grid or case.grid()
    cfg = SchemeConfig(scheme, gamma=case.gamma, **cfg_kwargs)
    f0 = case.initial_field(grid)
    t0 = time.perf_counter()
    res = run_to_time(f0, case.t_final if t_final is None else t_final, cfg, case.bc, case.source, **hooks)
    return TimedRun(scheme, grid, res, time.perf_counter() - t0)


@dataclass(frozen=True)
class CompareRow:
    scheme: str
    cells: tuple[int, ...]
    l1: float
    wall_time: float


def compare(
    case: BenchmarkCase, levels: list[int], schemes=("old", "new"), t_final: float | None = None, **cfg_kwargs
) -> list[CompareRow]:
    """Density L1 distance of each (scheme, grid) run to an Old-CU run on the
    finest requested grid, restricted to the coarse grid by block averages."""
    levels = sorted(set(levels))
    if not levels:
        raise ValueError("need at least one grid")
    finest = levels[-1]
    ref = run_case(case, "old", case.grid(finest), t_final, **cfg_kwargs)
    rows = []
    for scheme in schemes:
        for n in levels:
            if n == finest and scheme == "old":
                run = ref
            else:
                run = run_case(case, scheme, case.grid(n), t_final, **cfg_kwargs)
            err = l1_error(run.rho, restrict(ref.rho, run.grid))
            rows.append(CompareRow(scheme, run.grid.shape, err, run.wall_time))
    return rows


@dataclass(frozen=True)
class ConvergenceRow:
    cells: int
    difference: float
    order: float


def self_convergence(
    case: BenchmarkCase, levels: list[int], scheme: str, t_final: float | None = None, **cfg_kwargs
) -> list[ConvergenceRow]:
    """Observed orders from successive differences ``|u_k - R u_{k+1}|_1``.

    ``levels`` must be at least three nested grids, each twice the previous.
    """
    if len(levels) < 3:
        raise ValueError("a convergence study needs at least three grids")
    if any(b != 2 * a for a, b in zip(levels, levels[1:])):
        raise ValueError("grids must double from one level to the next")
    runs = [run_case(case, scheme, case.grid(n), t_final, **cfg_kwargs).rho for n in levels]
    diffs = [l1_error(a, restrict(b, a.grid)) for a, b in zip(runs, runs[1:])]
    rows = []
    for k, d in enumerate(diffs):
        order = math.log2(diffs[k - 1] / d) if k > 0 and d > 0 else math.nan
        rows.append(ConvergenceRow(levels[k], d, order))
    return rows


def _periodic_axes(case: BenchmarkCase) -> tuple[bool, ...]:
    axes = (isinstance(case.bc.left, Periodic),)
    if case.ndim == 2:
        axes += (isinstance(case.bc.bottom, Periodic),)
    return axes


@dataclass
class CesaroResult:
    scheme: str
    levels: list[int]
    densities: dict[int, ScalarField]  # raw density per level
    averages: dict[int, ScalarField]  # Cesaro average on level m, per m
    wall_time: float


def cesaro(
    case: BenchmarkCase, n_lo: int, n_hi: int, scheme: str, t_final: float | None = None, **cfg_kwargs
) -> CesaroResult:
    """Runs on square grids with ``2**n`` cells per side, ``n = n_lo..n_hi``,
    then for each ``m`` the mean of the levels ``n_lo..m`` projected onto
    level ``m``."""
    if case.ndim != 2:
        raise ValueError("Cesaro averages are computed for 2-D cases")
    if not 5 <= n_lo <= n_hi <= 10:
        raise ValueError("levels must satisfy 5 <= n_lo <= n_hi <= 10")
    periodic = _periodic_axes(case)
    dens: dict[int, ScalarField] = {}
    t0 = time.perf_counter()
    for n in range(n_lo, n_hi + 1):
        grid = Grid2D(*case.bounds, 2**n, 2**n)
        dens[n] = run_case(case, scheme, grid, t_final, **cfg_kwargs).rho
    avgs = {}
    for m in range(n_lo, n_hi + 1):
        target = dens[m].grid
        avgs[m] = cesaro_average([project_refine(dens[n], target, periodic) for n in range(n_lo, m + 1)])
    return CesaroResult(scheme, list(range(n_lo, n_hi + 1)), dens, avgs, time.perf_counter() - t0)


def asymmetry(rho: np.ndarray) -> float:
    """``|rho(x, y) - rho(y, x)|_1 / |rho|_1`` on a square grid."""
    return float(np.abs(rho - rho.T).sum() / np.abs(rho).sum())
