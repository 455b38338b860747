"""Semi-discrete right-hand side, time-step selection and the SSP-RK3 driver."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numba
import numpy as np

from . import kernels as K
from ._numba import kernel
from .boundary import NO_SOURCE, BoundarySpec, SourceSpec, add_source, fill_ghost
from .euler import SWAP_XY
from .flux_cu import EPSILON
from .grid import GHOST, AdmissibilityError, Field
from .linear import LinearSystem
from .physics import EULER, Model, euler_model, linear_model

SCHEMES = {"old": K.OLD_CU, "new": K.NEW_CU}
RECONSTRUCTIONS = {
    "conservative": K.CONSERVATIVE,
    "characteristic": K.CHARACTERISTIC,
    "first_order": K.FIRST_ORDER,
}
DEFAULT_RECONSTRUCTION = {"old": "conservative", "new": "characteristic"}


@dataclass(frozen=True)
class SchemeConfig:
    """Numerical method settings.

    ``scheme`` is ``"old"`` (classical central-upwind) or ``"new"`` (LCD-based).
    ``system`` replaces the Euler equations by a linear system (1-D only).
    With ``positivity_fallback`` an inadmissible reconstructed interface value
    is replaced by its cell average (and counted); without it the step fails.
    """

    scheme: str = "new"
    gamma: float = 1.4
    cfl: float = 0.4
    epsilon: float = EPSILON
    reconstruction: str | None = None
    system: LinearSystem | None = None
    workers: int = 1
    positivity_fallback: bool = True

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {sorted(SCHEMES)}")
        if not 0 < self.cfl <= 1:
            raise ValueError("cfl must lie in (0, 1]")
        if not self.gamma > 1:
            raise ValueError("gamma must exceed 1")
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be non-negative")
        if self.reconstruction is None:
            object.__setattr__(self, "reconstruction", DEFAULT_RECONSTRUCTION[self.scheme])
        if self.reconstruction not in RECONSTRUCTIONS:
            raise ValueError(f"unknown reconstruction {self.reconstruction!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def model(self, nvar: int) -> Model:
        if self.system is not None:
            if self.system.nvar != nvar:
                raise ValueError("field size does not match the linear system")
            return linear_model(self.system)
        return euler_model(self.gamma, nvar)


@dataclass
class Speeds:
    """Largest characteristic speed seen at x- and y-interfaces."""

    x: float = 0.0
    y: float = 0.0
    fallbacks: int = 0


def _run_sweep(qs: np.ndarray, cfg: SchemeConfig, model: Model, dx: float, label: str):
    nif = qs.shape[0] - 3
    d, n = qs.shape[1], qs.shape[2]
    F = np.empty((nif, d, n))
    speed = np.empty((nif, n))
    ok = np.empty((nif, n), dtype=np.bool_)
    args = (
        qs, model.code, model.params, SCHEMES[cfg.scheme], RECONSTRUCTIONS[cfg.reconstruction],
        cfg.epsilon, dx, cfg.positivity_fallback, F, speed, ok,
    )
    if cfg.workers > 1 and nif > 1:
        numba.set_num_threads(min(cfg.workers, numba.config.NUMBA_NUM_THREADS))
        nfix = K.sweep_parallel(*args, cfg.workers)
    else:
        nfix = K.sweep(*args)
    if not ok.all():
        row, line = np.argwhere(~ok)[0]
        raise AdmissibilityError(
            f"inadmissible reconstructed state at {label}-interface {(int(row), int(line))}",
            (int(row), int(line)),
        )
    return F, float(speed.max()), int(nfix)


@kernel
def _assemble_2d(F, G, dx, dy, swap, L):
    # F[i, c, j] on x-interfaces, G[j, c', i] on y-interfaces with swapped momenta
    nc, nx, ny = L.shape
    for c in range(nc):
        sc = swap[c]
        for i in range(nx):
            for j in range(ny):
                L[c, i, j] = -(F[i + 1, c, j] - F[i, c, j]) / dx - (G[j + 1, sc, i] - G[j, sc, i]) / dy


@kernel
def _rk_stage(u0, u, L, dt, a, b, out):
    # out = a*u0 + b*(u + dt*L); a = 0 means the first stage
    x0 = u0.ravel()
    x = u.ravel()
    l = L.ravel()
    o = out.ravel()
    for k in range(o.size):
        if a == 0.0:
            o[k] = x0[k] + dt * l[k]
        elif b == 0.25:
            o[k] = 0.75 * x0[k] + 0.25 * (x[k] + dt * l[k])
        else:
            o[k] = x0[k] / 3.0 + 2.0 / 3.0 * (x[k] + dt * l[k])


def _tendency(f: Field, cfg: SchemeConfig, source: SourceSpec) -> tuple[np.ndarray, Speeds]:
    """Tendency of the interior cells; ghosts must already be filled."""
    q = f.q
    model = cfg.model(f.nvar)
    g = GHOST
    if f.ndim == 1:
        n = f.grid.n_cells
        # all interfaces of the line side by side: window m is q[:, m:m + n + 1]
        qs = np.ascontiguousarray(np.stack([q[:, m : m + n + 1] for m in range(4)]))
        F, ax, nfix = _run_sweep(qs, cfg, model, f.grid.dx, "x")
        F = F[0]
        L = -(F[:, 1:] - F[:, :-1]) / f.grid.dx
        add_source(L, f.interior, source)
        return L, Speeds(ax, 0.0, nfix)

    if model.code != EULER:
        raise ValueError("linear systems are only supported in 1-D")
    qx = np.ascontiguousarray(q[:, :, g:-g].transpose(1, 0, 2))
    F, ax, nfx = _run_sweep(qx, cfg, model, f.grid.dx, "x")
    qy = np.ascontiguousarray(q[SWAP_XY][:, g:-g, :].transpose(2, 0, 1))
    G, ay, nfy = _run_sweep(qy, cfg, model, f.grid.dy, "y")
    L = np.empty(f.interior.shape)
    _assemble_2d(F, G, f.grid.dx, f.grid.dy, SWAP_XY, L)
    add_source(L, f.interior, source)
    return L, Speeds(ax, ay, nfx + nfy)


def interface_fluxes(windows, cfg: SchemeConfig, dx: float = 1.0, direction: str = "x") -> np.ndarray:
    """Numerical fluxes for a batch of independent interface windows.

    ``windows`` has shape ``(n, 4, nvar)``: the four cell averages around each
    interface.  The windows go through the same compiled code as the solver.
    """
    w = np.asarray(windows, dtype=float)
    if w.ndim != 3 or w.shape[1] != 4:
        raise ValueError("windows must have shape (n, 4, nvar)")
    if direction == "y":
        if w.shape[2] != 4:
            raise ValueError("the y-direction only exists in 2-D")
        w = w[:, :, SWAP_XY]
    elif direction != "x":
        raise ValueError(f"unknown direction {direction!r}")
    qs = np.ascontiguousarray(w.transpose(1, 2, 0))
    F, _, _ = _run_sweep(qs, cfg, cfg.model(w.shape[2]), dx, direction)
    F = F[0].T
    return F[:, SWAP_XY] if direction == "y" else F


def rhs(f: Field, cfg: SchemeConfig, bc: BoundarySpec, source: SourceSpec = NO_SOURCE) -> np.ndarray:
    """Semi-discrete tendency ``dU/dt`` of the interior cells.

    Ghost layers of ``f`` are refilled from ``bc`` first.
    """
    source.check(f.ndim)
    fill_ghost(f, bc)
    return _tendency(f, cfg, source)[0]


def _dt_from_speeds(grid, cfg: SchemeConfig, s: Speeds) -> float:
    limits = [grid.dx / s.x if s.x > 0 else math.inf]
    if grid.ndim == 2:
        limits.append(grid.dy / s.y if s.y > 0 else math.inf)
    return cfg.cfl * min(limits)


def max_stable_dt(f: Field, cfg: SchemeConfig, bc: BoundarySpec | None = None) -> float:
    """``cfl * min(dx / a_max, dy / b_max)``; ``inf`` for a quiescent field."""
    work = f.copy()
    if bc is not None:
        fill_ghost(work, bc)
    _, s = _tendency(work, cfg, NO_SOURCE)
    return _dt_from_speeds(f.grid, cfg, s)


@kernel
def _min_rho_p(u, model, gamma):
    """Minimum density and pressure and the flat index of the first
    inadmissible cell (-1 if none)."""
    d = u.shape[0]
    n = u.shape[1]
    rmin = np.inf
    pmin = np.inf
    bad = -1
    for k in range(n):
        rho = u[0, k]
        kin = 0.0
        for c in range(1, d - 1):
            kin += u[c, k] * u[c, k]
        p = (gamma - 1.0) * (u[d - 1, k] - 0.5 * kin / rho)
        if model != EULER:
            rho = 1.0
            p = 1.0
        if rho < rmin:
            rmin = rho
        if p < pmin:
            pmin = p
        if bad < 0 and not (rho > 0.0 and p > 0.0):
            bad = k
    return rmin, pmin, bad


def _check_admissible(f: Field, cfg: SchemeConfig) -> tuple[float, float]:
    u = np.ascontiguousarray(f.interior).reshape(f.nvar, -1)
    code = EULER if cfg.system is None else 1
    rmin, pmin, bad = _min_rho_p(u, code, cfg.gamma)
    if bad >= 0:
        idx = tuple(int(i) for i in np.unravel_index(bad, f.grid.shape))
        raise AdmissibilityError(f"inadmissible cell average at cell {idx}", idx)
    return rmin, pmin


def _stage(g: Field, u0: np.ndarray, L: np.ndarray, dt: float, a: float, b: float) -> None:
    out = np.empty_like(u0)
    _rk_stage(u0, np.ascontiguousarray(g.interior), L, dt, a, b, out)
    g.interior[...] = out


def _advance(f: Field, cfg: SchemeConfig, bc: BoundarySpec, source: SourceSpec, dt_for) -> tuple[Field, float, int]:
    """One SSP-RK3 step; ``dt_for`` maps the stage-1 speeds to the step size.
    Returns the new field, dt and the number of reconstruction fallbacks."""
    u0 = f.interior.copy()
    fill_ghost(f, bc)
    L, s = _tendency(f, cfg, source)
    fixes = s.fallbacks
    dt = dt_for(s)
    g = f.copy()
    _stage(g, u0, L, dt, 0.0, 1.0)
    _check_admissible(g, cfg)

    fill_ghost(g, bc)
    L, s = _tendency(g, cfg, source)
    fixes += s.fallbacks
    _stage(g, u0, L, dt, 0.75, 0.25)
    _check_admissible(g, cfg)

    fill_ghost(g, bc)
    L, s = _tendency(g, cfg, source)
    fixes += s.fallbacks
    _stage(g, u0, L, dt, 1.0 / 3.0, 2.0 / 3.0)
    fill_ghost(g, bc)
    return g, dt, fixes


def ssp_rk3_step(
    f: Field, dt: float, cfg: SchemeConfig, bc: BoundarySpec, source: SourceSpec = NO_SOURCE
) -> Field:
    """Three-stage strong-stability-preserving Runge-Kutta step (Shu-Osher form)."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    source.check(f.ndim)
    g, _, _ = _advance(f.copy(), cfg, bc, source, lambda s: dt)
    _check_admissible(g, cfg)
    return g


@dataclass(frozen=True)
class StepRecord:
    step: int
    t: float
    dt: float
    min_rho: float
    min_p: float
    fallbacks: int = 0


@dataclass
class RunResult:
    field: Field
    log: list[StepRecord] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.log)

    @property
    def fallbacks(self) -> int:
        return sum(r.fallbacks for r in self.log)


class SolverFailure(RuntimeError):
    """A step failed; carries the step index and time of the failure."""

    def __init__(self, message: str, step: int, t: float, index=None):
        super().__init__(message)
        self.step = step
        self.t = t
        self.index = index


def run_to_time(
    f: Field,
    t_final: float,
    cfg: SchemeConfig,
    bc: BoundarySpec,
    source: SourceSpec = NO_SOURCE,
    *,
    snapshot_times: Iterable[float] = (),
    on_snapshot: Callable[[float, Field], None] | None = None,
    on_step: Callable[[int, float, float, float, float], None] | None = None,
    max_steps: int | None = None,
) -> RunResult:
    """Integrate from t = 0 to ``t_final``, landing exactly on it.

    ``dt`` is set once per step from the speeds of the pre-step field and
    also shortened to hit each requested snapshot time.  ``on_step`` receives
    ``(step, t, dt, min_rho, min_p)`` after each accepted step.
    """
    if not t_final >= 0:
        raise ValueError("t_final must be non-negative")
    source.check(f.ndim)
    bc.check(f.ndim)
    pending = sorted(t for t in snapshot_times if 0 <= t <= t_final)
    cur = f.copy()
    fill_ghost(cur, bc)
    t = 0.0
    step = 0
    log: list[StepRecord] = []

    def emit_due():
        while pending and pending[0] <= t:
            ts = pending.pop(0)
            if on_snapshot is not None:
                on_snapshot(ts, cur)

    emit_due()
    while t < t_final:
        if max_steps is not None and step >= max_steps:
            raise SolverFailure(f"step limit {max_steps} reached at t={t}", step, t)
        target = min(pending[0], t_final) if pending else t_final

        def dt_for(s: Speeds) -> float:
            dt = _dt_from_speeds(cur.grid, cfg, s)
            return min(dt, target - t)

        try:
            nxt, dt, fixes = _advance(cur, cfg, bc, source, dt_for)
            rmin, pmin = _check_admissible(nxt, cfg)
        except AdmissibilityError as err:
            raise SolverFailure(f"step {step} at t={t:.6g}: {err}", step, t, err.index) from err
        if not dt > 0:
            raise SolverFailure(f"non-positive time step at t={t}", step, t)
        cur = nxt
        step += 1
        t = target if t + dt >= target else t + dt
        log.append(StepRecord(step, t, dt, rmin, pmin, fixes))
        if on_step is not None:
            on_step(step, t, dt, rmin, pmin)
        emit_due()
    return RunResult(cur, log)
