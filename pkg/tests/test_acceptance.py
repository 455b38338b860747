"""End-to-end acceptance checks; each test reports one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (the lines are also
repeated in the terminal summary)."""
import math
import time

import numpy as np
import pytest

from lcdcu.benchmarks import make_case
from lcdcu.boundary import BoundarySpec, Dirichlet, Free, Periodic, SolidWall
from lcdcu.euler import flux, hat_average, jacobian, lcd_basis
from lcdcu.experiments import asymmetry, cesaro, compare, run_case, self_convergence
from lcdcu.grid import Field, Grid1D, Grid2D, prim_to_cons
from lcdcu.linear import LinearSystem
from lcdcu.postprocess import project_refine
from lcdcu.stepper import SchemeConfig, interface_fluxes, max_stable_dt, run_to_time, ssp_rk3_step

import oracles
from conftest import GAMMA, cons, random_prim


# -- 1: upwind reduction on a linear system ----------------------------------

LINEAR = LinearSystem.from_eigen(np.array([[1.0, 1.0], [-0.5, 2.0]]), [-1.0, 2.0])


def upwind_tendency(u, dx):
    """Second-order upwind scheme in characteristic variables, periodic."""
    gam = LINEAR.Rinv @ u
    w = np.stack([np.roll(gam, 1 - m, axis=1).T for m in range(4)], axis=1)
    gm, gp = oracles.one_sided(w, dx)
    lam = LINEAR.lam[:, None]
    flux_char = np.where(lam > 0, lam * gm.T, lam * gp.T)
    F = LINEAR.R @ flux_char
    return -(F - np.roll(F, 1, axis=1)) / dx


def test_criterion_1_upwind_reduction(rng, report):
    t0 = time.perf_counter()
    cfg = SchemeConfig("new", system=LINEAR)
    Ap, Am = LINEAR.split()
    w = rng.normal(size=(2000, 4, 2))
    got = interface_fluxes(w, cfg, 0.01)
    gm, gp = oracles.one_sided(np.einsum("ij,nmj->nmi", LINEAR.Rinv, w), 0.01)
    um, up = gm @ LINEAR.R.T, gp @ LINEAR.R.T
    ref = um @ Ap.T + up @ Am.T
    flux_err = np.abs(got - ref).max()

    n, dt, steps = 64, 0.4 / 64 / 2.0, 50
    g = Grid1D(0.0, 1.0, n)
    x = g.centers()
    u0 = np.stack([np.sin(2 * np.pi * x) + (x > 0.5), np.cos(4 * np.pi * x)])
    bc = BoundarySpec(Periodic(), Periodic())
    f = Field.from_interior(g, u0)
    v = u0.copy()
    for _ in range(steps):
        f = ssp_rk3_step(f, dt, cfg, bc)
        v1 = v + dt * upwind_tendency(v, g.dx)
        v2 = 0.75 * v + 0.25 * (v1 + dt * upwind_tendency(v1, g.dx))
        v = v / 3.0 + 2.0 / 3.0 * (v2 + dt * upwind_tendency(v2, g.dx))
    traj_err = np.abs(f.interior - v).max()
    wall = time.perf_counter() - t0
    ok = flux_err < 1e-13 and traj_err < 1e-12
    report(1, ok, f"flux err {flux_err:.2e}, 50-step trajectory err {traj_err:.2e}, {wall:.2f}s")
    assert ok


# -- 2: eigen-identities ------------------------------------------------------


def test_criterion_2_eigen_identities(rng, report):
    t0 = time.perf_counter()
    worst = 0.0
    for ndim, directions in ((1, ("x",)), (2, ("x", "y"))):
        pl = random_prim(rng, 1000, ndim, vmax=2.0)
        pr = random_prim(rng, 1000, ndim, vmax=2.0)
        for a, b in zip(cons(pl).T, cons(pr).T):
            h = hat_average(a, b, GAMMA)
            for d in directions:
                basis = lcd_basis(h, GAMMA, d)
                A = jacobian(h.conserved(), GAMMA, d)
                e1 = np.abs(basis.R @ basis.Rinv - np.eye(len(a))).max()
                e2 = np.abs(A @ basis.R - basis.R @ np.diag(basis.lam)).max()
                worst = max(worst, e1, e2)
    wall = time.perf_counter() - t0
    ok = worst < 1e-12
    report(2, ok, f"max identity residual {worst:.2e} over 1000 hat states per direction, {wall:.2f}s")
    assert ok


# -- 3: conservation ----------------------------------------------------------


def drift_over_steps(f, cfg, bc, steps):
    """Largest per-component change of the totals, relative to ``sum |u|``."""
    t0 = f.totals()
    scale = np.abs(f.interior).reshape(f.nvar, -1).sum(axis=1) * f.grid.cell_volume
    g = f
    for _ in range(steps):
        g = ssp_rk3_step(g, max_stable_dt(g, cfg, bc), cfg, bc)
    return float(np.max(np.abs(g.totals() - t0) / scale))


def test_criterion_3_conservation(report):
    t0 = time.perf_counter()
    worst = 0.0
    for name, grid in (("density_wave", None), ("kelvin_helmholtz", 64)):
        case = make_case(name)
        f = case.initial_field(case.grid(grid))
        for scheme in ("old", "new"):
            worst = max(worst, drift_over_steps(f, SchemeConfig(scheme, gamma=case.gamma), case.bc, 100))
    wall = time.perf_counter() - t0
    ok = worst < 1e-11
    report(3, ok, f"max relative drift {worst:.2e} (density wave, KH 64^2, both schemes), {wall:.1f}s")
    assert ok


# -- 4: freestream ------------------------------------------------------------


def freestream_setups():
    moving1, still1 = (0.8, 0.6, 1.7), (0.8, 0.0, 1.7)
    moving2, still2 = (0.8, 0.6, -0.3, 1.7), (0.8, 0.0, 0.0, 1.7)
    g1 = Grid1D(0.0, 1.0, 32)
    g2 = Grid2D(0.0, 1.0, 0.0, 1.0, 16, 16)
    # a wall only keeps a constant state with zero normal velocity
    yield "1-D free", g1, moving1, BoundarySpec(Free(), Free())
    yield "1-D periodic", g1, moving1, BoundarySpec(Periodic(), Periodic())
    yield "1-D wall", g1, still1, BoundarySpec(SolidWall(), SolidWall())
    yield "1-D dirichlet", g1, moving1, BoundarySpec(Dirichlet(moving1, GAMMA), Dirichlet(moving1, GAMMA))
    yield "2-D free", g2, moving2, BoundarySpec.uniform(Free(), 2)
    yield "2-D periodic", g2, moving2, BoundarySpec.uniform(Periodic(), 2)
    yield "2-D wall", g2, still2, BoundarySpec.uniform(SolidWall(), 2)
    yield "2-D dirichlet", g2, moving2, BoundarySpec.uniform(Dirichlet(moving2, GAMMA), 2)
    yield "2-D mixed", g2, (0.8, 0.0, -0.3, 1.7), BoundarySpec(SolidWall(), Free(), Periodic(), Periodic())


def test_criterion_4_freestream(report):
    t0 = time.perf_counter()
    worst = 0.0
    for label, grid, prim, bc in freestream_setups():
        p = np.asarray(prim, dtype=float).reshape((-1,) + (1,) * grid.ndim)
        f = Field.from_primitive(grid, np.broadcast_to(p, (len(prim),) + grid.shape).copy(), GAMMA)
        for scheme in ("old", "new"):
            cfg = SchemeConfig(scheme)
            g = f
            for _ in range(50):
                g = ssp_rk3_step(g, 0.4 * grid.dx / 3.0, cfg, bc)
            worst = max(worst, float(np.abs(g.interior - f.interior).max()))
    wall = time.perf_counter() - t0
    ok = worst < 1e-13
    report(4, ok, f"max deviation {worst:.2e} over 50 steps on free/periodic/wall/Dirichlet, {wall:.2f}s")
    assert ok


# -- 5: accuracy order --------------------------------------------------------


def test_criterion_5_accuracy_order(report):
    t0 = time.perf_counter()
    case = make_case("density_wave")
    orders = {}
    for scheme in ("old", "new"):
        rows = self_convergence(case, [100, 200, 400, 800], scheme)
        orders[scheme] = [r.order for r in rows[1:]]
    wall = time.perf_counter() - t0
    ok = all(o >= 1.7 for v in orders.values() for o in v)
    detail = ", ".join(f"{s} {' '.join(f'{o:.3f}' for o in v)}" for s, v in orders.items())
    report(5, ok, f"observed L1 orders: {detail}, {wall:.1f}s")
    assert ok


# -- 6: contact sharpness -----------------------------------------------------


def test_criterion_6_contact_sharpness(report):
    t0 = time.perf_counter()
    rows = {r.scheme: r for r in compare(make_case("stationary_contact"), [200, 4000]) if r.cells == (200,)}
    wall = time.perf_counter() - t0
    ok = rows["new"].l1 < rows["old"].l1
    report(6, ok, f"L1 density error new {rows['new'].l1:.4e} vs old {rows['old'].l1:.4e}, {wall:.1f}s")
    assert ok


# -- 7: flux oracles ----------------------------------------------------------


def test_criterion_7_flux_oracles(rng, report):
    t0 = time.perf_counter()
    worst = 0.0
    n = 10_000
    S = oracles.SWAP
    for d in (3, 4):
        w = oracles.random_windows(rng, n, d)
        ref_new, _, _ = oracles.lcd_x(w, GAMMA, 0.01)
        ref_old = oracles.old_cu_x(w, GAMMA, 0.01)
        pairs = [(interface_fluxes(w, SchemeConfig("new"), 0.01), ref_new),
                 (interface_fluxes(w, SchemeConfig("old"), 0.01), ref_old)]
        if d == 4:
            pairs += [(interface_fluxes(w, SchemeConfig("new"), 0.01, "y"), oracles.lcd_x(w[:, :, S], GAMMA, 0.01)[0][:, S]),
                      (interface_fluxes(w, SchemeConfig("old"), 0.01, "y"), oracles.old_cu_x(w[:, :, S], GAMMA, 0.01)[:, S])]
        for got, ref in pairs:
            scale = np.maximum(1.0, np.abs(ref).max(axis=1))
            worst = max(worst, float((np.abs(got - ref).max(axis=1) / scale).max()))
    flat_ok = True
    for d in (3, 4):
        states = cons(random_prim(rng, 1000, d - 2)).T
        flat = np.repeat(states[:, None, :], 4, axis=1)
        for scheme in ("old", "new"):
            got = interface_fluxes(flat, SchemeConfig(scheme), 0.01)
            flat_ok &= bool(np.array_equal(got, flux(states.T, GAMMA).T))
            flat_ok &= bool(np.allclose(got, oracles.flux_x(states, GAMMA), rtol=1e-14, atol=0))
    wall = time.perf_counter() - t0
    ok = worst < 1e-12 and flat_ok
    report(7, ok, f"max scaled deviation {worst:.2e} on 10^4 windows, flat windows exact: {flat_ok}, {wall:.2f}s")
    assert ok


# -- 8 and 9: 2-D stability runs and explosion symmetry -------------------------

STABILITY = {"riemann2d_cfg3": (300, 1.0), "explosion": (200, 3.2), "implosion": (400, 2.5)}
_runs: dict = {}


def stability_run(name, scheme):
    key = (name, scheme)
    if key not in _runs:
        n, t_final = STABILITY[name]
        case = make_case(name)
        _runs[key] = run_case(case, scheme, case.grid(n, n), t_final)
    return _runs[key]


@pytest.mark.slow
def test_criterion_8_stability(report):
    lines, ok, total = [], True, 0.0
    for name in STABILITY:
        for scheme in ("old", "new"):
            try:
                run = stability_run(name, scheme)
            except Exception as err:  # a failed run is a failed criterion
                ok = False
                lines.append(f"{name}/{scheme} failed: {err}")
                continue
            log = run.result.log
            rmin = min(r.min_rho for r in log)
            pmin = min(r.min_p for r in log)
            done = log[-1].t == STABILITY[name][1]
            ok &= done and rmin > 0 and pmin > 0
            total += run.wall_time
            lines.append(f"{name}/{scheme} min rho {rmin:.3g} min p {pmin:.3g} {run.wall_time:.0f}s")
    report(8, ok, "; ".join(lines) + f"; total {total / 60:.1f} min")
    assert ok


@pytest.mark.slow
def test_criterion_9_explosion_symmetry(report):
    vals = {s: asymmetry(stability_run("explosion", s).rho.values) for s in ("old", "new")}
    ok = all(v < 1e-12 for v in vals.values())
    report(9, ok, f"asymmetry old {vals['old']:.2e}, new {vals['new']:.2e} at 200^2, t = 3.2")
    assert ok


# -- 10: Cesaro pipeline -------------------------------------------------------


def throwaway_refine(v, factor, periodic):
    """Minmod projection written directly with explicit neighbour loops."""
    out = v
    for axis in range(v.ndim):
        nc = out.shape[axis]
        fine_shape = list(out.shape)
        fine_shape[axis] = nc * factor
        fine = np.empty(fine_shape)
        for i in range(nc):
            c = np.take(out, i, axis=axis)
            if periodic:
                l, r = np.take(out, (i - 1) % nc, axis=axis), np.take(out, (i + 1) % nc, axis=axis)
                s = oracles.mm(2 * (c - l), (r - l) / 2, 2 * (r - c))
            elif 0 < i < nc - 1:
                l, r = np.take(out, i - 1, axis=axis), np.take(out, i + 1, axis=axis)
                s = oracles.mm(2 * (c - l), (r - l) / 2, 2 * (r - c))
            else:
                s = np.zeros_like(c)
            for k in range(factor):
                idx = [slice(None)] * v.ndim
                idx[axis] = i * factor + k
                fine[tuple(idx)] = c + s * ((k + 0.5) / factor - 0.5)
        out = fine
    return out


@pytest.mark.slow
def test_criterion_10_cesaro(report):
    t0 = time.perf_counter()
    case = make_case("kelvin_helmholtz")
    worst, worst_total = 0.0, 0.0
    for scheme in ("old", "new"):
        res = cesaro(case, 5, 8, scheme)
        for m in range(5, 9):
            parts = [throwaway_refine(res.densities[n].values, 2 ** (m - n), True) for n in range(5, m + 1)]
            acc = np.zeros_like(parts[0])
            for p in parts:
                acc = acc + p
            ref = acc / (m - 4)
            worst = max(worst, float(np.abs(res.averages[m].values - ref).max()))
        for n in range(5, 8):
            coarse = res.densities[n]
            fine = project_refine(coarse, res.densities[8].grid, True)
            worst_total = max(worst_total, abs(fine.total() - coarse.total()) / abs(coarse.total()))
    wall = time.perf_counter() - t0
    ok = worst < 1e-12 and worst_total < 1e-13
    report(10, ok, f"max deviation from script oracle {worst:.2e}, projection total drift {worst_total:.2e}, "
                   f"{wall / 60:.1f} min")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-s", "-v"]))
