"""Registry of benchmark problems for the 1-D and 2-D Euler equations.

Each case bundles its domain, initial data (as primitive variables), boundary
conditions, gamma, final time and two default resolutions: ``paper_grid``,
the resolution of the published runs, and ``desk_grid``, a size that runs in
minutes on a workstation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .boundary import NO_SOURCE, BoundarySpec, Dirichlet, Free, Periodic, SolidWall, SourceSpec
from .grid import Field, Grid, Grid1D, Grid2D


@dataclass(frozen=True)
class BenchmarkCase:
    name: str
    ndim: int
    bounds: tuple[float, ...]
    ic: Callable[..., np.ndarray]
    bc: BoundarySpec
    gamma: float
    t_final: float
    paper_grid: tuple[int, ...]
    desk_grid: tuple[int, ...]
    source: SourceSpec = NO_SOURCE
    reference_grid: tuple[int, ...] | None = None
    description: str = field(default="", compare=False)

    def grid(self, nx: int | None = None, ny: int | None = None) -> Grid:
        """Grid at the desk resolution unless overridden."""
        if self.ndim == 1:
            if ny is not None:
                raise ValueError(f"{self.name} is a 1-D case; ny does not apply")
            return Grid1D(*self.bounds, nx or self.desk_grid[0])
        nx = nx or self.desk_grid[0]
        if ny is None:
            # keep the desk aspect ratio when only nx is given
            ny = nx * self.desk_grid[1] // self.desk_grid[0]
        return Grid2D(*self.bounds, nx, ny)

    def initial_field(self, grid: Grid) -> Field:
        """Cell averages initialized by sampling the data at cell centers."""
        if grid.ndim != self.ndim:
            raise ValueError(f"{self.name} needs a {self.ndim}-D grid")
        if grid.ndim == 1:
            prim = self.ic(grid.centers())
        else:
            prim = self.ic(*grid.centers())
        return Field.from_primitive(grid, prim, self.gamma)


def _pick(conditions, states, shape):
    """Piecewise-constant primitive data: the first matching condition wins,
    the last state is the default."""
    states = [np.asarray(s, dtype=float) for s in states]
    out = np.empty((len(states[0]),) + shape)
    out[...] = states[-1].reshape((-1,) + (1,) * len(shape))
    done = np.zeros(shape, dtype=bool)
    for cond, s in zip(conditions, states):
        m = np.broadcast_to(cond, shape) & ~done
        out[:, m] = s[:, None]
        done |= m
    return out


def _shock_bubble(x):
    return _pick([np.abs(x) < 0.25, x > 0.75], [(13.1538, 0, 1), (1.3333, -0.3535, 1.5), (1, 0, 1)], x.shape)


def _shock_entropy(x):
    out = np.empty((3,) + x.shape)
    left = x < -4.5
    out[0] = np.where(left, 1.51695, 1 + 0.1 * np.sin(20 * x))
    out[1] = np.where(left, 0.523346, 0.0)
    out[2] = np.where(left, 1.805, 1.0)
    return out


def _stationary_contact(x):
    return _pick([x < 0.8], [(1, -19.59745, 1000), (1, -19.59745, 0.01)], x.shape)


def _blast(x):
    return _pick([x < 0.1, x <= 0.9], [(1, 0, 1000), (1, 0, 0.01), (1, 0, 100)], x.shape)


def _density_wave(x):
    return np.stack([1 + 0.5 * np.sin(np.pi * x), np.ones_like(x), np.ones_like(x)])


def _riemann2d_cfg3(x, y):
    return _pick(
        [(x > 1) & (y > 1), (x < 1) & (y > 1), (x < 1) & (y < 1)],
        [(1.5, 0, 0, 1.5), (0.5323, 1.206, 0, 0.3), (0.138, 1.206, 1.206, 0.029), (0.5323, 0, 1.206, 0.3)],
        x.shape,
    )


def _explosion(x, y):
    return _pick([x * x + y * y < 0.16], [(1, 0, 0, 1), (0.125, 0, 0, 0.1)], x.shape)


def _implosion(x, y):
    return _pick([np.abs(x) + np.abs(y) < 0.15], [(0.125, 0, 0, 0.14), (1, 0, 0, 1)], x.shape)


KH_SMOOTHING = 0.00625


def _kelvin_helmholtz(x, y):
    L = KH_SMOOTHING
    rho = np.where(np.abs(y) < 0.25, 2.0, 1.0)
    u = np.select(
        [y < -0.25, y < 0, y < 0.25],
        [
            -0.5 + 0.5 * np.exp((y + 0.25) / L),
            0.5 - 0.5 * np.exp((-y - 0.25) / L),
            0.5 - 0.5 * np.exp((y - 0.25) / L),
        ],
        -0.5 + 0.5 * np.exp((0.25 - y) / L),
    )
    v = 0.01 * np.sin(4 * np.pi * x)
    return np.stack([rho, u, v, np.full_like(x, 1.5)])


RT_GAMMA = 5.0 / 3.0


def _rayleigh_taylor(x, y):
    lower = y < 0.5
    rho = np.where(lower, 2.0, 1.0)
    p = np.where(lower, 2 * y + 1, y + 1.5)
    c = np.sqrt(RT_GAMMA * p / rho)
    v = -0.025 * c * np.cos(8 * np.pi * x)
    return np.stack([rho, np.zeros_like(x), v, p])


def _free1():
    return BoundarySpec(Free(), Free())


def _registry() -> dict[str, BenchmarkCase]:
    wall, free = SolidWall(), Free()
    cases = [
        BenchmarkCase(
            "shock_bubble", 1, (-1.0, 1.0), _shock_bubble, BoundarySpec(wall, free), 1.4, 3.0,
            (200,), (200,), reference_grid=(4000,),
            description="left-moving shock hitting a dense bubble",
        ),
        BenchmarkCase(
            "shock_entropy", 1, (-5.0, 5.0), _shock_entropy, _free1(), 1.4, 5.0,
            (800,), (800,), reference_grid=(4000,),
            description="Mach 1.1 shock running into a density sine wave",
        ),
        BenchmarkCase(
            "stationary_contact", 1, (-1.0, 1.0), _stationary_contact, _free1(), 1.4, 0.03,
            (200,), (200,), reference_grid=(4000,),
            description="stationary contact with a strong shock and rarefaction",
        ),
        BenchmarkCase(
            "blast", 1, (0.0, 1.0), _blast, BoundarySpec(wall, wall), 1.4, 0.038,
            (400,), (400,), reference_grid=(4000,),
            description="interacting blast waves between reflecting walls",
        ),
        BenchmarkCase(
            "density_wave", 1, (-1.0, 1.0), _density_wave, BoundarySpec(Periodic(), Periodic()), 1.4, 0.1,
            (200,), (200,),
            description="smooth advected density wave for convergence studies",
        ),
        BenchmarkCase(
            "riemann2d_cfg3", 2, (0.0, 1.2, 0.0, 1.2), _riemann2d_cfg3, BoundarySpec.uniform(free, 2), 1.4, 1.0,
            (1000, 1000), (300, 300),
            description="four-quadrant Riemann problem",
        ),
        BenchmarkCase(
            "explosion", 2, (0.0, 1.5, 0.0, 1.5), _explosion, BoundarySpec(wall, free, wall, free), 1.4, 3.2,
            (400, 400), (200, 200),
            description="circular explosion in a quarter domain",
        ),
        BenchmarkCase(
            "implosion", 2, (0.0, 0.3, 0.0, 0.3), _implosion, BoundarySpec.uniform(wall, 2), 1.4, 2.5,
            (600, 600), (400, 400),
            description="diamond-shaped implosion in a closed box",
        ),
        BenchmarkCase(
            "kelvin_helmholtz", 2, (-0.5, 0.5, -0.5, 0.5), _kelvin_helmholtz, BoundarySpec.uniform(Periodic(), 2),
            1.4, 4.0, (1024, 1024), (256, 256),
            description="smoothed double shear layer",
        ),
        BenchmarkCase(
            "rayleigh_taylor", 2, (0.0, 0.25, 0.0, 1.0), _rayleigh_taylor,
            BoundarySpec(wall, wall, Dirichlet((2.0, 0.0, 0.0, 1.0), RT_GAMMA), Dirichlet((1.0, 0.0, 0.0, 2.5), RT_GAMMA)),
            RT_GAMMA, 2.95, (256, 1024), (128, 512), source=SourceSpec("gravity"),
            description="heavy fluid above light fluid under upward gravity",
        ),
    ]
    return {c.name: c for c in cases}


CASES = _registry()
PAPER_CASES = tuple(n for n in CASES if n != "density_wave")


def make_case(name: str) -> BenchmarkCase:
    try:
        return CASES[name]
    except KeyError:
        raise KeyError(f"unknown case {name!r}; choose from {', '.join(CASES)}") from None


_CONDITIONS = {"free": Free, "wall": SolidWall, "periodic": Periodic}


def _condition(name: str):
    try:
        return _CONDITIONS[name]()
    except KeyError:
        raise ValueError(f"unknown boundary condition {name!r}; choose from {', '.join(_CONDITIONS)}") from None


def custom_case(spec: dict) -> BenchmarkCase:
    """Case from a parameterized initial-data family.

    Families:

    * ``riemann1d``: ``left``/``right`` primitive states split at ``x0``;
    * ``riemann2d``: four quadrant states ``ne, nw, sw, se`` about ``(x0, y0)``.

    Other keys: ``domain`` (bounds), ``gamma``, ``t_final``, ``cells`` (grid),
    ``bc`` (one name for all sides or a list of per-side names, ordered
    left, right[, bottom, top]).
    """
    spec = dict(spec)
    family = spec.pop("family", None)
    try:
        gamma = float(spec.pop("gamma", 1.4))
        t_final = float(spec.pop("t_final"))
        bounds = tuple(float(b) for b in spec.pop("domain"))
        cells = tuple(int(n) for n in spec.pop("cells"))
        bc_names = spec.pop("bc", "free")
        if family == "riemann1d":
            left = tuple(spec.pop("left"))
            right = tuple(spec.pop("right"))
            x0 = float(spec.pop("x0"))
            ndim = 1

            def ic(x):
                return _pick([x < x0], [left, right], x.shape)

        elif family == "riemann2d":
            states = [tuple(spec.pop(k)) for k in ("ne", "nw", "sw", "se")]
            x0 = float(spec.pop("x0"))
            y0 = float(spec.pop("y0"))
            ndim = 2

            def ic(x, y):
                return _pick([(x > x0) & (y > y0), (x < x0) & (y > y0), (x < x0) & (y < y0)], states, x.shape)

        else:
            raise ValueError(f"unknown initial-data family {family!r}; choose riemann1d or riemann2d")
    except KeyError as err:
        raise ValueError(f"custom problem is missing key {err.args[0]!r}") from None
    if spec:
        raise ValueError(f"unexpected keys in custom problem: {', '.join(sorted(spec))}")
    if len(bounds) != 2 * ndim or len(cells) != ndim:
        raise ValueError(f"domain and cells do not describe a {ndim}-D problem")
    names = [bc_names] * (2 * ndim) if isinstance(bc_names, str) else list(bc_names)
    if len(names) != 2 * ndim:
        raise ValueError(f"need {2 * ndim} boundary conditions")
    bc = BoundarySpec(*[_condition(n) for n in names])
    return BenchmarkCase(f"custom_{family}", ndim, bounds, ic, bc, gamma, t_final, cells, cells)
