"""Uniform grids, ghost-padded fields and primitive/conserved conversion.

All state arrays keep the components on the leading axis:

* 1-D: ``(rho, rho*u, E)``, primitive ``(rho, u, p)``
* 2-D: ``(rho, rho*u, rho*v, E)``, primitive ``(rho, u, v, p)``

so a single state is a vector of length ``nvar`` and a whole field is an array
of shape ``(nvar, nx)`` or ``(nvar, nx, ny)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GHOST = 2


class DomainError(ValueError):
    """Raised for states outside the physical domain (rho <= 0 or p <= 0)."""


class AdmissibilityError(DomainError):
    """A state with non-positive density or pressure was produced.

    ``index`` holds the (component-free) array index of the first offending
    cell when known.
    """

    def __init__(self, message: str, index: tuple[int, ...] | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class Grid1D:
    xmin: float
    xmax: float
    n_cells: int

    def __post_init__(self):
        if self.n_cells < 1:
            raise ValueError("n_cells must be positive")
        if not self.xmax > self.xmin:
            raise ValueError("xmax must exceed xmin")

    ndim = 1

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.n_cells

    @property
    def shape(self) -> tuple[int]:
        return (self.n_cells,)

    @property
    def cell_volume(self) -> float:
        return self.dx

    def centers(self) -> np.ndarray:
        return self.xmin + (np.arange(self.n_cells) + 0.5) * self.dx

    def faces(self) -> np.ndarray:
        return self.xmin + np.arange(self.n_cells + 1) * self.dx


@dataclass(frozen=True)
class Grid2D:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("nx and ny must be positive")
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("empty domain")

    ndim = 2

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.nx

    @property
    def dy(self) -> float:
        return (self.ymax - self.ymin) / self.ny

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def cell_volume(self) -> float:
        return self.dx * self.dy

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Cell-center coordinates as two ``(nx, ny)`` arrays (ij indexing)."""
        x = self.xmin + (np.arange(self.nx) + 0.5) * self.dx
        y = self.ymin + (np.arange(self.ny) + 0.5) * self.dy
        return np.meshgrid(x, y, indexing="ij")


Grid = Grid1D | Grid2D


class Field:
    """Cell averages on a grid, padded with ``GHOST`` layers on every side.

    ``q`` has shape ``(nvar, nx + 4)`` or ``(nvar, nx + 4, ny + 4)``;
    ``interior`` is a writable view of the physical cells.
    """

    def __init__(self, grid: Grid, q: np.ndarray):
        expected = tuple(n + 2 * GHOST for n in grid.shape)
        if q.ndim != grid.ndim + 1 or q.shape[1:] != expected:
            raise ValueError(f"array of shape {q.shape} does not fit grid {grid.shape}")
        self.grid = grid
        self.q = q

    @classmethod
    def zeros(cls, grid: Grid, nvar: int | None = None) -> "Field":
        nvar = grid.ndim + 2 if nvar is None else nvar
        return cls(grid, np.zeros((nvar,) + tuple(n + 2 * GHOST for n in grid.shape)))

    @classmethod
    def from_interior(cls, grid: Grid, values: np.ndarray) -> "Field":
        values = np.asarray(values, dtype=float)
        f = cls.zeros(grid, values.shape[0])
        f.interior[...] = values
        return f

    @classmethod
    def from_primitive(cls, grid: Grid, prim: np.ndarray, gamma: float) -> "Field":
        return cls.from_interior(grid, prim_to_cons(prim, gamma))

    @property
    def nvar(self) -> int:
        return self.q.shape[0]

    @property
    def ndim(self) -> int:
        return self.grid.ndim

    @property
    def interior(self) -> np.ndarray:
        g = GHOST
        if self.ndim == 1:
            return self.q[:, g:-g]
        return self.q[:, g:-g, g:-g]

    def copy(self) -> "Field":
        return Field(self.grid, self.q.copy())

    def totals(self) -> np.ndarray:
        """Per-component integral of the cell averages over the domain."""
        u = self.interior
        return u.reshape(u.shape[0], -1).sum(axis=1) * self.grid.cell_volume

    def primitive(self, gamma: float, check: bool = False) -> np.ndarray:
        return cons_to_prim(self.interior, gamma, check=check)


def prim_to_cons(prim, gamma: float) -> np.ndarray:
    """Map ``(rho, vel..., p)`` to ``(rho, mom..., E)`` along axis 0."""
    prim = np.asarray(prim, dtype=float)
    rho, vel, p = prim[0], prim[1:-1], prim[-1]
    if np.any(~(rho > 0)) or np.any(~(p > 0)):
        raise DomainError("density and pressure must be positive")
    if not gamma > 1:
        raise DomainError("gamma must exceed 1")
    out = np.empty_like(prim)
    out[0] = rho
    out[1:-1] = rho * vel
    kin = vel[0] ** 2
    for comp in vel[1:]:
        kin = kin + comp**2
    out[-1] = p / (gamma - 1.0) + 0.5 * rho * kin
    return out


def cons_to_prim(cons, gamma: float, check: bool = True) -> np.ndarray:
    """Inverse of :func:`prim_to_cons`.

    With ``check=True`` a non-positive pressure raises
    :class:`AdmissibilityError`; otherwise the value is returned as is and
    the caller decides what to do with it.
    """
    cons = np.asarray(cons, dtype=float)
    rho = cons[0]
    if np.any(~(rho > 0)):
        raise DomainError("density must be positive")
    out = np.empty_like(cons)
    out[0] = rho
    vel = cons[1:-1] / rho
    out[1:-1] = vel
    kin = vel[0] ** 2
    for comp in vel[1:]:
        kin = kin + comp**2
    out[-1] = (gamma - 1.0) * (cons[-1] - 0.5 * rho * kin)
    if check and np.any(~(out[-1] > 0)):
        bad = np.argwhere(~(out[-1] > 0))
        where = tuple(int(i) for i in bad[0]) if bad.size else None
        raise AdmissibilityError("non-positive pressure", where)
    return out
