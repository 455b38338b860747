"""Grid-to-grid projection, Cesaro averages, error norms and snapshot files."""
from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .grid import Field, Grid, Grid2D, cons_to_prim
from .reconstruct import minmod

BIN_MAGIC = b"HCU1"


@dataclass(frozen=True)
class ScalarField:
    """One value per cell of ``grid`` (e.g. the density)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise ValueError(f"values of shape {v.shape} do not fit grid {self.grid.shape}")
        object.__setattr__(self, "values", v)

    def total(self) -> float:
        return float(self.values.sum() * self.grid.cell_volume)


def density(f: Field) -> ScalarField:
    return ScalarField(f.grid, f.interior[0].copy())


def _same_domain(a: Grid, b: Grid) -> bool:
    if a.ndim != b.ndim:
        return False
    if a.ndim == 1:
        return (a.xmin, a.xmax) == (b.xmin, b.xmax)
    return (a.xmin, a.xmax, a.ymin, a.ymax) == (b.xmin, b.xmax, b.ymin, b.ymax)


def _ratios(coarse: Grid, fine: Grid, pow2: bool = True) -> tuple[int, ...]:
    if not _same_domain(coarse, fine):
        raise ValueError("grids cover different domains")
    out = []
    for nc, nf in zip(coarse.shape, fine.shape):
        r = nf // nc
        if r * nc != nf or r < 1:
            raise ValueError(f"grids are not nested ({nc} -> {nf})")
        if pow2 and r & (r - 1):
            raise ValueError(f"grids are not nested by a power of two ({nc} -> {nf})")
        out.append(r)
    return tuple(out)


def _refine_axis(v: np.ndarray, axis: int, r: int, periodic: bool) -> np.ndarray:
    """Exact fine-cell averages of the minmod-limited linear reconstruction
    along ``axis`` (in units of the coarse spacing)."""
    if r == 1:
        return v.copy()
    w = np.moveaxis(v, axis, 0)
    if periodic:
        left = np.roll(w, 1, axis=0)
        right = np.roll(w, -1, axis=0)
    else:
        left = np.concatenate([w[:1], w[:-1]])
        right = np.concatenate([w[1:], w[-1:]])
    slope = minmod(2.0 * (w - left), 0.5 * (right - left), 2.0 * (right - w))
    if not periodic:
        slope[0] = 0.0
        slope[-1] = 0.0
    offsets = (np.arange(r) + 0.5) / r - 0.5
    fine = w[:, None] + slope[:, None] * offsets.reshape((1, r) + (1,) * (w.ndim - 1))
    fine = fine.reshape((w.shape[0] * r,) + w.shape[1:])
    return np.moveaxis(fine, 0, axis)


def project_refine(coarse: ScalarField, target: Grid, periodic: bool | tuple[bool, ...] = False) -> ScalarField:
    """Conservative projection onto a grid refined by powers of two.

    The coarse data is reconstructed with the factor-2 minmod limiter and
    averaged exactly over each fine cell, dimension by dimension.  Slopes at
    non-periodic domain edges are zero.
    """
    ratios = _ratios(coarse.grid, target)
    if isinstance(periodic, bool):
        periodic = (periodic,) * coarse.grid.ndim
    v = coarse.values
    for axis, (r, per) in enumerate(zip(ratios, periodic)):
        v = _refine_axis(v, axis, r, per)
    return ScalarField(target, v)


def restrict(fine: ScalarField, target: Grid) -> ScalarField:
    """Block averages of a fine field onto a coarser grid nested by any integer ratio."""
    ratios = _ratios(target, fine.grid, pow2=False)
    shape = []
    for n, r in zip(target.shape, ratios):
        shape += [n, r]
    v = fine.values.reshape(shape)
    for k in range(len(ratios)):
        v = v.mean(axis=k + 1)
    return ScalarField(target, v)


def cesaro_average(fields: list[ScalarField]) -> ScalarField:
    """Arithmetic mean of fields on a common grid, summed in list order."""
    if not fields:
        raise ValueError("need at least one field")
    grid = fields[0].grid
    acc = np.zeros(grid.shape)
    for f in fields:
        if f.grid != grid:
            raise ValueError("all fields must live on the same grid")
        acc += f.values
    return ScalarField(grid, acc / len(fields))


def l1_error(a: ScalarField, b: ScalarField) -> float:
    """``sum |a - b|`` times the cell volume."""
    if a.grid != b.grid:
        raise ValueError("l1_error needs fields on the same grid")
    return float(np.abs(a.values - b.values).sum() * a.grid.cell_volume)


def level_grid(case_bounds: tuple[float, ...], n: int) -> Grid2D:
    """Square 2-D grid with ``2**n`` cells per direction."""
    return Grid2D(*case_bounds, 2**n, 2**n)


# --- snapshot files ---------------------------------------------------------


def _columns(ndim: int, ncols: int | None = None) -> list[str]:
    if ncols == ndim + 1:
        return ["x", "rho"] if ndim == 1 else ["x", "y", "rho"]
    return ["x", "rho", "u", "p", "E"] if ndim == 1 else ["x", "y", "rho", "u", "v", "p", "E"]


def _write_table(path: Path, cols: list[str], shape: tuple[int, ...], table: np.ndarray, fmt: str) -> Path:
    if fmt == "csv":
        with open(path, "w") as fh:
            fh.write(",".join(cols) + "\n")
            np.savetxt(fh, table, fmt="%.17g", delimiter=",")
    elif fmt == "bin":
        with open(path, "wb") as fh:
            fh.write(BIN_MAGIC)
            fh.write(struct.pack("<II", len(shape), len(cols)))
            fh.write(struct.pack(f"<{len(shape)}I", *shape))
            fh.write(np.ascontiguousarray(table, dtype="<f8").tobytes())
    else:
        raise ValueError(f"unknown snapshot format {fmt!r}")
    return path


def snapshot_table(f: Field, gamma: float) -> tuple[list[str], np.ndarray]:
    """Rows of ``(x[, y], rho, u[, v], p, E)`` in row-major cell order."""
    prim = cons_to_prim(f.interior, gamma, check=False)
    E = f.interior[-1]
    if f.ndim == 1:
        coords = [f.grid.centers()]
    else:
        coords = list(f.grid.centers())
    cols = coords + [prim[i] for i in range(prim.shape[0])] + [E]
    return _columns(f.ndim), np.stack([c.ravel() for c in cols], axis=1)


def write_snapshot(f: Field, path, fmt: str = "csv", gamma: float = 1.4) -> Path:
    """Write a snapshot as CSV or as the little-endian binary layout

    ``b"HCU1"``, u32 ndim, u32 ncols, u32 cells per dimension, then the f64
    table row by row in the same column order as the CSV.
    """
    cols, table = snapshot_table(f, gamma)
    return _write_table(Path(path), cols, f.grid.shape, table, fmt)


def write_scalar(sf: ScalarField, path, fmt: str = "csv") -> Path:
    """Write ``x[, y], rho`` rows for a scalar field (same layouts as snapshots)."""
    if sf.grid.ndim == 1:
        coords = [sf.grid.centers()]
    else:
        coords = list(sf.grid.centers())
    table = np.stack([c.ravel() for c in coords] + [sf.values.ravel()], axis=1)
    return _write_table(Path(path), _columns(sf.grid.ndim, sf.grid.ndim + 1), sf.grid.shape, table, fmt)


@dataclass(frozen=True)
class Snapshot:
    columns: list[str]
    shape: tuple[int, ...]
    table: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.table[:, self.columns.index(name)].reshape(self.shape)


def read_snapshot(path) -> Snapshot:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(4)
        if head == BIN_MAGIC:
            ndim, ncols = struct.unpack("<II", fh.read(8))
            shape = struct.unpack(f"<{ndim}I", fh.read(4 * ndim))
            data = np.frombuffer(fh.read(), dtype="<f8").reshape(-1, ncols)
            if data.shape[0] != int(np.prod(shape)):
                raise ValueError(f"{path}: truncated payload")
            return Snapshot(_columns(ndim, ncols), tuple(shape), data.astype(float))
    with open(path) as fh:
        cols = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if "y" in cols:
        shape = (len(np.unique(data[:, 0])), len(np.unique(data[:, 1])))
    else:
        shape = (data.shape[0],)
    return Snapshot(cols, shape, data)
