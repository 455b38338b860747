"""Piecewise-linear reconstruction with the generalized minmod limiter.

Interface values at ``x_{j+1/2}`` are built from the four cell averages
``U_{j-1}, U_j, U_{j+1}, U_{j+2}`` (a *window*).  In characteristic mode the
window is first projected with the interface's ``R^{-1}``, limited field by
field, and mapped back with ``R``.  Conservative mode limits the conserved
components directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from ._numba import kernel

from .euler import CharacteristicBasis


def minmod(*z):
    """Element-wise minmod of any number of arguments.

    The smallest argument if all are positive, the largest if all are
    negative, zero otherwise.
    """
    if not z:
        raise ValueError("minmod needs at least one argument")
    z = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in z))
    stack = np.stack(z)
    lo = stack.min(axis=0)
    hi = stack.max(axis=0)
    out = np.where(lo > 0, lo, np.where(hi < 0, hi, 0.0))
    return out[()] if out.ndim == 0 else out


@kernel(inline="always")
def minmod3(a, b, c):
    lo = min(a, min(b, c))
    hi = max(a, max(b, c))
    if lo > 0.0:
        return lo
    if hi < 0.0:
        return hi
    return 0.0


@kernel
def matvec_row(M, x, out):
    """``out[:, k] = M[:, :, k] @ x[:, k]`` for every column ``k``."""
    d, n = x.shape
    for i in range(d):
        for k in range(n):
            out[i, k] = M[i, 0, k] * x[0, k]
        for j in range(1, d):
            for k in range(n):
                out[i, k] += M[i, j, k] * x[j, k]


@kernel
def increments_row(g0, g1, g2, g3, dx, dm, dp, gm, gp):
    """Limited half-cell increments ``dm, dp`` and the one-sided values
    ``gm = g1 + dm``, ``gp = g2 + dp``."""
    d, n = g0.shape
    h = 0.5 * dx
    for i in range(d):
        for k in range(n):
            sj = minmod3(
                2.0 * (g1[i, k] - g0[i, k]) / dx,
                (g2[i, k] - g0[i, k]) / (2.0 * dx),
                2.0 * (g2[i, k] - g1[i, k]) / dx,
            )
            sj1 = minmod3(
                2.0 * (g2[i, k] - g1[i, k]) / dx,
                (g3[i, k] - g1[i, k]) / (2.0 * dx),
                2.0 * (g3[i, k] - g2[i, k]) / dx,
            )
            dm[i, k] = h * sj
            dp[i, k] = -h * sj1
            gm[i, k] = g1[i, k] + dm[i, k]
            gp[i, k] = g2[i, k] + dp[i, k]


@kernel
def matvec_add_row(M, x, base, out):
    """``out[:, k] = base[:, k] + M[:, :, k] @ x[:, k]``."""
    d, n = x.shape
    for i in range(d):
        for k in range(n):
            out[i, k] = M[i, 0, k] * x[0, k]
        for j in range(1, d):
            for k in range(n):
                out[i, k] += M[i, j, k] * x[j, k]
        for k in range(n):
            out[i, k] += base[i, k]


@dataclass(frozen=True)
class InterfacePair:
    """One-sided values at an interface.

    ``u_minus`` is the value from the left cell, ``u_plus`` from the right.
    The characteristic values ``gamma_*`` and ``basis`` are only set in
    characteristic mode.
    """

    u_minus: np.ndarray
    u_plus: np.ndarray
    gamma_minus: np.ndarray | None = None
    gamma_plus: np.ndarray | None = None
    basis: CharacteristicBasis | None = None


def _columns(window):
    w = np.asarray(window, dtype=float)
    if w.ndim != 2 or w.shape[0] != 4:
        raise ValueError("a window holds exactly four cell states")
    return [np.ascontiguousarray(w[m][:, None]) for m in range(4)]


def lcd_interface_states(window, basis: CharacteristicBasis, dx: float) -> InterfacePair:
    """Characteristic reconstruction at the interface between window cells 1 and 2.

    The limited increments are mapped back with ``R`` and added to the cell
    averages, so a flat window reproduces its state exactly.
    """
    cols = _columns(window)
    d = cols[0].shape[0]
    R = np.ascontiguousarray(basis.R[:, :, None])
    Ri = np.ascontiguousarray(basis.Rinv[:, :, None])
    g = [np.empty((d, 1)) for _ in range(4)]
    for src, dst in zip(cols, g):
        matvec_row(Ri, src, dst)
    dm, dp, gm, gp, um, up = (np.empty((d, 1)) for _ in range(6))
    increments_row(g[0], g[1], g[2], g[3], dx, dm, dp, gm, gp)
    matvec_add_row(R, dm, cols[1], um)
    matvec_add_row(R, dp, cols[2], up)
    return InterfacePair(um[:, 0], up[:, 0], gm[:, 0], gp[:, 0], basis)


def conservative_interface_states(window, dx: float) -> InterfacePair:
    """Component-wise reconstruction of the conserved variables."""
    cols = _columns(window)
    d = cols[0].shape[0]
    dm, dp, um, up = (np.empty((d, 1)) for _ in range(4))
    increments_row(cols[0], cols[1], cols[2], cols[3], dx, dm, dp, um, up)
    return InterfacePair(um[:, 0], up[:, 0], um[:, 0].copy(), up[:, 0].copy())
