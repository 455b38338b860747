"""Compiled interface sweeps shared by both schemes.

A sweep evaluates numerical fluxes along one direction for a stack of cell
rows laid out as ``qs[cell, component, line]``: ``cell`` runs along the sweep
direction (including two ghost cells on each side), ``line`` enumerates the
independent grid lines.  Interface ``i`` sits between cells ``i + 1`` and
``i + 2`` and uses the window ``qs[i:i + 4]``.

Everything is written for the x-direction; y-sweeps feed transposed,
momentum-swapped copies through the same code.
"""
from __future__ import annotations

import numpy as np
from numba import prange

from ._numba import kernel
from .flux_cu import cu_combine_row, speeds_row
from .flux_lcd import coefficients_row, field_speeds_row, lcd_combine_row
from .physics import basis_row, eigenvalues_row, fallback_row, flux_row
from .reconstruct import increments_row, matvec_add_row, matvec_row

OLD_CU = 0
NEW_CU = 1

CONSERVATIVE = 0
CHARACTERISTIC = 1
FIRST_ORDER = 2

NTEMP = 22


@kernel
def interface_row(q0, q1, q2, q3, model, params, scheme, recon, eps, dx, fallback, T, B, V, out, speed, ok):
    """Fluxes for one row of interfaces.

    ``ok`` is cleared where any state used by the flux is inadmissible.  With
    ``fallback`` set, inadmissible reconstructed values are first replaced by
    the adjacent cell averages; the number of replacements is returned.
    """
    d, n = q1.shape
    R = B[0]
    Ri = B[1]
    gm = T[4]
    gp = T[5]
    um = T[6]
    up = T[7]
    lm = T[8]
    lp = T[9]
    fm = T[10]
    fp = T[11]
    nfix = 0
    for k in range(n):
        ok[k] = True

    if scheme == NEW_CU or recon == CHARACTERISTIC:
        basis_row(model, params, q1, q2, R, Ri, ok)

    dm = T[20]
    dp = T[21]
    if recon == CHARACTERISTIC:
        matvec_row(Ri, q0, T[0])
        matvec_row(Ri, q1, T[1])
        matvec_row(Ri, q2, T[2])
        matvec_row(Ri, q3, T[3])
        increments_row(T[0], T[1], T[2], T[3], dx, dm, dp, gm, gp)
        matvec_add_row(R, dm, q1, um)
        matvec_add_row(R, dp, q2, up)
        if fallback:
            nfix += fallback_row(model, params, um, q1, gm, T[1])
            nfix += fallback_row(model, params, up, q2, gp, T[2])
    else:
        if recon == CONSERVATIVE:
            increments_row(q0, q1, q2, q3, dx, dm, dp, um, up)
            if fallback:
                nfix += fallback_row(model, params, um, q1, gm, gm)
                nfix += fallback_row(model, params, up, q2, gp, gp)
        else:
            um[:, :] = q1
            up[:, :] = q2
        if scheme == NEW_CU:
            matvec_row(Ri, um, gm)
            matvec_row(Ri, up, gp)

    eigenvalues_row(model, params, um, lm, ok)
    eigenvalues_row(model, params, up, lp, ok)
    flux_row(model, params, um, fm)
    flux_row(model, params, up, fp)

    for k in range(n):
        a = max(max(lm[d - 1, k], lp[d - 1, k]), 0.0)
        b = min(min(lm[0, k], lp[0, k]), 0.0)
        speed[k] = max(a, -b)

    if scheme == OLD_CU:
        speeds_row(lm, lp, V[0], V[1])
        cu_combine_row(um, up, fm, fp, V[0], V[1], eps, out)
    else:
        f1 = T[18]
        f2 = T[19]
        fbar = T[12]
        flux_row(model, params, q1, f1)
        flux_row(model, params, q2, f2)
        for i in range(d):
            for k in range(n):
                fbar[i, k] = 0.5 * (f1[i, k] + f2[i, k])
        field_speeds_row(lm, lp, T[16], T[17])
        coefficients_row(T[16], T[17], eps, T[13], T[14], T[15])
        lcd_combine_row(R, Ri, gm, gp, fm, fp, fbar, T[13], T[14], T[15], T[18], T[19], T[20], T[21], out)
    return nfix


@kernel
def sweep(qs, model, params, scheme, recon, eps, dx, fallback, F, speed, ok):
    """Fluxes at all ``qs.shape[0] - 3`` interfaces of a row stack; returns
    the number of reconstructed values replaced by cell averages."""
    nfix = 0
    nif = qs.shape[0] - 3
    d = qs.shape[1]
    n = qs.shape[2]
    T = np.empty((NTEMP, d, n))
    B = np.empty((2, d, d, n))
    V = np.empty((2, n))
    for i in range(nif):
        nfix += interface_row(
            qs[i], qs[i + 1], qs[i + 2], qs[i + 3], model, params, scheme, recon, eps, dx, fallback,
            T, B, V, F[i], speed[i], ok[i],
        )
    return nfix


@kernel(parallel=True)
def sweep_parallel(qs, model, params, scheme, recon, eps, dx, fallback, F, speed, ok, nblocks):
    """Same result as :func:`sweep`, with interface rows split into blocks."""
    nif = qs.shape[0] - 3
    d = qs.shape[1]
    n = qs.shape[2]
    fixes = np.zeros(nblocks, dtype=np.int64)
    for b in prange(nblocks):
        lo = b * nif // nblocks
        hi = (b + 1) * nif // nblocks
        T = np.empty((NTEMP, d, n))
        B = np.empty((2, d, d, n))
        V = np.empty((2, n))
        for i in range(lo, hi):
            fixes[b] += interface_row(
                qs[i], qs[i + 1], qs[i + 2], qs[i + 3], model, params, scheme, recon, eps, dx, fallback,
                T, B, V, F[i], speed[i], ok[i],
            )
    return fixes.sum()
