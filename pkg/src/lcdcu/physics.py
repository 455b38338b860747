"""Model dispatch for the compiled kernels.

A model is an integer code plus a flat float parameter vector, which keeps
the kernels free of Python objects.  Only two models exist: the Euler
equations (``params = [gamma]``) and a constant-coefficient linear system
(``params = LinearSystem.params``).
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np
from ._numba import kernel

from . import euler, linear

EULER = 0
LINEAR = 1


class Model(NamedTuple):
    code: int
    params: np.ndarray
    nvar: int


def euler_model(gamma: float, nvar: int) -> Model:
    return Model(EULER, np.array([gamma], dtype=float), nvar)


def linear_model(system: linear.LinearSystem) -> Model:
    return Model(LINEAR, system.params, system.nvar)


@kernel
def flux_row(model, params, u, out):
    if model == EULER:
        euler.flux_row(u, params[0], out)
    else:
        linear.flux_row(u, params, out)


@kernel
def eigenvalues_row(model, params, u, lam, ok):
    if model == EULER:
        euler.eigenvalues_row(u, params[0], lam, ok)
    else:
        linear.eigenvalues_row(u, params, lam, ok)


@kernel
def basis_row(model, params, uL, uR, R, Ri, ok):
    if model == EULER:
        euler.basis_row(uL, uR, params[0], R, Ri, ok)
    else:
        linear.basis_row(uL, uR, params, R, Ri, ok)


@kernel
def fallback_row(model, params, u, cell, g, gcell):
    """Replace inadmissible one-sided values by the cell average.

    Columns of ``u`` with non-positive density or pressure are overwritten
    by ``cell`` (and ``g`` by ``gcell``); returns the number of replacements.
    """
    if model != EULER:
        return 0
    gamma = params[0]
    d, n = u.shape
    count = 0
    for k in range(n):
        rho = u[0, k]
        kin = 0.0
        for c in range(1, d - 1):
            kin += u[c, k] * u[c, k]
        p = (gamma - 1.0) * (u[d - 1, k] - 0.5 * kin / rho)
        if not (rho > 0.0 and p > 0.0):
            for c in range(d):
                u[c, k] = cell[c, k]
                g[c, k] = gcell[c, k]
            count += 1
    return count
