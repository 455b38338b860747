"""Euler equations of gas dynamics for an ideal gas.

The ``*_row`` kernels work on arrays of shape ``(nvar, n)``: ``n`` independent
states (or interfaces) laid out along the fast axis so the inner loops
vectorize.  They only know the x-direction.  Everything in the y-direction is
obtained by swapping the two momentum components on the way in and, for the
eigenvector matrices, permuting rows of ``R`` and columns of ``R^{-1}``.

The public functions are thin wrappers around the same kernels for single
states, with the ``direction`` argument handled here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from ._numba import kernel

from .grid import DomainError, cons_to_prim

# momentum swap for the y-direction in 2-D
SWAP_XY = np.array([0, 2, 1, 3])


@kernel
def flux_row(u, gamma, out):
    d, n = u.shape
    gm1 = gamma - 1.0
    if d == 4:
        for k in range(n):
            rho = u[0, k]
            vx = u[1, k] / rho
            p = gm1 * (u[3, k] - 0.5 * (u[1, k] * u[1, k] + u[2, k] * u[2, k]) / rho)
            out[0, k] = u[1, k]
            out[1, k] = u[1, k] * vx + p
            out[2, k] = u[2, k] * vx
            out[3, k] = vx * (u[3, k] + p)
    else:
        for k in range(n):
            rho = u[0, k]
            vx = u[1, k] / rho
            p = gm1 * (u[2, k] - 0.5 * u[1, k] * u[1, k] / rho)
            out[0, k] = u[1, k]
            out[1, k] = u[1, k] * vx + p
            out[2, k] = vx * (u[2, k] + p)


@kernel
def eigenvalues_row(u, gamma, lam, ok):
    """Ascending eigenvalues ``(u-c, u, [u,] u+c)``; clears ``ok`` where the
    state is not admissible."""
    d, n = u.shape
    gm1 = gamma - 1.0
    for k in range(n):
        rho = u[0, k]
        kin = u[1, k] * u[1, k]
        if d == 4:
            kin += u[2, k] * u[2, k]
        p = gm1 * (u[d - 1, k] - 0.5 * kin / rho)
        good = rho > 0.0 and p > 0.0
        c = np.sqrt(gamma * abs(p) / abs(rho))
        vx = u[1, k] / rho
        lam[0, k] = vx - c
        lam[1, k] = vx
        lam[d - 1, k] = vx + c
        ok[k] = ok[k] and good
    if d == 4:
        for k in range(n):
            lam[2, k] = lam[1, k]


@kernel(inline="always")
def hat_state(rl, ul, vl, pl, rr, ur, vr, pr, gamma):
    """Arithmetic interface averages: (rho, u, v, p, E, H, c, phi)."""
    rho = 0.5 * (rl + rr)
    u = 0.5 * (ul + ur)
    v = 0.5 * (vl + vr)
    p = 0.5 * (pl + pr)
    q2 = u * u + v * v
    E = p / (gamma - 1.0) + 0.5 * rho * q2
    H = (E + p) / rho
    c = np.sqrt(gamma * p / rho)
    phi = 2.0 * H - q2
    return rho, u, v, p, E, H, c, phi


@kernel(inline="always")
def set_basis(d, u, v, H, c, phi, R, Ri, k):
    a = phi / (2.0 * c)
    f = 1.0 / phi
    if d == 3:
        R[0, 0, k] = 1.0
        R[0, 1, k] = 1.0
        R[0, 2, k] = 1.0
        R[1, 0, k] = u - c
        R[1, 1, k] = u
        R[1, 2, k] = u + c
        R[2, 0, k] = H - u * c
        R[2, 1, k] = 0.5 * u * u
        R[2, 2, k] = H + u * c
        Ri[0, 0, k] = (0.5 * u * u + u * a) * f
        Ri[0, 1, k] = (-u - a) * f
        Ri[0, 2, k] = f
        Ri[1, 0, k] = (2.0 * phi - 2.0 * H) * f
        Ri[1, 1, k] = 2.0 * u * f
        Ri[1, 2, k] = -2.0 * f
        Ri[2, 0, k] = (0.5 * u * u - u * a) * f
        Ri[2, 1, k] = (-u + a) * f
        Ri[2, 2, k] = f
    else:
        q2 = 0.5 * (u * u + v * v)
        R[0, 0, k] = 1.0
        R[0, 1, k] = 1.0
        R[0, 2, k] = 0.0
        R[0, 3, k] = 1.0
        R[1, 0, k] = u - c
        R[1, 1, k] = u
        R[1, 2, k] = 0.0
        R[1, 3, k] = u + c
        R[2, 0, k] = v
        R[2, 1, k] = v
        R[2, 2, k] = 1.0
        R[2, 3, k] = v
        R[3, 0, k] = H - u * c
        R[3, 1, k] = q2
        R[3, 2, k] = v
        R[3, 3, k] = H + u * c
        Ri[0, 0, k] = (q2 + u * a) * f
        Ri[0, 1, k] = (-u - a) * f
        Ri[0, 2, k] = -v * f
        Ri[0, 3, k] = f
        Ri[1, 0, k] = (2.0 * phi - 2.0 * H) * f
        Ri[1, 1, k] = 2.0 * u * f
        Ri[1, 2, k] = 2.0 * v * f
        Ri[1, 3, k] = -2.0 * f
        Ri[2, 0, k] = -v * phi * f
        Ri[2, 1, k] = 0.0
        Ri[2, 2, k] = phi * f
        Ri[2, 3, k] = 0.0
        Ri[3, 0, k] = (q2 - u * a) * f
        Ri[3, 1, k] = (-u + a) * f
        Ri[3, 2, k] = -v * f
        Ri[3, 3, k] = f


@kernel
def basis_row(uL, uR, gamma, R, Ri, ok):
    """Eigenvector matrices of the Jacobian at the averaged interface state."""
    d, n = uL.shape
    gm1 = gamma - 1.0
    for k in range(n):
        rl = uL[0, k]
        rr = uR[0, k]
        ul = uL[1, k] / rl
        ur = uR[1, k] / rr
        vl = 0.0
        vr = 0.0
        if d == 4:
            vl = uL[2, k] / rl
            vr = uR[2, k] / rr
        pl = gm1 * (uL[d - 1, k] - 0.5 * rl * (ul * ul + vl * vl))
        pr = gm1 * (uR[d - 1, k] - 0.5 * rr * (ur * ur + vr * vr))
        rho, u, v, p, E, H, c, phi = hat_state(rl, ul, vl, pl, rr, ur, vr, pr, gamma)
        ok[k] = ok[k] and rho > 0.0 and p > 0.0
        set_basis(d, u, v, H, c, phi, R, Ri, k)


# --- public single-state API ------------------------------------------------


@dataclass(frozen=True)
class HatState:
    """Averaged interface state; ``v`` is 0 and unused in 1-D."""

    nvar: int
    rho: float
    u: float
    v: float
    p: float
    E: float
    H: float
    c: float
    phi: float

    def conserved(self) -> np.ndarray:
        if self.nvar == 3:
            return np.array([self.rho, self.rho * self.u, self.E])
        return np.array([self.rho, self.rho * self.u, self.rho * self.v, self.E])


@dataclass(frozen=True)
class CharacteristicBasis:
    R: np.ndarray
    Rinv: np.ndarray
    lam: np.ndarray


def _oriented(u, direction):
    u = np.asarray(u, dtype=float)
    if direction == "x":
        return u
    if direction != "y":
        raise ValueError(f"unknown direction {direction!r}")
    if u.shape[0] != 4:
        raise ValueError("the y-direction only exists in 2-D")
    return u[SWAP_XY]


def flux(u, gamma: float, direction: str = "x") -> np.ndarray:
    """Physical flux ``F(U)`` (or ``G(U)`` for ``direction="y"``)."""
    w = _oriented(u, direction)
    col = w.reshape(w.shape[0], -1)
    out = np.empty_like(col)
    flux_row(np.ascontiguousarray(col), gamma, out)
    out = out.reshape(w.shape)
    return out if direction == "x" else out[SWAP_XY]


def eigenvalues(u, gamma: float, direction: str = "x") -> np.ndarray:
    """Ascending eigenvalues of the flux Jacobian in ``direction``."""
    w = _oriented(u, direction)
    col = np.ascontiguousarray(w.reshape(w.shape[0], -1))
    lam = np.empty_like(col)
    ok = np.ones(col.shape[1], dtype=np.bool_)
    eigenvalues_row(col, gamma, lam, ok)
    if not ok.all():
        raise DomainError("eigenvalues requested for an inadmissible state")
    return lam.reshape(w.shape)


def hat_average(uL, uR, gamma: float, direction: str = "x") -> HatState:
    """Arithmetic averages of ``(rho, u, [v], p)`` between two cell states.

    The average is component-wise in physical variables, so it does not
    depend on ``direction``; the argument is accepted for symmetry with the
    rest of the interface.
    """
    _oriented(uL, direction)
    pl = cons_to_prim(uL, gamma)
    pr = cons_to_prim(uR, gamma)
    nvar = pl.shape[0]
    vl = pl[2] if nvar == 4 else 0.0
    vr = pr[2] if nvar == 4 else 0.0
    vals = hat_state(pl[0], pl[1], vl, pl[-1], pr[0], pr[1], vr, pr[-1], gamma)
    return HatState(nvar, *(float(x) for x in vals))


def lcd_basis(h: HatState, gamma: float, direction: str = "x") -> CharacteristicBasis:
    """Right/left eigenvector matrices of the averaged Jacobian.

    ``lam`` follows the column order of ``R``: ``(un - c, un, [un,] un + c)``
    with ``un`` the velocity normal to the interface.
    """
    if not (h.rho > 0 and h.p > 0):
        raise DomainError("hat state is not admissible")
    d = h.nvar
    un, ut = (h.u, h.v) if direction == "x" else (h.v, h.u)
    if direction == "y" and d != 4:
        raise ValueError("the y-direction only exists in 2-D")
    R = np.empty((d, d, 1))
    Ri = np.empty((d, d, 1))
    set_basis(d, un, ut, h.H, h.c, h.phi, R, Ri, 0)
    R, Ri = R[..., 0], Ri[..., 0]
    if direction == "y":
        R = R[SWAP_XY, :]
        Ri = Ri[:, SWAP_XY]
    lam = np.full(d, un)
    lam[0] -= h.c
    lam[-1] += h.c
    return CharacteristicBasis(R, Ri, lam)


def jacobian(u, gamma: float, direction: str = "x") -> np.ndarray:
    """Flux Jacobian ``dF/dU`` written out entry by entry."""
    w = _oriented(u, direction)
    g = gamma
    rho = w[0]
    if w.shape[0] == 3:
        vx = w[1] / rho
        E = w[2]
        p = (g - 1) * (E - 0.5 * rho * vx * vx)
        H = (E + p) / rho
        return np.array(
            [
                [0.0, 1.0, 0.0],
                [0.5 * (g - 3) * vx**2, (3 - g) * vx, g - 1],
                [-g * vx * E / rho + (g - 1) * vx**3, H - (g - 1) * vx**2, g * vx],
            ]
        )
    vx = w[1] / rho
    vy = w[2] / rho
    E = w[3]
    q2 = vx * vx + vy * vy
    p = (g - 1) * (E - 0.5 * rho * q2)
    H = (E + p) / rho
    A = np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [0.5 * (g - 3) * vx**2 + 0.5 * (g - 1) * vy**2, (3 - g) * vx, (1 - g) * vy, g - 1],
            [-vx * vy, vy, vx, 0.0],
            [-g * vx * E / rho + (g - 1) * vx * q2, H - (g - 1) * vx**2, (1 - g) * vx * vy, g * vx],
        ]
    )
    if direction == "y":
        A = A[np.ix_(SWAP_XY, SWAP_XY)]
    return A
