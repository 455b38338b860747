"""Constant-coefficient linear hyperbolic systems ``U_t + A U_x = 0``.

Used as a drop-in replacement for the Euler physics inside the same flux
assembly code, which makes the upwind reduction of the LCD scheme directly
testable.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from ._numba import kernel


@dataclass(frozen=True)
class LinearSystem:
    A: np.ndarray
    R: np.ndarray = field(init=False, repr=False)
    Rinv: np.ndarray = field(init=False, repr=False)
    lam: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("A must be square")
        lam, R = np.linalg.eig(A)
        if np.iscomplexobj(lam) and np.any(np.abs(lam.imag) > 0):
            raise ValueError("A is not hyperbolic (complex eigenvalues)")
        lam, R = lam.real, R.real
        order = np.argsort(lam)
        lam, R = lam[order], R[:, order]
        if np.any(np.diff(lam) <= 0):
            raise ValueError("eigenvalues of A must be distinct")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "Rinv", np.linalg.inv(R))
        object.__setattr__(self, "lam", lam)

    @classmethod
    def from_eigen(cls, R, lam) -> "LinearSystem":
        R = np.asarray(R, dtype=float)
        return cls(R @ np.diag(lam) @ np.linalg.inv(R))

    @property
    def nvar(self) -> int:
        return self.A.shape[0]

    @property
    def params(self) -> np.ndarray:
        """Flat parameter vector ``[A, R, Rinv, lam]`` read by the kernels."""
        return np.concatenate([self.A.ravel(), self.R.ravel(), self.Rinv.ravel(), self.lam])

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        """``(A+, A-) = (R max(L, 0) R^-1, R min(L, 0) R^-1)``."""
        plus = self.R @ np.diag(np.maximum(self.lam, 0.0)) @ self.Rinv
        minus = self.R @ np.diag(np.minimum(self.lam, 0.0)) @ self.Rinv
        return plus, minus


@kernel
def flux_row(u, params, out):
    d, n = u.shape
    for i in range(d):
        for k in range(n):
            out[i, k] = params[i * d] * u[0, k]
        for j in range(1, d):
            a = params[i * d + j]
            for k in range(n):
                out[i, k] += a * u[j, k]


@kernel
def eigenvalues_row(u, params, lam, ok):
    d, n = u.shape
    base = 3 * d * d
    for i in range(d):
        for k in range(n):
            lam[i, k] = params[base + i]


@kernel
def basis_row(uL, uR, params, R, Ri, ok):
    d, n = uL.shape
    for i in range(d):
        for j in range(d):
            r = params[d * d + i * d + j]
            ri = params[2 * d * d + i * d + j]
            for k in range(n):
                R[i, j, k] = r
                Ri[i, j, k] = ri
