"""LCD-based central-upwind flux.

The numerical diffusion of the central-upwind flux is split over the
characteristic fields of the averaged Jacobian.  Each field ``i`` gets its own
one-sided speeds ``lam_plus_i >= 0 >= lam_minus_i`` and hence its own weights

    (P_i, M_i, Q_i) = (lam_plus, -lam_minus, lam_plus * lam_minus) / (lam_plus - lam_minus)

(all zero when ``lam_plus - lam_minus <= epsilon``).  The flux is

    F = Fbar + R [P R^-1 (F- - Fbar) + M R^-1 (F+ - Fbar) + Q (G+ - G-)]

with ``Fbar`` the mean of the fluxes at the two neighbouring cell averages.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from ._numba import kernel

from . import euler
from .euler import CharacteristicBasis
from .flux_cu import EPSILON
from .reconstruct import lcd_interface_states, matvec_row


@dataclass(frozen=True)
class FieldSpeeds:
    lam_plus: np.ndarray
    lam_minus: np.ndarray


@dataclass(frozen=True)
class LcdCoefficients:
    p: np.ndarray
    m: np.ndarray
    q: np.ndarray


@kernel
def field_speeds_row(lm, lp, lam_plus, lam_minus):
    d, n = lm.shape
    for i in range(d):
        for k in range(n):
            lam_plus[i, k] = max(max(lm[i, k], lp[i, k]), 0.0)
            lam_minus[i, k] = min(min(lm[i, k], lp[i, k]), 0.0)


@kernel
def coefficients_row(lam_plus, lam_minus, eps, P, M, Q):
    d, n = lam_plus.shape
    for i in range(d):
        for k in range(n):
            a = lam_plus[i, k]
            b = lam_minus[i, k]
            den = a - b
            active = den > eps
            P[i, k] = a / den if active else 0.0
            M[i, k] = -b / den if active else 0.0
            Q[i, k] = a * b / den if active else 0.0


@kernel
def lcd_combine_row(R, Ri, gm, gp, fm, fp, fbar, P, M, Q, s1, s2, s3, s4, out):
    d, n = gm.shape
    for i in range(d):
        for k in range(n):
            s1[i, k] = fm[i, k] - fbar[i, k]
            s2[i, k] = fp[i, k] - fbar[i, k]
    matvec_row(Ri, s1, s3)
    matvec_row(Ri, s2, s4)
    for i in range(d):
        for k in range(n):
            s1[i, k] = P[i, k] * s3[i, k] + M[i, k] * s4[i, k] + Q[i, k] * (gp[i, k] - gm[i, k])
    matvec_row(R, s1, out)
    for i in range(d):
        for k in range(n):
            out[i, k] += fbar[i, k]


def per_field_speeds(u_minus, u_plus, gamma: float, direction: str = "x") -> FieldSpeeds:
    lm = euler.eigenvalues(u_minus, gamma, direction)[:, None]
    lp = euler.eigenvalues(u_plus, gamma, direction)[:, None]
    a = np.empty_like(lm)
    b = np.empty_like(lm)
    field_speeds_row(lm, lp, a, b)
    return FieldSpeeds(a[:, 0], b[:, 0])


def lcd_coefficients(s: FieldSpeeds, epsilon: float = EPSILON) -> LcdCoefficients:
    a = np.ascontiguousarray(np.asarray(s.lam_plus, dtype=float)[:, None])
    b = np.ascontiguousarray(np.asarray(s.lam_minus, dtype=float)[:, None])
    P, M, Q = (np.empty_like(a) for _ in range(3))
    coefficients_row(a, b, epsilon, P, M, Q)
    return LcdCoefficients(P[:, 0], M[:, 0], Q[:, 0])


def assemble_lcd_flux(
    basis: CharacteristicBasis,
    gamma_minus,
    gamma_plus,
    f_minus,
    f_plus,
    f_bar,
    speeds: FieldSpeeds,
    epsilon: float = EPSILON,
) -> np.ndarray:
    """Flux from already computed pieces; the speeds may be synthetic."""
    col = lambda v: np.ascontiguousarray(np.asarray(v, dtype=float)[:, None])  # noqa: E731
    coef = lcd_coefficients(speeds, epsilon)
    d = len(f_bar)
    scratch = [np.empty((d, 1)) for _ in range(5)]
    lcd_combine_row(
        np.ascontiguousarray(basis.R[:, :, None]),
        np.ascontiguousarray(basis.Rinv[:, :, None]),
        col(gamma_minus), col(gamma_plus), col(f_minus), col(f_plus), col(f_bar),
        col(coef.p), col(coef.m), col(coef.q),
        *scratch,
    )
    return scratch[-1][:, 0]


def lcd_flux(window, gamma: float, dx: float, direction: str = "x", epsilon: float = EPSILON) -> np.ndarray:
    """LCD central-upwind flux at the interface between window cells 1 and 2.

    ``window`` holds the four cell averages ``U_{j-1} .. U_{j+2}`` as rows.
    """
    w = np.asarray(window, dtype=float)
    h = euler.hat_average(w[1], w[2], gamma, direction)
    basis = euler.lcd_basis(h, gamma, direction)
    pair = lcd_interface_states(w, basis, dx)
    speeds = per_field_speeds(pair.u_minus, pair.u_plus, gamma, direction)
    fm = euler.flux(pair.u_minus, gamma, direction)
    fp = euler.flux(pair.u_plus, gamma, direction)
    fbar = 0.5 * (euler.flux(w[1], gamma, direction) + euler.flux(w[2], gamma, direction))
    return assemble_lcd_flux(basis, pair.gamma_minus, pair.gamma_plus, fm, fp, fbar, speeds, epsilon)
