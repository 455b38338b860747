import numpy as np
import pytest
from hypothesis import given, strategies as st

from lcdcu import euler
from lcdcu.euler import CharacteristicBasis
from lcdcu.reconstruct import conservative_interface_states, lcd_interface_states, minmod

import oracles
from conftest import GAMMA, cons, random_prim

finite = st.floats(-1e6, 1e6, allow_nan=False)


@pytest.mark.parametrize("z, expected", [((1, 2, 3), 1), ((-1, 2, 1), 0), ((-2, -0.5, -1), -0.5)])
def test_minmod_examples(z, expected):
    assert minmod(*z) == expected


@given(st.lists(finite, min_size=1, max_size=5))
def test_minmod_properties(z):
    m = minmod(*z)
    assert abs(m) <= min(abs(a) for a in z)
    if m != 0:
        assert all(np.sign(a) == np.sign(m) for a in z)
    assert minmod(*reversed(z)) == m
    assert minmod(*(-a for a in z)) == -m
    assert minmod(*(2.0 * a for a in z)) == 2.0 * m


def test_minmod_elementwise():
    np.testing.assert_array_equal(minmod(np.array([1.0, -1.0]), np.array([2.0, -3.0]), 0.5), [0.5, 0.0])
    with pytest.raises(ValueError):
        minmod()


def _basis(window, direction="x"):
    return euler.lcd_basis(euler.hat_average(window[1], window[2], GAMMA), GAMMA, direction)


def test_flat_window_is_exact(rng):
    for ndim in (1, 2):
        for p in random_prim(rng, 20, ndim).T:
            u = cons(p)
            w = np.tile(u, (4, 1))
            for pair in (lcd_interface_states(w, _basis(w), 0.01), conservative_interface_states(w, 0.01)):
                np.testing.assert_array_equal(pair.u_minus, u)
                np.testing.assert_array_equal(pair.u_plus, u)


def test_linear_data_reproduces_midpoint(rng):
    a = cons((1.0, 0.3, 1.0))
    b = np.array([0.01, 0.02, 0.05])
    w = np.array([a + b * k for k in range(4)])
    basis = _basis(w)
    pair = lcd_interface_states(w, basis, 0.1)
    mid = a + 1.5 * b
    np.testing.assert_allclose(pair.u_minus, mid, rtol=1e-13)
    np.testing.assert_allclose(pair.u_plus, mid, rtol=1e-13)
    np.testing.assert_allclose(pair.gamma_minus, basis.Rinv @ mid, rtol=1e-12, atol=1e-14)
    cp = conservative_interface_states(w, 0.1)
    np.testing.assert_allclose(cp.u_minus, mid, rtol=1e-14)


def test_identity_basis_matches_conservative(rng):
    w = oracles.random_windows(rng, 50, 4)
    eye = CharacteristicBasis(np.eye(4), np.eye(4), np.zeros(4))
    for win in w:
        a = lcd_interface_states(win, eye, 0.02)
        b = conservative_interface_states(win, 0.02)
        np.testing.assert_array_equal(a.u_minus, b.u_minus)
        np.testing.assert_array_equal(a.u_plus, b.u_plus)


def test_characteristic_states_match_scalar_oracle(rng):
    for d in (3, 4):
        w = oracles.random_windows(rng, 200, d, spread=0.6)
        R, Ri = oracles.basis_x(w[:, 1], w[:, 2], GAMMA)
        g = np.einsum("nij,nmj->nmi", Ri, w)
        gm, gp = oracles.one_sided(g, 0.05)
        for k in range(len(w)):
            pair = lcd_interface_states(w[k], _basis(w[k]), 0.05)
            scale = np.abs(w[k]).max()
            np.testing.assert_allclose(pair.gamma_minus, gm[k], atol=1e-12 * np.abs(g[k]).max())
            np.testing.assert_allclose(pair.gamma_plus, gp[k], atol=1e-12 * np.abs(g[k]).max())
            np.testing.assert_allclose(pair.u_minus, R[k] @ pair.gamma_minus, atol=1e-12 * scale)
            np.testing.assert_allclose(pair.u_plus, R[k] @ pair.gamma_plus, atol=1e-12 * scale)


def test_density_jump_window():
    w = np.array([cons(p) for p in [(1, 0, 1), (1, 0, 1), (0.125, 0, 0.1), (0.125, 0, 0.1)]])
    pair = conservative_interface_states(w, 0.01)
    # the jump sits at the interface, so both sides stay flat
    np.testing.assert_array_equal(pair.u_minus, w[1])
    np.testing.assert_array_equal(pair.u_plus, w[2])


@given(st.lists(st.floats(-100, 100), min_size=4, max_size=4), st.floats(0.001, 10))
def test_reconstruction_scaling_and_bounds(vals, dx):
    w = np.array(sorted(vals, reverse=True))[:, None]
    pair = conservative_interface_states(w, dx)
    # monotone data: one-sided values stay within the neighbouring averages
    assert w[2, 0] - 1e-12 <= pair.u_minus[0] <= w[1, 0] + 1e-12
    assert w[2, 0] - 1e-12 <= pair.u_plus[0] <= w[1, 0] + 1e-12
    scaled = conservative_interface_states(3.0 * w, 2 * dx)
    np.testing.assert_allclose(scaled.u_minus, 3.0 * pair.u_minus, rtol=1e-12, atol=1e-9)


def test_window_shape_checked():
    with pytest.raises(ValueError):
        conservative_interface_states(np.zeros((3, 3)), 0.1)
