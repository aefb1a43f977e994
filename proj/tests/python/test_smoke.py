# Copyright (c) 2026 The vortexlab Authors
# SPDX-License-Identifier: Apache-2.0

import math

import numpy as np
import pytest

import vortexlab as vl


@pytest.fixture(scope="module")
def single():
    return vl.solve_taubes("0,0", n=129, half_width=12.0)


def test_solve_single_vortex(single):
    assert abs(single.energy - 2 * math.pi) / (2 * math.pi) < 5e-3
    assert single.degree == 1
    assert single.r0.shape == (129, 129)
    assert single.r0[64, 64] == 0.0
    assert vl.taubes_residual(single) == pytest.approx(single.residual_sup, rel=1e-12)


def test_bad_zero_raises():
    with pytest.raises(vl.InputError, match="zero too close to boundary"):
        vl.solve_taubes("9,0", n=129, half_width=12.0)


def test_radial_profile_matches_solver(single):
    rho, f, slope = vl.radial_profile(16.0, 4000)
    assert f[0] == 0.0
    assert abs(f[-1] - 1.0) < 1e-6
    x = np.array([single.grid.coord(i) for i in range(64, 129)])
    ode = np.interp(x, rho, f)
    assert np.max(np.abs(ode - single.r0[64, 64:])) < 1e-2


def test_discrepancy_zero_perturbation(single):
    z = np.zeros_like(single.r0)
    rep = vl.discrepancy(single, z, z, z)
    assert rep["total"] < 1e-4
    with pytest.raises(vl.InputError):
        vl.discrepancy(single, np.zeros((3, 3)), z, z)


def test_sweep_rows(single):
    rows = vl.stability_sweep(single, [0.1, 0.05], [0.5])
    assert len(rows) == 2
    assert rows[0]["discrepancy"] > rows[1]["discrepancy"] > 0
    assert rows[1]["ratio_discrepancy_dist"] > 0


def test_cover(single):
    cover = vl.cover_vortex_set(single)
    assert len(cover["balls"]) == 1
    assert all(cover["check"].values())


def test_hodge_and_hardy():
    g = vl.Grid(129, 8.0)
    x = np.array([g.coord(i) for i in range(g.n)])
    X, Y = np.meshgrid(x, x)
    bump = np.exp(-((X - 0.5) ** 2 + Y**2))
    bump[np.hypot(X - 0.5, Y) > 3.0] = 0.0
    bump[:4, :] = bump[-4:, :] = bump[:, :4] = bump[:, -4:] = 0.0
    parts = vl.hodge_decompose(g, [(0.0625, 0.0625)], bump, 0.5 * bump, tol=1e-8)
    assert parts["weighted_residual"] <= 1e-8
    assert parts["standard_residual"] <= 1e-8
    lhs, rhs = vl.hardy_gap(g, [(0.0625, 0.0625)], [1.0], bump)
    assert 0 < lhs < rhs


def test_polynomial_exact_case():
    eps = 1e-3
    rep = vl.comparable_polynomial([0.0], lambda z: complex(eps), 1)
    assert abs(rep["roots_Q"][0][0] + eps) < 1e-15
    assert rep["lambda_measured"] == pytest.approx(1.0, abs=1e-12)
    a = vl.find_zero([0.3, -0.3], lambda z: 1e-3 * z, 2)
    assert min(abs(a - 0.3), abs(a + 0.3)) < 1e-2


def test_poly_suite_rows():
    rows = vl.poly_suite(2, 2, 1e-3)
    assert len(rows) == 4
    assert all(r["max_root_modulus"] < 2 / 3 for r in rows)


def test_gradient_check(single):
    assert vl.gradient_check(single, directions=3) <= 1e-5


def test_config_hash_is_order_independent():
    assert vl.config_hash({"a": 1, "b": 2}) == vl.config_hash({"b": 2, "a": 1})
