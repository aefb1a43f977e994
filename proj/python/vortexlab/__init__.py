# Copyright (c) 2026 The vortexlab Authors
# SPDX-License-Identifier: Apache-2.0
"""Vortex minimizer numerics: Taubes solver, discrepancy, weighted calculus, selection."""

import json as _json

from . import _core
from ._core import (
    ConvergenceError,
    FieldIoError,
    Grid,
    InputError,
    InternalError,
    VortexSolution,
    find_zero,
    gradient_check,
    hardy_gap,
    hodge_decompose,
    hodge_gap,
    load_solution,
    radial_profile,
    save_solution,
    solve_taubes,
    taubes_residual,
    verify_solution_dir,
)

__all__ = [
    "ConvergenceError",
    "FieldIoError",
    "Grid",
    "InputError",
    "InternalError",
    "VortexSolution",
    "bump_discrepancy",
    "comparable_polynomial",
    "config_hash",
    "cover_vortex_set",
    "discrepancy",
    "find_zero",
    "gradient_check",
    "hardy_gap",
    "hodge_decompose",
    "hodge_gap",
    "load_solution",
    "poly_suite",
    "radial_profile",
    "save_solution",
    "selection_run",
    "sharpness",
    "solve_taubes",
    "stability_sweep",
    "taubes_residual",
    "verify_solution_dir",
]


def _table(result):
    columns, rows = result
    return [dict(zip(columns, row)) for row in rows]


def discrepancy(base, h_prime, b1, b2):
    """Perturbative discrepancy report for u = u0 exp(h'), A = A0 + B."""
    return _json.loads(_core.discrepancy(base, h_prime, b1, b2))


def bump_discrepancy(base, center, radius, amplitude, b_direction=(0.0, 0.0)):
    return _json.loads(_core.bump_discrepancy(base, center, radius, amplitude, b_direction))


def stability_sweep(base, t_list, eps_list):
    """Rows of the reference bump sweep as dicts keyed by column name."""
    return _table(_core.stability_sweep(base, list(t_list), list(eps_list)))


def sharpness(base, radii, amplitude=1.0):
    return _table(_core.sharpness(base, list(radii), amplitude))


def cover_vortex_set(solution):
    return _json.loads(_core.cover_vortex_set(solution))


def selection_run(base, amplitude=0.3, seed=31, max_iters=1000):
    return _json.loads(_core.selection_run(base, amplitude, seed, max_iters))


def comparable_polynomial(roots, R, order, admissibility=1e-3):
    return _json.loads(_core.comparable_polynomial(list(roots), R, order, admissibility))


def poly_suite(max_degree=5, seeds=5, cn=1e-3):
    return _table(_core.poly_suite(max_degree, seeds, cn))


def config_hash(config):
    return _core.config_hash(_json.dumps(config))
