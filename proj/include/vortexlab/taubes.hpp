// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_TAUBES_HPP
#define VORTEXLAB_TAUBES_HPP

#include <filesystem>
#include <string>
#include <vector>
#include "vortexlab/grid.hpp"
#include "vortexlab/weight.hpp"

namespace vortexlab
{

// Prescribed zeros; repetition encodes multiplicity.
using ZeroSet = std::vector<Point>;

// Parses "x,y;x,y;..." (whitespace tolerated). Throws InputError on malformed text.
ZeroSet parse_zero_list(const std::string &text);

//
// Minimizing pair with prescribed zeros. Writing |u0| = w e^{h} with w = prod |x - a_k|,
// the regular part h solves Lap h = (w^2 e^{2h} - 1) / 2 with h = -log w on the two
// outermost rings. Lap is the composed central-difference operator D1 D1 + D2 D2, so
// that with A0 = -*dh the discrete curvature satisfies *dA0 = (1 - r0^2) / 2 to solver
// precision.
//
struct VortexSolution
{
  ZeroSet zeros;
  Grid grid;
  ScalarField h_reg;
  ScalarField r0;
  ComplexField u0;
  OneForm A0;
  double energy = 0.0;
  double residual_sup = 0.0;
  double tol = 0.0;
  int iterations = 0;

  int degree() const { return static_cast<int>(zeros.size()); }
  VortexWeight weight() const { return VortexWeight::unit(zeros); }
};

struct TaubesOptions
{
  double tol = 1e-10;
  int max_iterations = 50;
};

// Throws InputError for an empty zero set, zeros farther than L/2 from the origin in
// either coordinate ("zero too close to boundary") or tol <= 0; ConvergenceError when
// Newton stalls or runs out of iterations.
VortexSolution solve_taubes(const ZeroSet &zeros, const Grid &grid, const TaubesOptions &opts = {});

// Derives r0, u0, A0, energy and residual_sup from a regular part h.
VortexSolution solution_from_regular_part(const ZeroSet &zeros, ScalarField h_reg, double tol,
                                          int iterations);

struct TaubesResidual
{
  double newton = 0.0;     // sup |Lap h - (r0^2 - 1)/2|
  double curvature = 0.0;  // sup |*dA0 - (1 - r0^2)/2|
  double value() const { return newton > curvature ? newton : curvature; }
};

// Both sup-norms over nodes at least two rings inside the box.
TaubesResidual taubes_residual_parts(const VortexSolution &sol);
double taubes_residual(const VortexSolution &sol);

//
// Radially symmetric single vortex |u| = f(rho): (log f)'' + (log f)'/rho = (f^2 - 1)/2,
// f ~ c rho at 0, f -> 1 at infinity. Found by shooting on c with bisection; once the
// shot trajectories separate, the tail is continued by the decaying solution
// 1 - a K0(rho) of the linearized equation.
//
struct RadialProfile
{
  std::vector<double> rho;
  std::vector<double> f;
  double slope_at_origin = 0.0;  // c
  double matching_radius = 0.0;  // where the asymptotic tail takes over

  // Linear interpolation; rho beyond the table returns the last value.
  double value_at(double r) const;
};

// Throws InputError if rho_max < 8 or steps < 16; InternalError on bracket failure.
RadialProfile radial_profile_oracle(double rho_max, int steps);

// Directory layout: manifest.json plus h_reg.ahf, r0.ahf, u0.ahf, A0.ahf.
void save_solution(const VortexSolution &sol, const std::filesystem::path &dir);

// Loads h_reg and rebuilds every derived field from it.
VortexSolution load_solution(const std::filesystem::path &dir);

struct SolutionCheck
{
  bool ok = false;
  std::vector<std::string> problems;
};

// Re-derives the solution from h_reg and compares it with the stored fields and the
// manifest numbers.
SolutionCheck verify_solution_dir(const std::filesystem::path &dir);

}  // namespace vortexlab

#endif  // VORTEXLAB_TAUBES_HPP
