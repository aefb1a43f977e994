// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_GAUGE_ENERGY_HPP
#define VORTEXLAB_GAUGE_ENERGY_HPP

#include <optional>
#include "json.hpp"
#include "vortexlab/grid.hpp"

namespace vortexlab
{

struct VortexSolution;

// Perturbation of a base solution in its own gauge: u = u0 e^{h'}, A = A0 + B.
struct PerturbativeData
{
  ScalarField h_prime;
  OneForm B;
};

// A pair (u, A) with covariant derivative d - iA. `pert` is filled when the pair was
// built from a base solution and is required by jacobian_field.
struct PairState
{
  ComplexField u;
  OneForm A;
  std::optional<PerturbativeData> pert;
};

PairState base_pair(const VortexSolution &base);

// Quadrature of |du - iuA|^2 + |dA|^2 + (1 - |u|^2)^2 / 4.
double energy_direct(const ComplexField &u, const OneForm &A);
double energy_direct(const PairState &p);

// Pointwise energy density (same discretization as energy_direct).
ScalarField energy_density(const ComplexField &u, const OneForm &A);

struct DiscrepancyReport
{
  double total = 0.0;
  double first_term = 0.0;   // int r^2 |e1|^2
  double second_term = 0.0;  // int |e2|^2
  OneForm e1;                // *dh' + B
  ScalarField e2;            // *dB + r0^2 (e^{2h'} - 1)/2 + (*dA0 - (1 - r0^2)/2)
};

// The second residual includes the base curvature defect, so the report for h' = 0,
// B = 0 is exactly the discrepancy of the discrete base pair.
DiscrepancyReport discrepancy_perturbative(const VortexSolution &base, const ScalarField &h_prime,
                                           const OneForm &B);

nlohmann::json to_json(const DiscrepancyReport &r);

struct DegreeResult
{
  int degree = 0;
  double defect = 0.0;  // distance of the winding sum from the nearest integer
};

// Winding of u along the circle of radius radius_fraction * L about the origin, using
// bilinear interpolation. Throws InputError("degree undefined on contour") if |u| < 0.1
// somewhere on the circle.
DegreeResult degree(const ComplexField &u, double radius_fraction);

struct L2Distance
{
  double dist_u_sq = 0.0;
  double dist_F_sq = 0.0;
};

L2Distance l2_distance(const PairState &p, const VortexSolution &base);

// (1 - r^2) dA - d(r^2) ^ (A - dtheta) in the base gauge. Throws InputError when p has no
// perturbative data.
TwoForm jacobian_field(const PairState &p, const VortexSolution &base);

// Jacobian of the base pair itself.
TwoForm base_jacobian(const VortexSolution &base);

// int |J(p) - J(base)|
double jacobian_l1_diff(const PairState &p, const VortexSolution &base);

// int r0^{2+2 eps} (|dh'|^2 + |B|^2): the weighted Sobolev quantity of the stability sweep.
double weighted_sobolev_lhs(const VortexSolution &base, const PerturbativeData &pert, double eps);

// int dA over the box.
double total_flux(const OneForm &A);

}  // namespace vortexlab

#endif  // VORTEXLAB_GAUGE_ENERGY_HPP
