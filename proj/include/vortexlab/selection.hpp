// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_SELECTION_HPP
#define VORTEXLAB_SELECTION_HPP

#include <cstdint>
#include <memory>
#include <vector>
#include "json.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/taubes.hpp"

namespace vortexlab
{

struct IterationRecord
{
  int round = 0;
  int iter = 0;
  double G = 0.0;
  double E = 0.0;
  double grad_norm = 0.0;
  double step_size = 0.0;
};

// Penalized functional G(u1, A1) = E(u1, A1) + ||u1 - u||^2 + ||A1 - A||^2 with the anchor
// (u, A) held fixed. Descent runs in the perturbative variables of `current` over `base`,
// so both pairs must carry perturbative data relative to the same base.
struct PenalizedProblem
{
  std::shared_ptr<const VortexSolution> base;
  PairState anchor;
  PairState current;
  double tolerance = 1e-6;  // stop when the L2 gradient norm in (h', B) drops below this
  std::vector<IterationRecord> history;
};

// Starts at the anchor itself.
PenalizedProblem make_problem(std::shared_ptr<const VortexSolution> base, const PairState &anchor);

double penalized_energy(const PenalizedProblem &prob);

struct PenalizedGradient
{
  ComplexField grad_u;
  OneForm grad_A;
};

// L2 gradient of G with respect to the nodal values of (u, A): the directional derivative
// along (du, dA) is the quadrature of <grad_u, du> + <grad_A, dA>.
PenalizedGradient penalized_gradient(const PenalizedProblem &prob);

struct GradientCheck
{
  double max_rel_error = 0.0;
  int directions = 0;
};

// Central differences of penalized_energy along seeded smooth interior directions.
GradientCheck check_gradient(const PenalizedProblem &prob, std::uint64_t seed, int directions = 10,
                             double step = 1e-6);

// Limited-memory BFGS with Armijo backtracking in (h', B), variables frozen on the outer
// kInteriorMargin rings. Appends one IterationRecord per accepted step (iteration 0 is
// the start) and returns the final pair. Throws ConvergenceError when the line search
// cannot decrease G along steepest descent while the gradient is still above round-off.
PairState minimize_penalized(PenalizedProblem &prob, int max_iters);

struct SelectionOptions
{
  int max_iters = 400;
  double tolerance = 1e-6;
};

struct SelectionReport
{
  PairState result;
  std::vector<double> energy_chain;  // E(anchor), E(truncated), then E after each round
  std::vector<IterationRecord> log;
  double dist_u_sq = 0.0;           // ||u - u~||^2 against the original anchor
  double dist_F_sq = 0.0;           // ||F - F~||^2
  double anchor_excess = 0.0;       // E(anchor) - 2 pi N
  double distance_constant = 0.0;   // (dist_u_sq + dist_F_sq) / anchor_excess
  double min_modulus_ratio = 0.0;   // inf |u~| / r0 where r0 > cover threshold
  double max_modulus_ratio = 0.0;
  int degree_anchor = 0;
  int degree_result = 0;
  bool monotone = true;             // G non-increasing within every round
  double hf_fraction_anchor = 0.0;  // spectral high-frequency share of h'
  double hf_fraction_result = 0.0;
};

// Truncates the modulus once, then runs N rounds of minimize_penalized, re-anchoring at
// each output.
SelectionReport selection_iterate(std::shared_ptr<const VortexSolution> base, const PairState &anchor,
                                  int N, const SelectionOptions &opts = {});

nlohmann::json to_json(const SelectionReport &r);

}  // namespace vortexlab

#endif  // VORTEXLAB_SELECTION_HPP
