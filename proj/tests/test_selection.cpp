// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <numbers>
#include "doctest.h"
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/selection.hpp"

using namespace vortexlab;

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::shared_ptr<const VortexSolution> base()
{
  static auto sol = std::make_shared<const VortexSolution>(
      solve_taubes({{0.0, 0.0}}, build_grid(129, 12.0)));
  return sol;
}

PairState rough_anchor()
{
  auto b = base();
  return apply_perturbation(make_random_perturbation(b, 5, 0.3, 4.0 * b->grid.spacing()));
}

double l2_grad_norm(const PenalizedGradient &g)
{
  ScalarField s(g.grad_u.grid);
  for (std::size_t k = 0; k < s.values.size(); ++k)
  {
    s.values[k] = g.grad_u.re[k] * g.grad_u.re[k] + g.grad_u.im[k] * g.grad_u.im[k] +
                  g.grad_A.a1[k] * g.grad_A.a1[k] + g.grad_A.a2[k] * g.grad_A.a2[k];
  }
  return std::sqrt(integrate(s));
}

}  // namespace

TEST_CASE("penalized energy at the anchor and at the base")
{
  auto b = base();
  auto anchor = rough_anchor();
  auto prob = make_problem(b, anchor);
  CHECK(penalized_energy(prob) == doctest::Approx(energy_direct(anchor)).epsilon(1e-14));

  auto at_base = make_problem(b, base_pair(*b));
  CHECK(std::abs(penalized_energy(at_base) - kTwoPi) / kTwoPi < 5e-3);

  PairState no_pert{anchor.u, anchor.A, std::nullopt};
  CHECK_THROWS_AS(make_problem(b, no_pert), InputError);
}

TEST_CASE("penalized gradient matches finite differences")
{
  auto prob = make_problem(base(), rough_anchor());
  // Move away from the anchor so the penalty terms contribute.
  prob.current = apply_perturbation(make_bump_perturbation(base(), {1.0, 0.5}, 2.0, 0.2, {0.3, 0.1}));
  auto check = check_gradient(prob, 17, 10, 1e-6);
  CHECK(check.directions == 10);
  CHECK(check.max_rel_error <= 1e-5);
}

TEST_CASE("vacuum is critical")
{
  const Grid g = base()->grid;
  PenalizedProblem prob = make_problem(base(), base_pair(*base()));
  ComplexField one(g);
  std::fill(one.re.begin(), one.re.end(), 1.0);
  prob.anchor = PairState{one, OneForm(g), std::nullopt};
  prob.current = prob.anchor;
  CHECK(penalized_energy(prob) == 0.0);
  CHECK(l2_grad_norm(penalized_gradient(prob)) < 1e-12);
}

TEST_CASE("the base pair is already minimal")
{
  auto b = base();
  auto prob = make_problem(b, base_pair(*b));
  auto out = minimize_penalized(prob, 50);
  double diff = 0.0;
  for (std::size_t k = 0; k < out.u.re.size(); ++k)
  {
    diff = std::max(diff, std::hypot(out.u.re[k] - b->u0.re[k], out.u.im[k] - b->u0.im[k]));
  }
  // The Taubes solution minimizes the continuum energy; the discrete energy has its own
  // minimizer a discretization error away.
  CHECK(diff < 1e-2);
  double e0 = energy_direct(base_pair(*b));
  CHECK(energy_direct(out) <= e0);
  CHECK(e0 - energy_direct(out) < 1e-4 * e0);
}

TEST_CASE("selection from a rough anchor")
{
  auto b = base();
  auto anchor = rough_anchor();
  auto rep = selection_iterate(b, anchor, 1);
  CHECK(rep.monotone);
  CHECK(rep.energy_chain.back() <= rep.energy_chain.front());
  CHECK(rep.energy_chain.back() >= kTwoPi * (1.0 - 5e-3));
  CHECK(rep.degree_anchor == 1);
  CHECK(rep.degree_result == 1);
  CHECK(rep.hf_fraction_result < rep.hf_fraction_anchor);
  CHECK(rep.dist_u_sq + rep.dist_F_sq <= 10.0 * rep.anchor_excess);
  CHECK(rep.distance_constant > 0.0);
  CHECK(rep.min_modulus_ratio > 0.0);
  for (std::size_t k = 1; k < rep.log.size(); ++k)
  {
    CHECK(rep.log[k].G <= rep.log[k - 1].G);
  }

  auto j = to_json(rep);
  CHECK(j.contains("energy_chain"));
  CHECK(j.contains("distance_constant"));
}

TEST_CASE("selection from the base pair keeps the energy")
{
  auto b = base();
  auto rep = selection_iterate(b, base_pair(*b), 1);
  for (double e : rep.energy_chain)
  {
    CHECK(e == doctest::Approx(rep.energy_chain.front()).epsilon(1e-4));
  }
  CHECK_THROWS_AS(selection_iterate(b, base_pair(*b), 0), InputError);
}
