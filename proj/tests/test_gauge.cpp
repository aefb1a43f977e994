// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <numbers>
#include "doctest.h"
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/taubes.hpp"

using namespace vortexlab;

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::shared_ptr<const VortexSolution> base1()
{
  static auto sol = std::make_shared<const VortexSolution>(
      solve_taubes({{0.0, 0.0}}, build_grid(129, 12.0)));
  return sol;
}

std::shared_ptr<const VortexSolution> base2()
{
  static auto sol = std::make_shared<const VortexSolution>(
      solve_taubes({{-2.0, 0.0}, {2.0, 0.0}}, build_grid(129, 12.0)));
  return sol;
}

ComplexField constant_u(const Grid &g, double value)
{
  ComplexField u(g);
  std::fill(u.re.begin(), u.re.end(), value);
  return u;
}

}  // namespace

TEST_CASE("energy of constant pairs")
{
  auto g = build_grid(129, 8.0);
  CHECK(energy_direct(constant_u(g, 1.0), OneForm(g)) == 0.0);
  CHECK(energy_direct(constant_u(g, 0.0), OneForm(g)) == doctest::Approx(64.0).epsilon(1e-12));
}

TEST_CASE("base pair energy, discrepancy and Jacobian mass")
{
  auto b = base1();
  auto p = base_pair(*b);
  CHECK(std::abs(energy_direct(p) - kTwoPi) / kTwoPi < 5e-3);
  auto rep = discrepancy_perturbative(*b, ScalarField(b->grid), OneForm(b->grid));
  CHECK(rep.total < 1e-4 * kTwoPi);
  CHECK(std::abs(integrate(base_jacobian(*b)) - kTwoPi) / kTwoPi < 1e-2);
  CHECK(std::abs(integrate(base_jacobian(*base2())) - 2.0 * kTwoPi) / (2.0 * kTwoPi) < 1e-2);

  auto j = to_json(rep);
  CHECK(j.contains("total"));
  CHECK(j.contains("first_term"));
  CHECK(j.contains("second_term"));
}

TEST_CASE("energy minus 2 pi N matches the perturbative discrepancy")
{
  auto b = base2();
  auto base_rep = discrepancy_perturbative(*b, ScalarField(b->grid), OneForm(b->grid));
  double offset = energy_direct(base_pair(*b)) - 2.0 * kTwoPi - base_rep.total;
  for (std::uint64_t seed : {1u, 2u, 3u})
  {
    auto pert = make_random_perturbation(b, seed, 0.5, 1.5);
    auto pair = apply_perturbation(pert);
    double excess = energy_direct(pair) - 2.0 * kTwoPi - offset;
    double disc = discrepancy_perturbative(*b, pert.h_prime, pert.B).total;
    CHECK(std::abs(excess - disc) / disc < 1e-3);
  }
}

TEST_CASE("co-exact B cancels the first discrepancy term")
{
  auto b = base1();
  auto bump = bump_field(b->grid, {2.0, 1.0}, 2.0, 0.3);
  auto B = star(d(bump));
  for (auto &x : B.a1)
  {
    x = -x;
  }
  for (auto &x : B.a2)
  {
    x = -x;
  }
  auto rep = discrepancy_perturbative(*b, bump, B);
  CHECK(rep.first_term < 1e-20);
  CHECK(rep.total == doctest::Approx(rep.second_term).epsilon(1e-12));
}

TEST_CASE("discrepancy is quadratic in the bump scale")
{
  auto b = base1();
  auto bump = bump_field(b->grid, {1.0, 0.5}, 2.0, 1.0);
  std::vector<double> c;
  for (double t : {0.2, 0.1, 0.05})
  {
    auto h = bump;
    for (auto &x : h.values)
    {
      x *= t;
    }
    auto base_rep = discrepancy_perturbative(*b, ScalarField(b->grid), OneForm(b->grid));
    c.push_back((discrepancy_perturbative(*b, h, OneForm(b->grid)).total - base_rep.total) / (t * t));
  }
  // Successive differences shrink by about two as t halves (O(t^3) remainder).
  double d1 = std::abs(c[0] - c[1]), d2 = std::abs(c[1] - c[2]);
  CHECK(d2 < 0.7 * d1);
  CHECK(c[2] > 0.0);
}

TEST_CASE("degree of constant and vortex fields")
{
  auto b = base1();
  CHECK(degree(b->u0, 0.9).degree == 1);
  CHECK(degree(b->u0, 0.9).defect <= 1e-6);
  CHECK(degree(constant_u(b->grid, 1.0), 0.5).degree == 0);
  CHECK(degree(base2()->u0, 0.8).degree == 2);
  CHECK_THROWS_WITH_AS(degree(constant_u(b->grid, 0.0), 0.5), "degree undefined on contour", InputError);
}

TEST_CASE("distances and Jacobian of the base pair")
{
  auto b = base1();
  auto p = base_pair(*b);
  auto dist = l2_distance(p, *b);
  CHECK(dist.dist_u_sq == 0.0);
  CHECK(dist.dist_F_sq == 0.0);
  CHECK(jacobian_l1_diff(p, *b) == 0.0);

  // A constant shift of A has no curvature.
  auto q = p;
  for (auto &x : q.A.a1)
  {
    x += 0.3;
  }
  CHECK(l2_distance(q, *b).dist_F_sq < 1e-24);
}

TEST_CASE("dist_u for small bumps follows the linearization")
{
  auto b = base1();
  auto bump = bump_field(b->grid, {1.0, 0.0}, 2.0, 1.0);
  ScalarField lin(b->grid);
  for (std::size_t k = 0; k < lin.values.size(); ++k)
  {
    lin.values[k] = std::pow(b->r0.values[k] * bump.values[k], 2);
  }
  double c = integrate(lin);
  double t = 1e-3;
  auto pert = make_bump_perturbation(b, {1.0, 0.0}, 2.0, t);
  double got = l2_distance(apply_perturbation(pert), *b).dist_u_sq;
  CHECK(got / (t * t * c) == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("bump_field values and validation")
{
  auto g = build_grid(129, 8.0);
  auto f = bump_field(g, {0.0, 0.0}, 2.0, 0.7);
  CHECK(f(64, 64) == 0.7);
  CHECK(f(64 + 17, 64) == 0.0);  // 2.125 from the centre
  CHECK(cutoff(0.25) == 1.0);
  CHECK(cutoff(1.0) == 0.0);
  CHECK(cutoff(0.75) > 0.0);
  CHECK(cutoff(0.75) < 1.0);
  CHECK_THROWS_AS(bump_field(g, {6.5, 0.0}, 1.5, 1.0), InputError);

  // int bump^2 scales like R^2.
  auto a = bump_field(g, {0.0, 0.0}, 1.0, 1.0);
  auto b2 = bump_field(g, {0.0, 0.0}, 2.0, 1.0);
  ScalarField sa(g), sb(g);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    sa.values[k] = a.values[k] * a.values[k];
    sb.values[k] = b2.values[k] * b2.values[k];
  }
  CHECK(integrate(sb) / integrate(sa) == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("random_smooth_field determinism and scaling")
{
  auto g = build_grid(129, 8.0);
  auto a = random_smooth_field(g, 42, 0.3, 1.0);
  auto b = random_smooth_field(g, 42, 0.3, 1.0);
  CHECK(a.values == b.values);
  CHECK(std::abs(sup_norm(a.values) - 0.3) < 1e-12);
  CHECK(sup_norm(random_smooth_field(g, 42, 0.0, 1.0).values) == 0.0);
  CHECK(vanishes_near_boundary(a.values, g, kInteriorMargin));
  CHECK_FALSE(random_smooth_field(g, 43, 0.3, 1.0).values == a.values);
  CHECK_THROWS_AS(random_smooth_field(g, 1, 1.0, 0.1), InputError);
}

TEST_CASE("apply_perturbation and truncation")
{
  auto b = base1();
  auto zero = make_bump_perturbation(b, {1.0, 0.0}, 1.0, 0.0);
  auto p0 = apply_perturbation(zero);
  CHECK(p0.u.re == b->u0.re);
  CHECK(p0.A.a1 == b->A0.a1);

  auto bump = make_bump_perturbation(b, {1.0, 0.0}, 2.0, 0.4);
  auto p = apply_perturbation(bump);
  double worst = 0.0;
  for (std::size_t k = 0; k < b->grid.size(); ++k)
  {
    double m = std::hypot(p.u.re[k], p.u.im[k]);
    double expect = b->r0.values[k] * std::exp(bump.h_prime.values[k]);
    worst = std::max(worst, std::abs(m - expect));
  }
  CHECK(worst < 1e-14);

  auto bonly = make_bump_perturbation(b, {1.0, 0.0}, 2.0, 0.4, {1.0, 0.0});
  std::fill(bonly.h_prime.values.begin(), bonly.h_prime.values.end(), 0.0);
  auto pb = apply_perturbation(bonly);
  CHECK(pb.u.re == b->u0.re);

  CHECK(truncate_modulus(p).u.re == p.u.re);

  auto g = b->grid;
  PairState five{constant_u(g, 5.0), OneForm(g), std::nullopt};
  auto t = truncate_modulus(five);
  CHECK(sup_norm(t.u.re) == doctest::Approx(3.0));

  auto big = sample(g, [](double x, double y) { return 3.0 + std::exp(-(x * x + y * y)); });
  PairState pbig{ComplexField(g), OneForm(g), std::nullopt};
  pbig.u.re = big.values;
  auto tb = truncate_modulus(pbig);
  CHECK(energy_direct(tb) < energy_direct(pbig));
  auto rep = truncation_report(pbig, tb, 0);
  CHECK(rep.energy_out < rep.energy_in);
}

TEST_CASE("gauge transformations preserve energy and degree")
{
  auto b = base1();
  auto p = base_pair(*b);
  auto same = gauge_transform(p, ScalarField(b->grid));
  CHECK(same.u.re == p.u.re);
  CHECK(same.A.a2 == p.A.a2);

  // Central differences break gauge invariance at O(h^2): the defect drops fourfold
  // when the spacing halves.
  std::vector<double> defect;
  for (int n : {129, 257})
  {
    auto sol = solve_taubes({{0.0, 0.0}}, build_grid(n, 12.0));
    auto pair = base_pair(sol);
    auto q = gauge_transform(pair, bump_field(sol.grid, {0.5, -0.5}, 3.0, 1.2));
    defect.push_back(std::abs(energy_direct(q) - energy_direct(pair)));
    CHECK(degree(q.u, 0.8).degree == 1);
  }
  CHECK(defect[0] / defect[1] > 3.5);
  CHECK(defect[1] / energy_direct(base_pair(*b)) < 1e-2);
}

TEST_CASE("perturbation descriptor JSON round trip")
{
  PerturbationDescriptor d;
  d.kind = "bump";
  d.center = {1.0, -2.0};
  d.radius = 1.5;
  d.amplitude = 0.25;
  d.b_direction = {0.6, -0.4};
  auto back = descriptor_from_json(to_json(d));
  CHECK(back.kind == "bump");
  CHECK(back.center == d.center);
  CHECK(back.b_direction == d.b_direction);
  CHECK(back.radius == 1.5);
}
