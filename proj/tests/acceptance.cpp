// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the reference experiments and prints one PASS/FAIL line per acceptance criterion.
// Exit status is non-zero when any criterion fails. A JSON record of every measurement is
// written to acceptance_summary.json in the working directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include "vortexlab/calculus.hpp"
#include "vortexlab/criteria.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/experiments.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/polyperturb.hpp"
#include "vortexlab/selection.hpp"
#include "vortexlab/taubes.hpp"
#include "vortexlab/weighted_calc.hpp"

using namespace vortexlab;

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::shared_ptr<const VortexSolution> solve(const char *zeros, int n, double L)
{
  return std::make_shared<const VortexSolution>(solve_taubes(parse_zero_list(zeros), build_grid(n, L)));
}

double base_discrepancy(const VortexSolution &s)
{
  return discrepancy_perturbative(s, ScalarField(s.grid), OneForm(s.grid)).total;
}

Criterion bogomolny()
{
  const auto t0 = Clock::now();
  auto s = solve("0,0", 513, 12.0);
  const double dt = seconds_since(t0);
  // Same spacing on a box twice as wide.
  auto wide = solve("0,0", 1025, 24.0);
  return check_bogomolny(s->energy, 1, base_discrepancy(*s), dt, wide->energy);
}

Criterion oracle()
{
  auto s = solve("0,0", 513, 12.0);
  auto prof = radial_profile_oracle(24.0, 24000);
  const Grid &g = s->grid;
  const int mid = g.n() / 2;
  double sup = 0.0;
  for (int ix = 0; ix < g.n(); ++ix)
  {
    const double rho = std::abs(g.coord(ix));
    if (rho <= 8.0)
    {
      sup = std::max(sup, std::abs(prof.value_at(rho) - s->r0(ix, mid)));
    }
  }
  return check_oracle(sup);
}

Criterion identity()
{
  auto b = solve("-2,0;2,0", 513, 12.0);
  std::vector<std::pair<double, double>> pairs(20);
  parallel_for(20, [&](int i) {
    auto p = make_random_perturbation(b, 100 + 3 * static_cast<std::uint64_t>(i), 0.5, 1.5);
    const double excess = energy_direct(apply_perturbation(p)) - 2.0 * kTwoPi;
    pairs[i] = {excess, discrepancy_perturbative(*b, p.h_prime, p.B).total};
  });
  return check_identity(pairs);
}

struct SweepSet
{
  std::vector<std::vector<SweepRow>> sweeps;
  std::vector<double> masses;
  std::vector<int> N;
};

const std::vector<double> kEps = {0.5, 0.25, 0.125};

SweepSet sweeps()
{
  SweepSet out;
  for (const char *zeros : {"0,0", "-2,0;2,0"})
  {
    auto b = solve(zeros, 257, 12.0);
    out.sweeps.push_back(stability_sweep(reference_bump(b), {0.2, 0.1, 0.05, 0.025}, kEps));
    out.masses.push_back(integrate(base_jacobian(*b)));
    out.N.push_back(b->degree());
  }
  return out;
}

Criterion sobolev(const SweepSet &s)
{
  // N = 2 sweep at t = 0.05.
  return check_weighted_sobolev(s.sweeps[1][2], kEps);
}

Criterion sharpness()
{
  auto b = solve("0,0", 257, 12.0);
  return check_sharpness(sharpness_sweep(b, sharpness_center(*b, 2.0), {0.5, 1.0, 2.0}, 1.0));
}

Criterion hardy() { return check_hardy(hardy_suite(build_grid(257, 8.0), 2026, 100)); }

Criterion hodge() { return check_hodge(hodge_suite(build_grid(257, 8.0), 7, 3, kEps, 1e-8), 0.25); }

Criterion cover()
{
  std::vector<CoverCase> cases;
  for (const char *zeros : {"0,0", "-5,0;5,0", "-0.3,0;0.3,0", "-0.3,0;0.3,0;4,0"})
  {
    auto s = solve(zeros, 257, 12.0);
    auto c = cover_vortex_set(*s);
    cases.push_back({zeros, check_cover(c, *s), c});
  }
  return check_cover_cases(cases);
}

Criterion selection()
{
  auto b = solve("-2,0;2,0", 257, 12.0);
  auto anchor = apply_perturbation(make_random_perturbation(b, 31, 0.3, 4.0 * b->grid.spacing()));
  SelectionOptions opts;
  opts.max_iters = 1000;
  return check_selection(selection_iterate(b, anchor, 2, opts), 2);
}

Criterion poly()
{
  auto rows = poly_suite(5, 5, 1e-3);
  const double eps = 1e-3;
  auto zero_r = make_perturbation([](Complex) { return Complex(0.0); }, 3);
  auto const_r = make_perturbation([eps](Complex) { return Complex(eps); }, 1);
  std::vector<double> exact = {
      comparable_polynomial(seeded_polynomial(3001, 3), zero_r).lambda_measured,
      comparable_polynomial(ComplexPoly::from_roots({0.0}), const_r).lambda_measured,
      comparable_polynomial(seeded_polynomial(1001, 1), const_r).lambda_measured,
  };
  return check_poly(rows, exact);
}

Criterion gradient()
{
  auto b = solve("-2,0;2,0", 257, 12.0);
  auto anchor = apply_perturbation(make_random_perturbation(b, 31, 0.3, 4.0 * b->grid.spacing()));
  auto prob = make_problem(b, anchor);
  prob.current = apply_perturbation(make_bump_perturbation(b, {0.5, 0.25}, 2.0, 0.3, {0.6, -0.4}));
  return check_gradient_result(check_gradient(prob, 91, 10, 1e-6));
}

}  // namespace

int main()
{
  std::vector<Criterion> results;
  auto run = [&](const char *name, const std::function<Criterion()> &f) {
    const auto t0 = Clock::now();
    Criterion c;
    try
    {
      c = f();
    }
    catch (const std::exception &e)
    {
      c = {name, false, std::string("error: ") + e.what(), {}};
    }
    if (!c.measured.is_object())
    {
      c.measured = {{"values", c.measured}};
    }
    c.measured["wall_seconds"] = seconds_since(t0);
    std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
    results.push_back(std::move(c));
  };

  run("bogomolny_equality", bogomolny);
  run("oracle_equivalence", oracle);
  run("discrepancy_identity", identity);
  SweepSet set;
  try
  {
    set = sweeps();
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "sweep failed: %s\n", e.what());
  }
  run("quadratic_stability", [&] { return check_quadratic_stability(set.sweeps); });
  run("sharpness", sharpness);
  run("weighted_sobolev", [&] {
    if (set.sweeps.size() < 2)
    {
      throw InternalError("sweep unavailable");
    }
    return sobolev(set);
  });
  run("jacobian", [&] { return check_jacobian(set.sweeps, set.masses, set.N); });
  run("hardy", hardy);
  run("weighted_hodge", hodge);
  run("ball_cover", cover);
  run("selection", selection);
  run("polynomial_lemma", poly);
  run("gradient_check", gradient);

  nlohmann::json out = nlohmann::json::array();
  int failed = 0;
  for (const auto &c : results)
  {
    out.push_back(to_json(c));
    failed += c.pass ? 0 : 1;
  }
  std::ofstream("acceptance_summary.json") << out.dump(2) << "\n";
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
