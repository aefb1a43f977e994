// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include "doctest.h"
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/field_io.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/taubes.hpp"

using namespace vortexlab;

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const VortexSolution &single()
{
  static const VortexSolution sol = solve_taubes({{0.0, 0.0}}, build_grid(257, 12.0));
  return sol;
}

const VortexSolution &pair()
{
  static const VortexSolution sol = solve_taubes({{-2.0, 0.0}, {2.0, 0.0}}, build_grid(257, 12.0));
  return sol;
}

}  // namespace

TEST_CASE("parse_zero_list")
{
  auto z = parse_zero_list(" 1, 0 ; -1,0.5");
  REQUIRE(z.size() == 2);
  CHECK(z[0] == Point{1.0, 0.0});
  CHECK(z[1] == Point{-1.0, 0.5});
  CHECK(parse_zero_list("0,0;0,0").size() == 2);
  CHECK_THROWS_AS(parse_zero_list(""), InputError);
  CHECK_THROWS_AS(parse_zero_list("1;2"), InputError);
  CHECK_THROWS_AS(parse_zero_list("a,b"), InputError);
}

TEST_CASE("solve_taubes input validation")
{
  auto g = build_grid(129, 8.0);
  CHECK_THROWS_AS(solve_taubes({}, g), InputError);
  CHECK_THROWS_WITH_AS(solve_taubes({{5.0, 0.0}}, g), "zero too close to boundary", InputError);
  TaubesOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(solve_taubes({{0.0, 0.0}}, g, bad), InputError);
}

TEST_CASE("single vortex energy and residual")
{
  const auto &s = single();
  CHECK(std::abs(s.energy - kTwoPi) / kTwoPi < 5e-3);
  CHECK(taubes_residual_parts(s).newton <= 1e-8);
  CHECK(taubes_residual(s) == doctest::Approx(s.residual_sup).epsilon(1e-12));
  CHECK(s.r0(128, 128) == 0.0);
  CHECK(s.r0(0, 128) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("two vortices: energy, zeros and degree")
{
  const auto &s = pair();
  CHECK(std::abs(s.energy - 2.0 * kTwoPi) / (2.0 * kTwoPi) < 1e-2);
  // (+-2, 0) are nodes at spacing 0.09375 only approximately; the nearest-node values are small.
  const auto &g = s.grid;
  int ix = static_cast<int>(std::lround((2.0 + 12.0) / g.spacing()));
  CHECK(s.r0(ix, 128) < 0.2);
  CHECK(degree(s.u0, 0.8).degree == 2);
}

TEST_CASE("exact node zeros give r0 = 0")
{
  auto g = build_grid(129, 8.0);
  auto s = solve_taubes({{1.0, 0.0}, {-1.0, 0.5}}, g);
  CHECK(s.r0(72, 64) == 0.0);
  CHECK(s.r0(56, 68) == 0.0);
}

TEST_CASE("corrupting h_reg is detected by the residual")
{
  const auto &s = single();
  auto h = s.h_reg;
  auto bump = bump_field(s.grid, {1.0, 1.0}, 1.5, 0.1);
  for (std::size_t k = 0; k < h.values.size(); ++k)
  {
    h.values[k] += bump.values[k];
  }
  auto bad = solution_from_regular_part(s.zeros, h, s.tol, s.iterations);
  CHECK(taubes_residual(bad) > 1e-3);
}

TEST_CASE("radial oracle boundary behaviour and agreement with the 2D solver")
{
  auto prof = radial_profile_oracle(16.0, 4000);
  CHECK(prof.value_at(0.0) == 0.0);
  CHECK(std::abs(prof.value_at(16.0) - 1.0) < 1e-6);
  CHECK(prof.slope_at_origin > 0.0);
  CHECK_THROWS_AS(radial_profile_oracle(4.0, 100), InputError);

  const auto &s = single();
  double sup = 0.0;
  for (int ix = 128; ix < s.grid.n(); ++ix)
  {
    double rho = s.grid.coord(ix);
    if (rho > 8.0)
    {
      break;
    }
    sup = std::max(sup, std::abs(prof.value_at(rho) - s.r0(ix, 128)));
  }
  CHECK(sup < 5e-3);
}

TEST_CASE("solution directory round trip and corruption")
{
  auto dir = std::filesystem::temp_directory_path() / "vortexlab_tests" / "sol";
  std::filesystem::remove_all(dir);
  const auto &s = single();
  save_solution(s, dir);
  auto back = load_solution(dir);
  CHECK(back.h_reg.values == s.h_reg.values);
  CHECK(back.energy == doctest::Approx(s.energy).epsilon(1e-12));
  CHECK(verify_solution_dir(dir).ok);

  auto r0 = read_scalar_field(dir / "r0.ahf");
  r0.values[1000] += 0.25;
  write_field(r0, dir / "r0.ahf");
  auto check = verify_solution_dir(dir);
  CHECK_FALSE(check.ok);
  CHECK_FALSE(check.problems.empty());
}
