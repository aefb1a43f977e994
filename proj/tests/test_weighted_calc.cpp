// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include "doctest.h"
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/weighted_calc.hpp"

using namespace vortexlab;

namespace
{

// Relative L2 distance of a and b + c over the interior set.
double rel_diff(const ScalarField &a, const ScalarField &b, double shift)
{
  double num = 0.0, den = 0.0;
  const auto &g = a.grid;
  for (int iy = 0; iy < g.n(); ++iy)
  {
    for (int ix = 0; ix < g.n(); ++ix)
    {
      if (g.ring(ix, iy) < kInteriorMargin)
      {
        continue;
      }
      num += std::pow(a(ix, iy) - b(ix, iy) - shift, 2);
      den += b(ix, iy) * b(ix, iy);
    }
  }
  return std::sqrt(num / den);
}

// Mean of a - b over the interior set.
double mean_shift(const ScalarField &a, const ScalarField &b)
{
  double s = 0.0;
  int count = 0;
  const auto &g = a.grid;
  for (int iy = 0; iy < g.n(); ++iy)
  {
    for (int ix = 0; ix < g.n(); ++ix)
    {
      if (g.ring(ix, iy) >= kInteriorMargin)
      {
        s += a(ix, iy) - b(ix, iy);
        ++count;
      }
    }
  }
  return s / count;
}

const Grid &grid()
{
  static const Grid g = build_grid(129, 8.0);
  return g;
}

VortexWeight one_center() { return VortexWeight::unit({{0.0625, 0.0625}}); }

}  // namespace

TEST_CASE("hardy gap basics")
{
  const auto &g = grid();
  auto w = one_center();
  auto f = bump_field(g, {3.0, 1.0}, 2.0, 1.0);
  auto gap = hardy_gap(w, f);
  CHECK(gap.lhs > 0.0);
  CHECK(gap.lhs < gap.rhs);

  auto zero = hardy_gap(w, ScalarField(g));
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  CHECK_THROWS_AS(hardy_gap(w, ScalarField(g, 1.0)), InputError);
}

TEST_CASE("hardy ratio decreases with the exponent")
{
  const auto &g = grid();
  auto f = bump_field(g, {0.0, 0.0}, 3.0, 1.0);
  double prev = 1e300;
  for (double alpha : {1.0, 0.5, 0.25})
  {
    VortexWeight w({{0.0625, 0.0625}}, {alpha});
    auto gap = hardy_gap(w, f);
    double ratio = gap.lhs / gap.rhs;
    CHECK(ratio <= 1.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("standard Hodge decomposition of exact and co-exact forms")
{
  const auto &g = grid();
  auto bump = bump_field(g, {0.5, -1.0}, 3.0, 1.0);

  auto coexact = standard_hodge_decompose(star(d(bump)), 1e-8);
  CHECK(coexact.standard_residual <= 1e-8);
  CHECK(rel_diff(coexact.p, bump, mean_shift(coexact.p, bump)) < 1e-6);
  CHECK(sup_norm(coexact.q.values) < 1e-6);

  auto exact = standard_hodge_decompose(d(bump), 1e-8);
  CHECK(exact.standard_residual <= 1e-8);
  CHECK(sup_norm(exact.p.values) < 1e-6);
  CHECK(rel_diff(exact.q, bump, mean_shift(exact.q, bump)) < 1e-6);
}

TEST_CASE("weighted Hodge decomposition")
{
  const auto &g = grid();
  auto w = one_center();
  auto bump = bump_field(g, {0.5, -1.0}, 3.0, 1.0);

  auto coexact = weighted_hodge_decompose(star(d(bump)), w, 1e-8);
  CHECK(coexact.weighted_residual <= 1e-8);
  CHECK(rel_diff(coexact.v, bump, mean_shift(coexact.v, bump)) < 1e-6);

  auto exact = weighted_hodge_decompose(d(bump), w, 1e-8);
  CHECK(exact.weighted_residual <= 1e-8);

  auto zero = hodge_decompose(OneForm(g), w, 1e-8);
  CHECK(sup_norm(zero.v.values) == 0.0);
  CHECK(sup_norm(zero.f.values) == 0.0);
  CHECK(sup_norm(zero.p.values) == 0.0);
  CHECK(sup_norm(zero.q.values) == 0.0);

  OneForm outside(g);
  outside.a1[g.index(1, 64)] = 1.0;
  CHECK_THROWS_AS(weighted_hodge_decompose(outside, w, 1e-8), InputError);
}

TEST_CASE("random forms: residuals, stationarity and the gap inequality")
{
  const auto &g = grid();
  auto w = one_center();
  auto B = random_smooth_form(g, 11, 1.0, 0.8);
  auto parts = hodge_decompose(B, w, 1e-8);
  CHECK(parts.weighted_residual <= 1e-8);
  CHECK(parts.standard_residual <= 1e-8);

  // v minimizes the weighted functional: nearby potentials do not do better.
  double at = weighted_functional(B, w, parts.v);
  auto dir = bump_field(g, {1.0, 1.0}, 2.0, 1.0);
  for (double s : {1e-3, -1e-3})
  {
    auto v = parts.v;
    for (std::size_t k = 0; k < v.values.size(); ++k)
    {
      v.values[k] += s * dir.values[k];
    }
    CHECK(weighted_functional(B, w, v) >= at);
  }

  for (double eps : {0.5, 0.25, 0.125})
  {
    auto gap = hodge_gap_check(parts, w, eps);
    CHECK(gap.lhs <= 1.1 * gap.rhs);
    CHECK(gap.lhs > 0.0);
  }
  auto gap = hodge_gap_check(parts, w, 0.25);
  CHECK(gap.constant == doctest::Approx((8 * 0.0625 + 5 * std::pow(1.25, 4)) / (8 * 1.5625)));
}

TEST_CASE("merge rule")
{
  int merges = 0;
  auto out = merge_balls({{{-0.3, 0.0}, 1.0}, {{0.3, 0.0}, 1.0}}, &merges);
  REQUIRE(out.size() == 1);
  CHECK(merges == 1);
  CHECK(out[0].center.x == doctest::Approx(0.0));
  CHECK(out[0].radius == doctest::Approx(6.0));

  auto far = merge_balls({{{-5.0, 0.0}, 1.0}, {{5.0, 0.0}, 1.0}}, &merges);
  CHECK(far.size() == 2);
  CHECK(merges == 0);
}

TEST_CASE("level set length of a circle")
{
  auto g = build_grid(257, 4.0);
  auto r = sample(g, [](double x, double y) { return std::hypot(x, y); });
  CHECK(level_set_length(r, 2.0) == doctest::Approx(4.0 * std::acos(0.0) * 2.0).epsilon(1e-3));
}

TEST_CASE("vortex set covers")
{
  auto g = build_grid(129, 12.0);
  for (const char *zeros : {"0,0", "-5,0;5,0", "-0.3,0;0.3,0"})
  {
    CAPTURE(zeros);
    auto sol = solve_taubes(parse_zero_list(zeros), g);
    auto cover = cover_vortex_set(sol);
    auto check = check_cover(cover, sol);
    CHECK(check.covers);
    CHECK(check.disjoint_doubles);
    CHECK(check.radii_at_least_one);
    CHECK(check.comparable);
    CHECK(cover.beta >= 0.25);
    CHECK(cover.beta <= 0.5);
    CHECK(std::isfinite(cover.max_ratio));
    auto j = to_json(cover);
    CHECK(j.contains("balls"));
    CHECK(j["comparability"].contains("min_ratio"));
  }
  auto two = cover_vortex_set(solve_taubes({{-5.0, 0.0}, {5.0, 0.0}}, g));
  CHECK(two.balls.size() == 2);
  auto close = cover_vortex_set(solve_taubes({{-0.3, 0.0}, {0.3, 0.0}}, g));
  REQUIRE(close.balls.size() == 1);
  CHECK(std::abs(close.balls[0].center.x) < 0.2);
}
