// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>

namespace vortexlab
{

namespace
{

std::string fmt(const char *format, ...)
{
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

nlohmann::json to_json(const Criterion &c)
{
  return {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"measured", c.measured}};
}

Criterion check_bogomolny(double energy, int N, double base_discrepancy, double seconds,
                          double energy_doubled_box)
{
  Criterion c{"bogomolny_equality", false, "", {}};
  const double rel = std::abs(energy - kTwoPi * N) / (kTwoPi * N);
  const double doubling = std::abs(energy_doubled_box - energy) / std::abs(energy);
  c.pass = rel <= limits::kEnergyRel && base_discrepancy <= limits::kBaseDiscrepancy * kTwoPi &&
           seconds <= limits::kSolveSeconds && doubling <= limits::kBoxDoublingRel;
  c.measured = {{"energy_rel_error", rel},
                {"discrepancy", base_discrepancy},
                {"seconds", seconds},
                {"box_doubling_rel", doubling}};
  c.detail = fmt("rel %.3e disc %.3e time %.2fs doubling %.3e", rel, base_discrepancy, seconds,
                 doubling);
  return c;
}

Criterion check_oracle(double sup_difference)
{
  Criterion c{"oracle_equivalence", sup_difference <= limits::kOracleSup, "", {}};
  c.measured = {{"sup_difference", sup_difference}};
  c.detail = fmt("sup |f_ode - r0| %.3e", sup_difference);
  return c;
}

Criterion check_identity(const std::vector<std::pair<double, double>> &pairs)
{
  Criterion c{"discrepancy_identity", !pairs.empty(), "", {}};
  double worst = 0.0;
  for (const auto &[excess, disc] : pairs)
  {
    const double rel = std::abs(excess - disc) / std::abs(disc);
    worst = std::max(worst, std::isfinite(rel) ? rel : std::numeric_limits<double>::infinity());
  }
  c.pass = c.pass && worst <= limits::kIdentityRel;
  c.measured = {{"cases", pairs.size()}, {"worst_rel", worst}};
  c.detail = fmt("%zu cases, worst rel %.3e", pairs.size(), worst);
  return c;
}

Criterion check_quadratic_stability(const std::vector<std::vector<SweepRow>> &sweeps)
{
  Criterion c{"quadratic_stability", !sweeps.empty(), "", nlohmann::json::array()};
  double worst = 0.0;
  for (const auto &rows : sweeps)
  {
    if (rows.size() < 2)
    {
      c.pass = false;
      continue;
    }
    bool positive = true;
    for (const auto &r : rows)
    {
      positive = positive && r.stability_ratio() > 0.0;
    }
    const double a = rows[rows.size() - 2].stability_ratio();
    const double b = rows.back().stability_ratio();
    const double variation = std::abs(b - a) / std::abs(a);
    worst = std::max(worst, variation);
    c.pass = c.pass && positive && variation <= limits::kStabilityVariation;
    c.measured.push_back({{"ratio_second_smallest_t", a}, {"ratio_smallest_t", b},
                          {"variation", variation}});
  }
  c.detail = fmt("%zu sweeps, worst variation %.3e", sweeps.size(), worst);
  return c;
}

Criterion check_sharpness(const std::vector<SharpnessRow> &rows)
{
  Criterion c{"sharpness", rows.size() >= 2, "", {}};
  double lo = std::numeric_limits<double>::infinity(), band = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    lo = std::min(lo, rows[i].ratio);
    if (i > 0)
    {
      const double q = rows[i].ratio / rows[i - 1].ratio;
      band = std::max(band, std::max(q, 1.0 / q));
    }
  }
  c.pass = c.pass && lo >= limits::kSharpnessFloor && band <= limits::kSharpnessBand;
  c.measured = {{"min_ratio", lo}, {"max_step_factor", band}};
  c.detail = fmt("min dist^2/disc %.3e, largest step factor %.2f", lo, band);
  return c;
}

Criterion check_weighted_sobolev(const SweepRow &row, const std::vector<double> &eps_list)
{
  Criterion c{"weighted_sobolev", !eps_list.empty(), "", nlohmann::json::array()};
  double hi = 0.0;
  std::size_t i_max = 0, i_min = 0;
  for (std::size_t i = 0; i < eps_list.size(); ++i)
  {
    const double r = row.eps_ratio(i, eps_list[i]);
    hi = std::max(hi, r);
    c.measured.push_back({{"eps", eps_list[i]}, {"ratio", r}});
    if (eps_list[i] > eps_list[i_max])
    {
      i_max = i;
    }
    if (eps_list[i] < eps_list[i_min])
    {
      i_min = i;
    }
  }
  const double growth = row.eps_ratio(i_min, eps_list[i_min]) / row.eps_ratio(i_max, eps_list[i_max]);
  c.pass = c.pass && hi <= limits::kEpsRatioCeiling && growth <= limits::kEpsGrowth &&
           std::isfinite(growth);
  c.detail = fmt("max eps^2 lhs/disc %.3e, smallest/largest eps %.3f", hi, growth);
  return c;
}

Criterion check_jacobian(const std::vector<std::vector<SweepRow>> &sweeps,
                         const std::vector<double> &jacobian_mass, const std::vector<int> &N)
{
  Criterion c{"jacobian", !sweeps.empty() && sweeps.size() == jacobian_mass.size(), "", {}};
  double spread = 0.0, mass_err = 0.0;
  for (const auto &rows : sweeps)
  {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto &r : rows)
    {
      lo = std::min(lo, r.jacobian_ratio());
      hi = std::max(hi, r.jacobian_ratio());
    }
    spread = std::max(spread, lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
  }
  for (std::size_t i = 0; i < jacobian_mass.size() && i < N.size(); ++i)
  {
    mass_err = std::max(mass_err, std::abs(jacobian_mass[i] - kTwoPi * N[i]) / (kTwoPi * N[i]));
  }
  c.pass = c.pass && spread <= limits::kJacobianSpread && mass_err <= limits::kJacobianMass;
  c.measured = {{"max_spread", spread}, {"mass_rel_error", mass_err}};
  c.detail = fmt("jac/sqrt(disc) spread %.3f, int J0 rel error %.3e", spread, mass_err);
  return c;
}

Criterion check_hardy(const std::vector<HardyRow> &rows)
{
  Criterion c{"hardy", !rows.empty(), "", {}};
  double worst = 0.0;
  for (const auto &r : rows)
  {
    c.pass = c.pass && r.lhs <= limits::kHardySlack * r.rhs;
    worst = std::max(worst, r.rhs > 0.0 ? r.lhs / r.rhs : 0.0);
  }
  c.measured = {{"cases", rows.size()}, {"worst_ratio", worst}};
  c.detail = fmt("%zu cases, worst lhs/rhs %.4f", rows.size(), worst);
  return c;
}

Criterion check_hodge(const std::vector<HodgeRow> &rows, double eps)
{
  Criterion c{"weighted_hodge", false, "", {}};
  double res = 0.0, worst_gap = 0.0;
  int gap_rows = 0;
  for (const auto &r : rows)
  {
    res = std::max({res, r.weighted_residual, r.standard_residual});
    if (std::abs(r.eps - eps) < 1e-12)
    {
      ++gap_rows;
      worst_gap = std::max(worst_gap, r.gap_rhs > 0.0 ? r.gap_lhs / r.gap_rhs : 0.0);
    }
  }
  c.pass = gap_rows > 0 && res <= limits::kHodgeResidual && worst_gap <= limits::kHodgeGapSlack;
  c.measured = {{"max_residual", res}, {"worst_gap_ratio", worst_gap}, {"eps", eps}};
  c.detail = fmt("max residual %.3e, worst gap lhs/rhs %.4f at eps %.3g", res, worst_gap, eps);
  return c;
}

Criterion check_cover_cases(const std::vector<CoverCase> &cases)
{
  Criterion c{"ball_cover", !cases.empty(), "", nlohmann::json::array()};
  int failed = 0;
  for (const auto &k : cases)
  {
    const bool ok = k.check.covers && k.check.disjoint_doubles && k.check.radii_at_least_one &&
                    k.check.comparable;
    failed += ok ? 0 : 1;
    c.measured.push_back({{"zeros", k.zeros}, {"pass", ok}, {"cover", to_json(k.cover)}});
  }
  c.pass = c.pass && failed == 0;
  c.detail = fmt("%zu zero sets, %d failing", cases.size(), failed);
  return c;
}

Criterion check_selection(const SelectionReport &r, int N)
{
  Criterion c{"selection", false, "", {}};
  const double floor = kTwoPi * N * (1.0 - limits::kSelectionEnergyTol);
  const double e_final = r.energy_chain.back();
  const double e_anchor = r.energy_chain.front();
  const bool energy_ok = e_final >= floor && e_final <= e_anchor;
  const bool degree_ok = r.degree_anchor == N && r.degree_result == N;
  const bool distance_ok = r.dist_u_sq + r.dist_F_sq <= limits::kSelectionDistance * r.anchor_excess;
  c.pass = r.monotone && energy_ok && degree_ok && distance_ok;
  c.measured = to_json(r);
  c.detail = fmt("monotone %d, E %.6f in [%.6f, %.6f], degree %d->%d, constant %.3f", r.monotone,
                 e_final, floor, e_anchor, r.degree_anchor, r.degree_result, r.distance_constant);
  return c;
}

Criterion check_poly(const std::vector<PolyRow> &rows, const std::vector<double> &exact_lambdas)
{
  Criterion c{"polynomial_lemma", !rows.empty() && !exact_lambdas.empty(), "", {}};
  double max_root = 0.0, max_res = 0.0, max_lambda = 0.0, exact = 0.0;
  for (const auto &r : rows)
  {
    max_root = std::max(max_root, r.max_root_modulus);
    max_res = std::max(max_res, r.max_root_residual);
    max_lambda = std::max(max_lambda, r.lambda);
    c.pass = c.pass && std::isfinite(r.lambda);
  }
  for (double l : exact_lambdas)
  {
    exact = std::max(exact, std::abs(l - 1.0));
  }
  c.pass = c.pass && max_root < limits::kPolyRadius && max_res <= limits::kPolyResidual &&
           std::isfinite(max_lambda) && exact <= limits::kPolyExact;
  c.measured = {{"max_root_modulus", max_root},
                {"max_root_residual", max_res},
                {"max_lambda", max_lambda},
                {"exact_lambda_error", exact}};
  c.detail = fmt("%zu cases, max |b| %.3f, residual %.2e, max lambda %.4f, exact cases %.1e",
                 rows.size(), max_root, max_res, max_lambda, exact);
  return c;
}

Criterion check_gradient_result(const GradientCheck &g)
{
  Criterion c{"gradient_check", g.directions > 0 && g.max_rel_error <= limits::kGradientRel, "", {}};
  c.measured = {{"directions", g.directions}, {"max_rel_error", g.max_rel_error}};
  c.detail = fmt("%d directions, max rel error %.3e", g.directions, g.max_rel_error);
  return c;
}

}  // namespace vortexlab
