// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_CRITERIA_HPP
#define VORTEXLAB_CRITERIA_HPP

#include <string>
#include <vector>
#include "json.hpp"
#include "vortexlab/experiments.hpp"
#include "vortexlab/selection.hpp"
#include "vortexlab/weighted_calc.hpp"

namespace vortexlab
{

// Pass/fail thresholds shared by the CLI summaries and the acceptance runner.
namespace limits
{
inline constexpr double kEnergyRel = 5e-3;
inline constexpr double kBaseDiscrepancy = 1e-4;    // times 2 pi
inline constexpr double kSolveSeconds = 60.0;
inline constexpr double kBoxDoublingRel = 1e-4;
inline constexpr double kOracleSup = 2e-3;
inline constexpr double kIdentityRel = 1e-3;
inline constexpr double kStabilityVariation = 0.2;
inline constexpr double kSharpnessFloor = 1e-3;     // dist_u^2 / discrepancy
inline constexpr double kSharpnessBand = 4.0;       // per halving of R
inline constexpr double kEpsRatioCeiling = 1.0;     // eps^2 sobolev / discrepancy
inline constexpr double kEpsGrowth = 2.0;           // smallest eps vs largest eps
inline constexpr double kJacobianSpread = 2.0;      // max / min of jac / sqrt(disc)
inline constexpr double kJacobianMass = 1e-2;
inline constexpr double kHardySlack = 1.05;
inline constexpr double kHodgeResidual = 1e-6;
inline constexpr double kHodgeGapSlack = 1.1;
inline constexpr double kSelectionDistance = 10.0;
inline constexpr double kSelectionEnergyTol = 5e-3;  // times 2 pi N
inline constexpr double kPolyRadius = 2.0 / 3.0;
inline constexpr double kPolyResidual = 1e-6;
inline constexpr double kPolyExact = 1e-12;
inline constexpr double kGradientRel = 1e-5;
}  // namespace limits

struct Criterion
{
  std::string name;
  bool pass = false;
  std::string detail;
  nlohmann::json measured;
};

nlohmann::json to_json(const Criterion &c);

// Energy and discrepancy of a solved base, plus the energy after doubling the box.
Criterion check_bogomolny(double energy, int N, double base_discrepancy, double seconds,
                          double energy_doubled_box);

Criterion check_oracle(double sup_difference);

// Pairs (energy - 2 pi N, perturbative discrepancy).
Criterion check_identity(const std::vector<std::pair<double, double>> &pairs);

// One sweep per base, each ordered by decreasing t.
Criterion check_quadratic_stability(const std::vector<std::vector<SweepRow>> &sweeps);

// Rows ordered by increasing radius.
Criterion check_sharpness(const std::vector<SharpnessRow> &rows);

Criterion check_weighted_sobolev(const SweepRow &row, const std::vector<double> &eps_list);

// Sweeps as for stability, with the base Jacobian masses and N per sweep.
Criterion check_jacobian(const std::vector<std::vector<SweepRow>> &sweeps,
                         const std::vector<double> &jacobian_mass, const std::vector<int> &N);

Criterion check_hardy(const std::vector<HardyRow> &rows);

Criterion check_hodge(const std::vector<HodgeRow> &rows, double eps);

struct CoverCase
{
  std::string zeros;
  CoverCheck check;
  BallCover cover;
};

Criterion check_cover_cases(const std::vector<CoverCase> &cases);

Criterion check_selection(const SelectionReport &r, int N);

// lambda for the exact cases (R = 0 and constant R with N = 1) next to the suite rows.
Criterion check_poly(const std::vector<PolyRow> &rows, const std::vector<double> &exact_lambdas);

Criterion check_gradient_result(const GradientCheck &g);

}  // namespace vortexlab

#endif  // VORTEXLAB_CRITERIA_HPP
