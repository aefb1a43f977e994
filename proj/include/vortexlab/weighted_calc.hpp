// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_WEIGHTED_CALC_HPP
#define VORTEXLAB_WEIGHTED_CALC_HPP

#include <vector>
#include "json.hpp"
#include "vortexlab/grid.hpp"
#include "vortexlab/taubes.hpp"
#include "vortexlab/weight.hpp"

namespace vortexlab
{

struct HardyGap
{
  double lhs = 0.0;  // int |grad w|^2 f^2
  double rhs = 0.0;  // int w^2 |grad f|^2
};

// Throws InputError unless f vanishes on the outer kInteriorMargin rings.
HardyGap hardy_gap(const VortexWeight &w, const ScalarField &f);

//
// Hodge decompositions of a one-form B supported on the interior node set
// S = {ring >= kInteriorMargin}. Both quadratic functionals are summed over S, potentials
// v, p vanish outside S, and f, q are recovered by integrating the (closed) remainders
// along grid paths; f and q live on S plus one ring. Residuals are relative L2 norms
// over S.
//
struct HodgeParts
{
  ScalarField v, f;  // w B = *w dv + w^{-1} df
  ScalarField p, q;  // B = *dp + dq
  double weighted_residual = 0.0;
  double standard_residual = 0.0;
  int weighted_iterations = 0;
  int standard_iterations = 0;
  bool has_weighted = false;
  bool has_standard = false;
};

// Minimizes sum_S w^2 |B - *dv|^2 by conjugate gradients. Throws ConvergenceError when
// CG fails and InputError when B is not supported on S.
HodgeParts weighted_hodge_decompose(const OneForm &B, const VortexWeight &w, double tol);

// Minimizes sum_S |B - *dp|^2; fills p, q.
HodgeParts standard_hodge_decompose(const OneForm &B, double tol);

// Both decompositions in one record.
HodgeParts hodge_decompose(const OneForm &B, const VortexWeight &w, double tol);

// Weighted functional sum_S w^2 |B - *dv|^2 (quadrature), exposed for stationarity checks.
double weighted_functional(const OneForm &B, const VortexWeight &w, const ScalarField &v);

struct HodgeGap
{
  double lhs = 0.0;      // ||w^{1+eps} (dv - dp)||^2 over S
  double rhs = 0.0;      // C sup w^{2 eps} / eps^2 ||w^{-1} df||^2
  double constant = 0.0; // (8 eps^2 + 5 (1 + eps)^4) / (8 (1 + eps)^2)
};

HodgeGap hodge_gap_check(const HodgeParts &parts, const VortexWeight &w, double eps);

struct Ball
{
  Point center;
  double radius = 0.0;
};

struct CoverBall
{
  Point center;
  double radius = 0.0;
  std::vector<int> zeros;  // indices of zeros inside the ball
};

struct BallCover
{
  double beta = 0.0;
  std::vector<CoverBall> balls;
  int components = 0;
  int merges = 0;
  double min_ratio = 0.0;  // inf of r0 / w_k over doubled balls
  double max_ratio = 0.0;  // sup of r0 / w_k over doubled balls
};

// Repeatedly replaces two balls whose doubles intersect by B_{3(ri + rj)}((zi + zj)/2).
std::vector<Ball> merge_balls(std::vector<Ball> balls, int *merges = nullptr);

// Total length of the level curve {r0 = beta} by marching squares.
double level_set_length(const ScalarField &r0, double beta);

// Covers {r0 <= beta} for the beta in [1/4, 1/2] of least level-set length. Throws
// InternalError if the sublevel set has more components than zeros.
BallCover cover_vortex_set(const VortexSolution &sol);

struct CoverCheck
{
  bool covers = false;
  bool disjoint_doubles = false;
  bool radii_at_least_one = false;
  bool comparable = false;
};

CoverCheck check_cover(const BallCover &cover, const VortexSolution &sol);

nlohmann::json to_json(const BallCover &c);

}  // namespace vortexlab

#endif  // VORTEXLAB_WEIGHTED_CALC_HPP
