// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_EXPERIMENTS_HPP
#define VORTEXLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>
#include "json.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/polyperturb.hpp"
#include "vortexlab/taubes.hpp"

namespace vortexlab
{

//
// Tables and files
//

struct Table
{
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string &name) const;  // throws InputError if absent
};

// FNV-1a of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json &config);

// Header comment block (config hash and config), column line, rows in %.17g.
void write_csv(const std::filesystem::path &path, const Table &table, const nlohmann::json &config);
Table read_csv(const std::filesystem::path &path);

// <csv>.summary.json next to a CSV output.
std::filesystem::path summary_path(const std::filesystem::path &csv);

// Number of worker threads: VORTEXLAB_THREADS if set and positive, else the hardware count.
int worker_count();

// Runs body(i) for i in [0, count) on worker_count() threads. Results must be written to
// per-index slots so the output does not depend on scheduling.
void parallel_for(int count, const std::function<void(int)> &body);

//
// Stability sweep
//

// Bump of radius 2 and amplitude 1 centred at (0.5, 0.25) from the first zero, with
// B = bump * (0.6, -0.4).
Perturbation reference_bump(std::shared_ptr<const VortexSolution> base);

struct SweepRow
{
  double t = 0.0;
  double discrepancy = 0.0;  // perturbative discrepancy
  double dist_u_sq = 0.0;
  double dist_F_sq = 0.0;
  double jacobian_l1_diff = 0.0;
  std::vector<double> sobolev;  // weighted Sobolev quantity per eps

  double stability_ratio() const;  // discrepancy / (dist_u_sq + dist_F_sq)
  double jacobian_ratio() const;   // jacobian_l1_diff / sqrt(discrepancy)
  double eps_ratio(std::size_t i, double eps) const;  // eps^2 sobolev[i] / discrepancy
};

std::vector<SweepRow> stability_sweep(const Perturbation &p, const std::vector<double> &t_list,
                                      const std::vector<double> &eps_list);

Table sweep_table(const std::vector<SweepRow> &rows, const std::vector<double> &eps_list);

//
// Sharpness: mollified balls far from the vortex set
//

struct SharpnessRow
{
  double radius = 0.0;
  double amplitude = 0.0;
  double discrepancy = 0.0;
  double closed_form = 0.0;
  double dist_u_sq = 0.0;
  double ratio = 0.0;  // dist_u_sq / discrepancy
};

// Node-aligned centre farthest from the zeros at which a ball of radius max_radius stays
// inside the interior and away from the doubled covering balls.
Point sharpness_center(const VortexSolution &base, double max_radius);

// Throws InputError if a ball meets a doubled covering ball.
std::vector<SharpnessRow> sharpness_sweep(std::shared_ptr<const VortexSolution> base, Point center,
                                          const std::vector<double> &radii, double amplitude);

Table sharpness_table(const std::vector<SharpnessRow> &rows);

//
// Weighted calculus suites
//

struct HodgeRow
{
  double seed = 0.0;
  double eps = 0.0;
  double weighted_residual = 0.0;
  double standard_residual = 0.0;
  double gap_lhs = 0.0;
  double gap_rhs = 0.0;
  double gap_constant = 0.0;
};

// Random interior one-forms (corr_len 0.8) against a one-centre weight near the origin.
std::vector<HodgeRow> hodge_suite(const Grid &grid, std::uint64_t seed, int count,
                                  const std::vector<double> &eps_list, double tol);

Table hodge_table(const std::vector<HodgeRow> &rows);

struct HardyRow
{
  double index = 0.0;
  double centers = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Seeded weights with 1 to 3 centres at cell centres and exponents in {1/2, 1, 2}, with
// random smooth f.
std::vector<HardyRow> hardy_suite(const Grid &grid, std::uint64_t seed, int count);

Table hardy_table(const std::vector<HardyRow> &rows);

//
// Polynomial suite
//

// Monic polynomial with `degree` seeded roots in the disc of radius 0.45.
ComplexPoly seeded_polynomial(std::uint64_t seed, int degree);

struct PolyRow
{
  double degree = 0.0;
  double seed = 0.0;
  double cn_norm = 0.0;
  double lambda = 0.0;
  double lambda_half = 0.0;  // same seed with the norm halved
  double max_root_modulus = 0.0;
  double max_root_residual = 0.0;
};

std::vector<PolyRow> poly_suite(int max_degree, int seeds, double cn);

Table poly_table(const std::vector<PolyRow> &rows);

}  // namespace vortexlab

#endif  // VORTEXLAB_EXPERIMENTS_HPP
