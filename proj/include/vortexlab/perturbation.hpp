// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_PERTURBATION_HPP
#define VORTEXLAB_PERTURBATION_HPP

#include <cstdint>
#include <memory>
#include <string>
#include "json.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/taubes.hpp"

namespace vortexlab
{

// Smooth cutoff: 1 on [0, 1/2], 0 on [1, inf), C-infinity in between.
double cutoff(double s);

// amplitude * cutoff(|x - center| / radius). Throws InputError if the ball reaches the
// outer kInteriorMargin rings.
ScalarField bump_field(const Grid &grid, Point center, double radius, double amplitude);

// Gaussian-filtered white noise (kernel standard deviation corr_len), multiplied by a
// smooth window that vanishes on the outer kInteriorMargin rings and rises to one over
// max(2 corr_len, L/8), then rescaled to sup-norm `amplitude`. Deterministic in seed.
// Throws InputError if corr_len < 4 h.
ScalarField random_smooth_field(const Grid &grid, std::uint64_t seed, double amplitude,
                                double corr_len);

// Same construction for each component of a one-form (independent streams).
OneForm random_smooth_form(const Grid &grid, std::uint64_t seed, double amplitude,
                           double corr_len);

struct PerturbationDescriptor
{
  std::string kind = "zero";  // zero, bump, random, custom
  Point center;
  double radius = 0.0;
  double amplitude = 0.0;
  double corr_len = 0.0;
  std::uint64_t seed = 0;
  Point b_direction;  // bump only: B = bump * b_direction
};

nlohmann::json to_json(const PerturbationDescriptor &d);
PerturbationDescriptor descriptor_from_json(const nlohmann::json &j);

struct Perturbation
{
  std::shared_ptr<const VortexSolution> base;
  ScalarField h_prime;
  OneForm B;
  PerturbationDescriptor descriptor;
};

// h' = bump and B = bump * b_direction (zero by default).
Perturbation make_bump_perturbation(std::shared_ptr<const VortexSolution> base, Point center,
                                    double radius, double amplitude, Point b_direction = {});

// h' and both components of B drawn with random_smooth_field from seed, seed+1, seed+2.
Perturbation make_random_perturbation(std::shared_ptr<const VortexSolution> base,
                                      std::uint64_t seed, double amplitude, double corr_len);

// Multiplies h' and B by t; the descriptor amplitude is scaled as well.
Perturbation scaled(const Perturbation &p, double t);

// u = u0 e^{h'}, A = A0 + B. Throws InputError if sup|h'| > 2 or if h' or B is nonzero on
// the outer kInteriorMargin rings.
PairState apply_perturbation(const Perturbation &p);

// Rescales u to modulus 3 where |u| > 3 (perturbative data stays consistent).
PairState truncate_modulus(const PairState &p);

struct TruncationReport
{
  double energy_in = 0.0;
  double energy_out = 0.0;
  double dist_u_sq = 0.0;
  double constant = 0.0;  // dist_u_sq / (energy_in - 2 pi N), 0 when the denominator vanishes
};

TruncationReport truncation_report(const PairState &in, const PairState &out, int N);

// (u e^{i xi}, A + d xi). xi must vanish on the outer kInteriorMargin rings. The result
// carries no perturbative data.
PairState gauge_transform(const PairState &p, const ScalarField &xi);

// int r0^2 |dh|^2 + r0^2 ((e^{2h} - 1)/2)^2: the closed form quoted for E(u0 e^h, A0) - 2 pi N.
// The exact discrepancy weights the two terms by r0^2 e^{2h} and r0^4, so the two agree
// only up to factors controlled by sup|h| and inf r0 on the support of h.
double sharpness_closed_form(const VortexSolution &base, const ScalarField &h);

// True if f vanishes on the outer `rings` rings of its grid.
bool vanishes_near_boundary(std::span<const double> f, const Grid &grid, int rings);

}  // namespace vortexlab

#endif  // VORTEXLAB_PERTURBATION_HPP
