// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_WEIGHT_HPP
#define VORTEXLAB_WEIGHT_HPP

#include <array>
#include <vector>
#include "vortexlab/grid.hpp"

namespace vortexlab
{

struct Point
{
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point &) const = default;
};

//
// Product weight w(x) = prod_k |x - c_k|^{alpha_k}. log w is harmonic away from the
// centers, so w^2 Lap log w = 0 in the distributional sense used by the weighted
// inequalities.
//
class VortexWeight
{
public:
  VortexWeight(std::vector<Point> centers, std::vector<double> exponents);

  // Unit exponents; repeated centers encode multiplicity.
  static VortexWeight unit(const std::vector<Point> &centers);

  const std::vector<Point> &centers() const { return centers_; }
  const std::vector<double> &exponents() const { return exponents_; }

  double value(double x, double y) const;
  double log_value(double x, double y) const;  // -inf at a center

  // Gradient of w; zero at a center (the limit of |grad w|^2 is given by grad_sq).
  std::array<double, 2> grad(double x, double y) const;

  // |grad w|^2 including its limiting value at the centers (finite when the total
  // exponent there is >= 1, +inf otherwise).
  double grad_sq(double x, double y) const;

  // Gradient of log w; zero at a center by convention (callers multiply by w).
  std::array<double, 2> log_grad(double x, double y) const;

  ScalarField sample_value(const Grid &grid) const;
  ScalarField sample_log(const Grid &grid) const;
  OneForm sample_grad(const Grid &grid) const;
  ScalarField sample_grad_sq(const Grid &grid) const;

private:
  std::vector<Point> centers_;
  std::vector<double> exponents_;
};

}  // namespace vortexlab

#endif  // VORTEXLAB_WEIGHT_HPP
