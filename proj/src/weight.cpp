// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/weight.hpp"

#include <cmath>
#include <limits>
#include "vortexlab/error.hpp"

namespace vortexlab
{

VortexWeight::VortexWeight(std::vector<Point> centers, std::vector<double> exponents)
  : centers_(std::move(centers)), exponents_(std::move(exponents))
{
  if (centers_.empty())
  {
    throw InputError("weight needs at least one center");
  }
  if (centers_.size() != exponents_.size())
  {
    throw InputError("weight centers and exponents differ in length");
  }
  for (double a : exponents_)
  {
    if (!(a > 0.0) || !std::isfinite(a))
    {
      throw InputError("weight exponents must be positive");
    }
  }
}

VortexWeight VortexWeight::unit(const std::vector<Point> &centers)
{
  return VortexWeight(centers, std::vector<double>(centers.size(), 1.0));
}

double VortexWeight::value(double x, double y) const
{
  double w = 1.0;
  for (std::size_t k = 0; k < centers_.size(); ++k)
  {
    const double dist = std::hypot(x - centers_[k].x, y - centers_[k].y);
    w *= exponents_[k] == 1.0 ? dist : std::pow(dist, exponents_[k]);
  }
  return w;
}

double VortexWeight::log_value(double x, double y) const
{
  double s = 0.0;
  for (std::size_t k = 0; k < centers_.size(); ++k)
  {
    const double dx = x - centers_[k].x, dy = y - centers_[k].y;
    const double r2 = dx * dx + dy * dy;
    if (r2 == 0.0)
    {
      return -std::numeric_limits<double>::infinity();
    }
    s += 0.5 * exponents_[k] * std::log(r2);
  }
  return s;
}

std::array<double, 2> VortexWeight::log_grad(double x, double y) const
{
  std::array<double, 2> g{0.0, 0.0};
  for (std::size_t k = 0; k < centers_.size(); ++k)
  {
    const double dx = x - centers_[k].x, dy = y - centers_[k].y;
    const double r2 = dx * dx + dy * dy;
    if (r2 == 0.0)
    {
      return {0.0, 0.0};
    }
    g[0] += exponents_[k] * dx / r2;
    g[1] += exponents_[k] * dy / r2;
  }
  return g;
}

std::array<double, 2> VortexWeight::grad(double x, double y) const
{
  const double w = value(x, y);
  if (w == 0.0)
  {
    return {0.0, 0.0};
  }
  const auto lg = log_grad(x, y);
  return {w * lg[0], w * lg[1]};
}

double VortexWeight::grad_sq(double x, double y) const
{
  const double w = value(x, y);
  if (w != 0.0)
  {
    const auto lg = log_grad(x, y);
    return w * w * (lg[0] * lg[0] + lg[1] * lg[1]);
  }
  // At a center: |grad w| ~ (product of the other factors) * alpha * r^{alpha - 1}.
  double alpha = 0.0;
  double rest_sq = 1.0;
  for (std::size_t k = 0; k < centers_.size(); ++k)
  {
    const double dx = x - centers_[k].x, dy = y - centers_[k].y;
    const double r2 = dx * dx + dy * dy;
    if (r2 == 0.0)
    {
      alpha += exponents_[k];
    }
    else
    {
      rest_sq *= std::pow(r2, exponents_[k]);
    }
  }
  if (alpha > 1.0)
  {
    return 0.0;
  }
  if (alpha < 1.0)
  {
    return std::numeric_limits<double>::infinity();
  }
  return rest_sq;
}

ScalarField VortexWeight::sample_value(const Grid &grid) const
{
  return sample(grid, [this](double x, double y) { return value(x, y); });
}

ScalarField VortexWeight::sample_log(const Grid &grid) const
{
  return sample(grid, [this](double x, double y) { return log_value(x, y); });
}

OneForm VortexWeight::sample_grad(const Grid &grid) const
{
  OneForm out(grid);
  for (int iy = 0; iy < grid.n(); ++iy)
  {
    for (int ix = 0; ix < grid.n(); ++ix)
    {
      const auto g = grad(grid.coord(ix), grid.coord(iy));
      out.a1[grid.index(ix, iy)] = g[0];
      out.a2[grid.index(ix, iy)] = g[1];
    }
  }
  return out;
}

ScalarField VortexWeight::sample_grad_sq(const Grid &grid) const
{
  return sample(grid, [this](double x, double y) { return grad_sq(x, y); });
}

}  // namespace vortexlab
