// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include "vortexlab/error.hpp"

namespace vortexlab
{

Grid::Grid(int n, double half_width)
  : n_(n), half_width_(half_width), spacing_(2.0 * half_width / (n - 1))
{
}

int Grid::ring(int ix, int iy) const
{
  return std::min({ix, iy, n_ - 1 - ix, n_ - 1 - iy});
}

Grid build_grid(int n, double half_width)
{
  if (n % 2 == 0)
  {
    throw InputError("n must be odd");
  }
  if (n < 65)
  {
    throw InputError("n must be at least 65");
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width))
  {
    throw InputError("half width L must be positive");
  }
  return Grid(n, half_width);
}

bool all_finite(std::span<const double> v)
{
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_same_grid(const Grid &a, const Grid &b, const char *what)
{
  if (!(a == b))
  {
    throw InputError(std::string("grid mismatch: ") + what);
  }
}

}  // namespace vortexlab
