// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace vortexlab
{

namespace stencil
{

void diff_x(std::span<const double> in, std::span<double> out, int n, double h)
{
  const double c = 1.0 / (2.0 * h);
  for (int iy = 0; iy < n; ++iy)
  {
    const double *f = in.data() + static_cast<std::size_t>(iy) * n;
    double *g = out.data() + static_cast<std::size_t>(iy) * n;
    g[0] = c * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
    for (int ix = 1; ix < n - 1; ++ix)
    {
      g[ix] = c * (f[ix + 1] - f[ix - 1]);
    }
    g[n - 1] = c * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
  }
}

void diff_y(std::span<const double> in, std::span<double> out, int n, double h)
{
  const double c = 1.0 / (2.0 * h);
  const auto row = [n](int iy) { return static_cast<std::size_t>(iy) * n; };
  for (int ix = 0; ix < n; ++ix)
  {
    out[row(0) + ix] = c * (-3.0 * in[row(0) + ix] + 4.0 * in[row(1) + ix] - in[row(2) + ix]);
    out[row(n - 1) + ix] =
        c * (3.0 * in[row(n - 1) + ix] - 4.0 * in[row(n - 2) + ix] + in[row(n - 3) + ix]);
  }
  for (int iy = 1; iy < n - 1; ++iy)
  {
    for (int ix = 0; ix < n; ++ix)
    {
      out[row(iy) + ix] = c * (in[row(iy + 1) + ix] - in[row(iy - 1) + ix]);
    }
  }
}

void diff_x_transpose_add(std::span<const double> in, std::span<double> out, int n, double h)
{
  const double c = 1.0 / (2.0 * h);
  for (int iy = 0; iy < n; ++iy)
  {
    const double *g = in.data() + static_cast<std::size_t>(iy) * n;
    double *f = out.data() + static_cast<std::size_t>(iy) * n;
    f[0] += -3.0 * c * g[0];
    f[1] += 4.0 * c * g[0];
    f[2] += -c * g[0];
    for (int ix = 1; ix < n - 1; ++ix)
    {
      f[ix + 1] += c * g[ix];
      f[ix - 1] -= c * g[ix];
    }
    f[n - 1] += 3.0 * c * g[n - 1];
    f[n - 2] += -4.0 * c * g[n - 1];
    f[n - 3] += c * g[n - 1];
  }
}

void diff_y_transpose_add(std::span<const double> in, std::span<double> out, int n, double h)
{
  const double c = 1.0 / (2.0 * h);
  const auto row = [n](int iy) { return static_cast<std::size_t>(iy) * n; };
  for (int ix = 0; ix < n; ++ix)
  {
    const double g0 = in[row(0) + ix];
    out[row(0) + ix] += -3.0 * c * g0;
    out[row(1) + ix] += 4.0 * c * g0;
    out[row(2) + ix] += -c * g0;
    const double g1 = in[row(n - 1) + ix];
    out[row(n - 1) + ix] += 3.0 * c * g1;
    out[row(n - 2) + ix] += -4.0 * c * g1;
    out[row(n - 3) + ix] += c * g1;
  }
  for (int iy = 1; iy < n - 1; ++iy)
  {
    for (int ix = 0; ix < n; ++ix)
    {
      const double g = c * in[row(iy) + ix];
      out[row(iy + 1) + ix] += g;
      out[row(iy - 1) + ix] -= g;
    }
  }
}

void laplacian5(std::span<const double> in, std::span<double> out, int n, double h)
{
  const double c = 1.0 / (h * h);
  std::fill(out.begin(), out.end(), 0.0);
  for (int iy = 1; iy < n - 1; ++iy)
  {
    const std::size_t r = static_cast<std::size_t>(iy) * n;
    for (int ix = 1; ix < n - 1; ++ix)
    {
      const std::size_t k = r + ix;
      out[k] = c * (in[k - 1] + in[k + 1] + in[k - n] + in[k + n] - 4.0 * in[k]);
    }
  }
}

std::vector<double> trapezoid_weights(const Grid &grid)
{
  const int n = grid.n();
  const double h2 = grid.spacing() * grid.spacing();
  std::vector<double> w(grid.size());
  for (int iy = 0; iy < n; ++iy)
  {
    const double wy = (iy == 0 || iy == n - 1) ? 0.5 : 1.0;
    for (int ix = 0; ix < n; ++ix)
    {
      const double wx = (ix == 0 || ix == n - 1) ? 0.5 : 1.0;
      w[grid.index(ix, iy)] = h2 * wx * wy;
    }
  }
  return w;
}

double weighted_sum(std::span<const double> w, std::span<const double> f, int n)
{
  double total = 0.0;
  for (int iy = 0; iy < n; ++iy)
  {
    const std::size_t r = static_cast<std::size_t>(iy) * n;
    double row = 0.0;
    for (int ix = 0; ix < n; ++ix)
    {
      row += w[r + ix] * f[r + ix];
    }
    total += row;
  }
  return total;
}

}  // namespace stencil

OneForm d(const ScalarField &f)
{
  OneForm out(f.grid);
  stencil::diff_x(f.values, out.a1, f.grid.n(), f.grid.spacing());
  stencil::diff_y(f.values, out.a2, f.grid.n(), f.grid.spacing());
  return out;
}

TwoForm d(const OneForm &alpha)
{
  const int n = alpha.grid.n();
  const double h = alpha.grid.spacing();
  TwoForm out(alpha.grid);
  std::vector<double> tmp(alpha.grid.size());
  stencil::diff_x(alpha.a2, out.density, n, h);
  stencil::diff_y(alpha.a1, tmp, n, h);
  for (std::size_t k = 0; k < tmp.size(); ++k)
  {
    out.density[k] -= tmp[k];
  }
  return out;
}

OneForm star(const OneForm &alpha)
{
  OneForm out(alpha.grid);
  for (std::size_t k = 0; k < alpha.a1.size(); ++k)
  {
    out.a1[k] = -alpha.a2[k];
    out.a2[k] = alpha.a1[k];
  }
  return out;
}

TwoForm star(const ScalarField &f)
{
  TwoForm out(f.grid);
  out.density = f.values;
  return out;
}

ScalarField star(const TwoForm &tau)
{
  ScalarField out(tau.grid);
  out.values = tau.density;
  return out;
}

double integrate(const ScalarField &f)
{
  const auto w = stencil::trapezoid_weights(f.grid);
  return stencil::weighted_sum(w, f.values, f.grid.n());
}

double integrate(const TwoForm &tau)
{
  const auto w = stencil::trapezoid_weights(tau.grid);
  return stencil::weighted_sum(w, tau.density, tau.grid.n());
}

double l2_norm_sq(const ScalarField &f)
{
  std::vector<double> sq(f.values.size());
  std::transform(f.values.begin(), f.values.end(), sq.begin(), [](double v) { return v * v; });
  return stencil::weighted_sum(stencil::trapezoid_weights(f.grid), sq, f.grid.n());
}

double l2_norm_sq(const OneForm &alpha)
{
  std::vector<double> sq(alpha.a1.size());
  for (std::size_t k = 0; k < sq.size(); ++k)
  {
    sq[k] = alpha.a1[k] * alpha.a1[k] + alpha.a2[k] * alpha.a2[k];
  }
  return stencil::weighted_sum(stencil::trapezoid_weights(alpha.grid), sq, alpha.grid.n());
}

double sup_norm(std::span<const double> v)
{
  double m = 0.0;
  for (double x : v)
  {
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace vortexlab
