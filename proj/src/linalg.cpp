// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <fftw3.h>
#include "vortexlab/error.hpp"

namespace vortexlab
{

double dot(std::span<const double> a, std::span<const double> b)
{
  // Blocked summation keeps the order fixed and the round-off growth moderate.
  constexpr std::size_t kBlock = 1024;
  double total = 0.0;
  for (std::size_t start = 0; start < a.size(); start += kBlock)
  {
    const std::size_t end = std::min(a.size(), start + kBlock);
    double partial = 0.0;
    for (std::size_t k = start; k < end; ++k)
    {
      partial += a[k] * b[k];
    }
    total += partial;
  }
  return total;
}

CgResult pcg(const LinearOperator &op, const LinearOperator &precond, std::span<const double> b,
             std::span<double> x, double rel_tol, int max_iterations)
{
  const std::size_t size = b.size();
  std::vector<double> r(size), z(size), p(size), q(size);
  op(x, q);
  for (std::size_t k = 0; k < size; ++k)
  {
    r[k] = b[k] - q[k];
  }
  const double b_norm = std::sqrt(dot(b, b));
  CgResult result;
  if (b_norm == 0.0)
  {
    std::fill(x.begin(), x.end(), 0.0);
    result.converged = true;
    return result;
  }
  const auto apply_precond = [&](std::span<const double> in, std::span<double> out) {
    if (precond)
    {
      precond(in, out);
    }
    else
    {
      std::copy(in.begin(), in.end(), out.begin());
    }
  };
  apply_precond(r, z);
  p = z;
  double rz = dot(r, z);
  double r_norm = std::sqrt(dot(r, r));
  for (int it = 0; it < max_iterations; ++it)
  {
    result.relative_residual = r_norm / b_norm;
    if (result.relative_residual <= rel_tol)
    {
      result.converged = true;
      result.iterations = it;
      return result;
    }
    op(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0))
    {
      break;
    }
    const double alpha = rz / pq;
    for (std::size_t k = 0; k < size; ++k)
    {
      x[k] += alpha * p[k];
      r[k] -= alpha * q[k];
    }
    apply_precond(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < size; ++k)
    {
      p[k] = z[k] + beta * p[k];
    }
    r_norm = std::sqrt(dot(r, r));
    result.iterations = it + 1;
  }
  result.relative_residual = r_norm / b_norm;
  result.converged = result.relative_residual <= rel_tol;
  return result;
}

namespace
{

std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

}  // namespace

struct SublatticePoisson::Block
{
  int x0 = 0, y0 = 0, mx = 0, my = 0;
  std::vector<double> inv_eigen;
  fftw_plan plan = nullptr;

  ~Block()
  {
    if (plan)
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
  }
};

SublatticePoisson::SublatticePoisson(int n, int lo, int hi, double h, double shift)
  : n_(n), lo_(lo), hi_(hi), h_(h), shift_(shift)
{
  if (lo < 1 || hi > n - 2 || hi - lo < 3)
  {
    throw InputError("SublatticePoisson: invalid index range");
  }
  if (shift < 0.0)
  {
    throw InputError("SublatticePoisson: shift must be non-negative");
  }
  const double big_h = 2.0 * h;
  for (int oy = 0; oy < 2; ++oy)
  {
    for (int ox = 0; ox < 2; ++ox)
    {
      auto b = std::make_unique<Block>();
      b->x0 = lo + ox;
      b->y0 = lo + oy;
      b->mx = (hi - b->x0) / 2 + 1;
      b->my = (hi - b->y0) / 2 + 1;
      const auto eig1d = [big_h](int k, int m) {
        const double s = std::sin(std::numbers::pi * k / (2.0 * (m + 1)));
        return 4.0 / (big_h * big_h) * s * s;
      };
      const double norm = 1.0 / (4.0 * (b->mx + 1) * (b->my + 1));
      b->inv_eigen.resize(static_cast<std::size_t>(b->mx) * b->my);
      for (int l = 0; l < b->my; ++l)
      {
        for (int k = 0; k < b->mx; ++k)
        {
          const double lam = eig1d(k + 1, b->mx) + eig1d(l + 1, b->my) + shift;
          b->inv_eigen[static_cast<std::size_t>(l) * b->mx + k] = norm / lam;
        }
      }
      std::vector<double> scratch(b->inv_eigen.size());
      {
        std::lock_guard<std::mutex> lock(planner_mutex());
        b->plan = fftw_plan_r2r_2d(b->my, b->mx, scratch.data(), scratch.data(), FFTW_RODFT00,
                                   FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
      }
      if (!b->plan)
      {
        throw InternalError("FFTW planning failed");
      }
      blocks_.push_back(std::move(b));
    }
  }
}

SublatticePoisson::~SublatticePoisson() = default;

void SublatticePoisson::solve(std::span<const double> f, std::span<double> u) const
{
  std::fill(u.begin(), u.end(), 0.0);
  std::vector<double> buf;
  for (const auto &b : blocks_)
  {
    buf.assign(b->inv_eigen.size(), 0.0);
    for (int j = 0; j < b->my; ++j)
    {
      for (int i = 0; i < b->mx; ++i)
      {
        buf[static_cast<std::size_t>(j) * b->mx + i] =
            f[static_cast<std::size_t>(b->y0 + 2 * j) * n_ + b->x0 + 2 * i];
      }
    }
    fftw_execute_r2r(b->plan, buf.data(), buf.data());
    for (std::size_t k = 0; k < buf.size(); ++k)
    {
      buf[k] *= b->inv_eigen[k];
    }
    fftw_execute_r2r(b->plan, buf.data(), buf.data());
    for (int j = 0; j < b->my; ++j)
    {
      for (int i = 0; i < b->mx; ++i)
      {
        u[static_cast<std::size_t>(b->y0 + 2 * j) * n_ + b->x0 + 2 * i] =
            buf[static_cast<std::size_t>(j) * b->mx + i];
      }
    }
  }
}

void SublatticePoisson::apply(std::span<const double> u, std::span<double> out) const
{
  const double c = 1.0 / (4.0 * h_ * h_);
  const auto at = [&](int ix, int iy) {
    if (ix < lo_ || ix > hi_ || iy < lo_ || iy > hi_)
    {
      return 0.0;
    }
    return u[static_cast<std::size_t>(iy) * n_ + ix];
  };
  std::fill(out.begin(), out.end(), 0.0);
  for (int iy = lo_; iy <= hi_; ++iy)
  {
    for (int ix = lo_; ix <= hi_; ++ix)
    {
      const double v = at(ix, iy);
      out[static_cast<std::size_t>(iy) * n_ + ix] =
          c * (4.0 * v - at(ix - 2, iy) - at(ix + 2, iy) - at(ix, iy - 2) - at(ix, iy + 2)) +
          shift_ * v;
    }
  }
}

double high_frequency_fraction(std::span<const double> f, int n, double cutoff)
{
  const int nc = n / 2 + 1;
  std::vector<double> in(f.begin(), f.end());
  fftw_complex *out = fftw_alloc_complex(static_cast<std::size_t>(n) * nc);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_2d(n, n, in.data(), out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  double total = 0.0, high = 0.0;
  const double limit = cutoff * (n / 2);
  for (int ky = 0; ky < n; ++ky)
  {
    const int fy = ky <= n / 2 ? ky : n - ky;
    for (int kx = 0; kx < nc; ++kx)
    {
      const fftw_complex &c = out[static_cast<std::size_t>(ky) * nc + kx];
      // Columns other than 0 and n/2 stand for a conjugate pair.
      const double mult = (kx == 0 || 2 * kx == n) ? 1.0 : 2.0;
      const double e = mult * (c[0] * c[0] + c[1] * c[1]);
      total += e;
      if (std::max(kx, fy) > limit)
      {
        high += e;
      }
    }
  }
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(out);
  return total > 0.0 ? high / total : 0.0;
}

}  // namespace vortexlab
