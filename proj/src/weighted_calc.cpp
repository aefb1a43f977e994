// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/weighted_calc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/linalg.hpp"
#include "vortexlab/perturbation.hpp"

namespace vortexlab
{

HardyGap hardy_gap(const VortexWeight &w, const ScalarField &f)
{
  const Grid &g = f.grid;
  if (!vanishes_near_boundary(f.values, g, kInteriorMargin))
  {
    throw InputError("hardy_gap needs f supported away from the boundary margin");
  }
  const OneForm df = d(f);
  ScalarField lhs(g), rhs(g);
  for (int iy = 0; iy < g.n(); ++iy)
  {
    for (int ix = 0; ix < g.n(); ++ix)
    {
      const std::size_t k = g.index(ix, iy);
      const double x = g.coord(ix), y = g.coord(iy);
      const double fv = f.values[k];
      lhs.values[k] = fv == 0.0 ? 0.0 : w.grad_sq(x, y) * fv * fv;
      const double om = w.value(x, y);
      rhs.values[k] = om * om * (df.a1[k] * df.a1[k] + df.a2[k] * df.a2[k]);
    }
  }
  return {integrate(lhs), integrate(rhs)};
}

namespace
{

bool in_s(const Grid &g, int ix, int iy)
{
  return g.ring(ix, iy) >= kInteriorMargin;
}

std::vector<char> s_mask(const Grid &g)
{
  std::vector<char> m(g.size(), 0);
  for (int iy = 0; iy < g.n(); ++iy)
  {
    for (int ix = 0; ix < g.n(); ++ix)
    {
      m[g.index(ix, iy)] = in_s(g, ix, iy) ? 1 : 0;
    }
  }
  return m;
}

// *dv = (-D2 v, D1 v)
void star_d(const Grid &g, std::span<const double> v, std::vector<double> &x1, std::vector<double> &x2)
{
  x1.resize(g.size());
  x2.resize(g.size());
  stencil::diff_y(v, x1, g.n(), g.spacing());
  for (auto &a : x1)
  {
    a = -a;
  }
  stencil::diff_x(v, x2, g.n(), g.spacing());
}

// Adjoint of star_d: (-D2)^T z1 + D1^T z2, accumulated into out.
void star_d_transpose_add(const Grid &g, std::vector<double> &z1, const std::vector<double> &z2,
                          std::span<double> out)
{
  for (auto &a : z1)
  {
    a = -a;
  }
  stencil::diff_y_transpose_add(z1, out, g.n(), g.spacing());
  stencil::diff_x_transpose_add(z2, out, g.n(), g.spacing());
}

// Solves min sum_S c_k |B - *dv|^2 over v supported on S, c_k = quadrature weight * w_k^2.
struct LeastSquaresHodge
{
  const Grid &g;
  std::vector<double> coef;  // zero outside S
  std::vector<char> mask;

  LeastSquaresHodge(const Grid &grid, const std::vector<double> &w_sq) : g(grid), mask(s_mask(grid))
  {
    const auto quad = stencil::trapezoid_weights(g);
    coef.assign(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k)
    {
      coef[k] = mask[k] ? quad[k] * w_sq[k] : 0.0;
    }
  }

  void apply(std::span<const double> v, std::span<double> out) const
  {
    std::vector<double> x1, x2;
    star_d(g, v, x1, x2);
    for (std::size_t k = 0; k < g.size(); ++k)
    {
      x1[k] *= coef[k];
      x2[k] *= coef[k];
    }
    std::fill(out.begin(), out.end(), 0.0);
    star_d_transpose_add(g, x1, x2, out);
    for (std::size_t k = 0; k < g.size(); ++k)
    {
      if (!mask[k])
      {
        out[k] = 0.0;
      }
    }
  }

  std::vector<double> rhs(const OneForm &B) const
  {
    std::vector<double> z1(g.size()), z2(g.size()), out(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k)
    {
      z1[k] = coef[k] * B.a1[k];
      z2[k] = coef[k] * B.a2[k];
    }
    star_d_transpose_add(g, z1, z2, out);
    for (std::size_t k = 0; k < g.size(); ++k)
    {
      if (!mask[k])
      {
        out[k] = 0.0;
      }
    }
    return out;
  }

  // Diagonal of the normal operator: 1/4 of the sum of c over the four neighbours in S.
  std::vector<double> diagonal() const
  {
    const double h = g.spacing();
    std::vector<double> dg(g.size(), 0.0);
    const int n = g.n();
    for (int iy = 1; iy < n - 1; ++iy)
    {
      for (int ix = 1; ix < n - 1; ++ix)
      {
        const std::size_t k = g.index(ix, iy);
        if (!mask[k])
        {
          continue;
        }
        dg[k] = (coef[k - 1] + coef[k + 1] + coef[k - n] + coef[k + n]) / (4.0 * h * h);
      }
    }
    return dg;
  }

  std::vector<double> solve(const OneForm &B, double cg_tol, int &iterations) const
  {
    const int n = g.n();
    const double h = g.spacing();
    const SublatticePoisson poisson(n, kInteriorMargin, n - 1 - kInteriorMargin, h, 0.0);
    // Unweighted diagonal, used to turn the Poisson inverse into a scaled preconditioner.
    std::vector<double> base_diag(g.size(), 0.0);
    for (int iy = 1; iy < n - 1; ++iy)
    {
      for (int ix = 1; ix < n - 1; ++ix)
      {
        const std::size_t k = g.index(ix, iy);
        if (!mask[k])
        {
          continue;
        }
        const int cnt = mask[k - 1] + mask[k + 1] + mask[k - n] + mask[k + n];
        base_diag[k] = cnt * h * h / (4.0 * h * h);
      }
    }
    const auto dg = diagonal();
    std::vector<double> inv_scale(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k)
    {
      if (mask[k] && dg[k] > 0.0)
      {
        inv_scale[k] = std::sqrt(base_diag[k] / dg[k]);
      }
    }
    const LinearOperator op = [this](std::span<const double> x, std::span<double> y) { apply(x, y); };
    const LinearOperator pre = [&](std::span<const double> x, std::span<double> y) {
      std::vector<double> t(x.size());
      for (std::size_t k = 0; k < x.size(); ++k)
      {
        t[k] = x[k] * inv_scale[k];
      }
      poisson.solve(t, y);
      for (std::size_t k = 0; k < y.size(); ++k)
      {
        y[k] *= inv_scale[k] / (h * h);
      }
    };
    const auto b = rhs(B);
    std::vector<double> v(g.size(), 0.0);
    const CgResult res = pcg(op, pre, b, v, cg_tol, 20000);
    iterations = res.iterations;
    if (!res.converged)
    {
      throw ConvergenceError("Hodge conjugate gradients did not converge", res.relative_residual,
                             res.iterations);
    }
    pin_free_class(v);
    return v;
  }

  // The parity class touching S on all four sides carries a constant null mode; fix it
  // by making the class mean over its outermost nodes vanish.
  void pin_free_class(std::vector<double> &v) const
  {
    const int lo = kInteriorMargin, hi = g.n() - 1 - kInteriorMargin;
    if ((hi - lo) % 2 != 0)
    {
      return;
    }
    double sum = 0.0;
    int count = 0;
    for (int iy = lo; iy <= hi; iy += 2)
    {
      for (int ix = lo; ix <= hi; ix += 2)
      {
        if (ix == lo || ix == hi || iy == lo || iy == hi)
        {
          sum += v[g.index(ix, iy)];
          ++count;
        }
      }
    }
    const double mean = sum / count;
    for (int iy = lo; iy <= hi; iy += 2)
    {
      for (int ix = lo; ix <= hi; ix += 2)
      {
        v[g.index(ix, iy)] -= mean;
      }
    }
  }
};

// Integrates a field Y that is closed on S: finds f on S plus one ring with
// D f = Y at every node of S. Each parity class gets its own path tree rooted inside S.
ScalarField integrate_closed(const Grid &g, const std::vector<double> &y1, const std::vector<double> &y2)
{
  const int n = g.n();
  const int lo = kInteriorMargin - 1, hi = n - kInteriorMargin;  // f lives on [lo, hi]
  const double two_h = 2.0 * g.spacing();
  ScalarField f(g);
  for (int oy = 0; oy < 2; ++oy)
  {
    for (int ox = 0; ox < 2; ++ox)
    {
      const int x0 = kInteriorMargin + ox, y0 = kInteriorMargin + oy;
      // Row y0 (inside S) from x0 in both directions.
      for (int x = x0 + 2; x <= hi; x += 2)
      {
        f(x, y0) = f(x - 2, y0) + two_h * y1[g.index(x - 1, y0)];
      }
      for (int x = x0 - 2; x >= lo; x -= 2)
      {
        f(x, y0) = f(x + 2, y0) - two_h * y1[g.index(x + 1, y0)];
      }
      // Columns through S-nodes of that row.
      for (int x = x0; x <= n - 1 - kInteriorMargin; x += 2)
      {
        for (int y = y0 + 2; y <= hi; y += 2)
        {
          f(x, y) = f(x, y - 2) + two_h * y2[g.index(x, y - 1)];
        }
        for (int y = y0 - 2; y >= lo; y -= 2)
        {
          f(x, y) = f(x, y + 2) - two_h * y2[g.index(x, y + 1)];
        }
      }
      // Columns on the outer ring of the f-domain: reach them along rows inside S.
      for (int x : {lo, hi})
      {
        if ((x - x0) % 2 != 0)
        {
          continue;
        }
        const int inner = x == lo ? x + 2 : x - 2;
        const int mid = x == lo ? x + 1 : x - 1;
        const double sign = x == lo ? -1.0 : 1.0;
        for (int y = lo; y <= hi; ++y)
        {
          if ((y - y0) % 2 != 0 || y == y0)
          {
            continue;
          }
          const double grad = (y >= kInteriorMargin && y <= n - 1 - kInteriorMargin)
                                  ? y1[g.index(mid, y)]
                                  : 0.0;
          f(x, y) = f(inner, y) + sign * two_h * grad;
        }
      }
    }
  }
  return f;
}

double relative_norm(const Grid &g, const std::vector<char> &mask, const std::vector<double> &r1,
                     const std::vector<double> &r2, const std::vector<double> &b1,
                     const std::vector<double> &b2)
{
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    if (!mask[k])
    {
      continue;
    }
    num += r1[k] * r1[k] + r2[k] * r2[k];
    den += b1[k] * b1[k] + b2[k] * b2[k];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void require_supported(const OneForm &B)
{
  if (!all_finite(B.a1) || !all_finite(B.a2))
  {
    throw InputError("one-form has non-finite values");
  }
  if (!vanishes_near_boundary(B.a1, B.grid, kInteriorMargin) ||
      !vanishes_near_boundary(B.a2, B.grid, kInteriorMargin))
  {
    throw InputError("one-form must vanish on the boundary margin");
  }
}

double cg_tolerance(double tol)
{
  if (!(tol > 0.0))
  {
    throw InputError("tolerance must be positive");
  }
  return std::max(1e-13, std::min(1e-8, 1e-3 * tol));
}

}  // namespace

HodgeParts weighted_hodge_decompose(const OneForm &B, const VortexWeight &w, double tol)
{
  require_supported(B);
  const Grid &g = B.grid;
  const double cg_tol = cg_tolerance(tol);
  const ScalarField om = w.sample_value(g);
  std::vector<double> w_sq(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    w_sq[k] = om.values[k] * om.values[k];
  }
  HodgeParts parts;
  const LeastSquaresHodge ls(g, w_sq);
  parts.v = ScalarField(g);
  parts.v.values = ls.solve(B, cg_tol, parts.weighted_iterations);

  // Y = w^2 (B - *dv) on S; closed there by the Euler-Lagrange equations.
  std::vector<double> x1, x2;
  star_d(g, parts.v.values, x1, x2);
  std::vector<double> y1(g.size(), 0.0), y2(g.size(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    if (ls.mask[k])
    {
      y1[k] = w_sq[k] * (B.a1[k] - x1[k]);
      y2[k] = w_sq[k] * (B.a2[k] - x2[k]);
    }
  }
  parts.f = integrate_closed(g, y1, y2);

  const OneForm df = d(parts.f);
  std::vector<double> r1(g.size(), 0.0), r2(g.size(), 0.0), b1(g.size(), 0.0), b2(g.size(), 0.0);
  std::vector<char> mask = ls.mask;
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    const double o = om.values[k];
    if (o == 0.0)
    {
      mask[k] = 0;
      continue;
    }
    b1[k] = o * B.a1[k];
    b2[k] = o * B.a2[k];
    r1[k] = b1[k] - o * x1[k] - df.a1[k] / o;
    r2[k] = b2[k] - o * x2[k] - df.a2[k] / o;
  }
  parts.weighted_residual = relative_norm(g, mask, r1, r2, b1, b2);
  parts.has_weighted = true;
  if (parts.weighted_residual > tol)
  {
    throw ConvergenceError("weighted Hodge reconstruction above tolerance", parts.weighted_residual,
                           parts.weighted_iterations);
  }
  return parts;
}

HodgeParts standard_hodge_decompose(const OneForm &B, double tol)
{
  require_supported(B);
  const Grid &g = B.grid;
  const double cg_tol = cg_tolerance(tol);
  HodgeParts parts;
  const LeastSquaresHodge ls(g, std::vector<double>(g.size(), 1.0));
  parts.p = ScalarField(g);
  parts.p.values = ls.solve(B, cg_tol, parts.standard_iterations);

  std::vector<double> x1, x2;
  star_d(g, parts.p.values, x1, x2);
  std::vector<double> y1(g.size(), 0.0), y2(g.size(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    if (ls.mask[k])
    {
      y1[k] = B.a1[k] - x1[k];
      y2[k] = B.a2[k] - x2[k];
    }
  }
  parts.q = integrate_closed(g, y1, y2);
  const OneForm dq = d(parts.q);
  std::vector<double> r1(g.size()), r2(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    r1[k] = y1[k] - dq.a1[k];
    r2[k] = y2[k] - dq.a2[k];
  }
  parts.standard_residual = relative_norm(g, ls.mask, r1, r2, B.a1, B.a2);
  parts.has_standard = true;
  if (parts.standard_residual > tol)
  {
    throw ConvergenceError("standard Hodge reconstruction above tolerance", parts.standard_residual,
                           parts.standard_iterations);
  }
  return parts;
}

HodgeParts hodge_decompose(const OneForm &B, const VortexWeight &w, double tol)
{
  HodgeParts parts = weighted_hodge_decompose(B, w, tol);
  HodgeParts std_parts = standard_hodge_decompose(B, tol);
  parts.p = std::move(std_parts.p);
  parts.q = std::move(std_parts.q);
  parts.standard_residual = std_parts.standard_residual;
  parts.standard_iterations = std_parts.standard_iterations;
  parts.has_standard = true;
  return parts;
}

double weighted_functional(const OneForm &B, const VortexWeight &w, const ScalarField &v)
{
  const Grid &g = B.grid;
  const ScalarField om = w.sample_value(g);
  const auto quad = stencil::trapezoid_weights(g);
  std::vector<double> x1, x2;
  star_d(g, v.values, x1, x2);
  double total = 0.0;
  for (int iy = 0; iy < g.n(); ++iy)
  {
    double row = 0.0;
    for (int ix = 0; ix < g.n(); ++ix)
    {
      if (!in_s(g, ix, iy))
      {
        continue;
      }
      const std::size_t k = g.index(ix, iy);
      const double a = B.a1[k] - x1[k], b = B.a2[k] - x2[k];
      row += quad[k] * om.values[k] * om.values[k] * (a * a + b * b);
    }
    total += row;
  }
  return total;
}

HodgeGap hodge_gap_check(const HodgeParts &parts, const VortexWeight &w, double eps)
{
  if (!parts.has_weighted || !parts.has_standard)
  {
    throw InputError("hodge_gap_check needs both decompositions");
  }
  if (!(eps > 0.0))
  {
    throw InputError("eps must be positive");
  }
  const Grid &g = parts.v.grid;
  require_same_grid(g, parts.p.grid, "hodge_gap_check");
  const ScalarField om = w.sample_value(g);
  const OneForm dv = d(parts.v), dp = d(parts.p), df = d(parts.f);
  const auto quad = stencil::trapezoid_weights(g);
  double lhs = 0.0, dfw = 0.0, sup_w = 0.0;
  for (int iy = 0; iy < g.n(); ++iy)
  {
    for (int ix = 0; ix < g.n(); ++ix)
    {
      if (!in_s(g, ix, iy))
      {
        continue;
      }
      const std::size_t k = g.index(ix, iy);
      const double o = om.values[k];
      sup_w = std::max(sup_w, o);
      const double a = dv.a1[k] - dp.a1[k], b = dv.a2[k] - dp.a2[k];
      lhs += quad[k] * std::pow(o, 2.0 + 2.0 * eps) * (a * a + b * b);
      if (o > 0.0)
      {
        dfw += quad[k] * (df.a1[k] * df.a1[k] + df.a2[k] * df.a2[k]) / (o * o);
      }
    }
  }
  HodgeGap gap;
  gap.constant = (8.0 * eps * eps + 5.0 * std::pow(1.0 + eps, 4)) / (8.0 * (1.0 + eps) * (1.0 + eps));
  gap.lhs = lhs;
  gap.rhs = gap.constant * std::pow(sup_w, 2.0 * eps) / (eps * eps) * dfw;
  return gap;
}

//
// Ball cover
//

std::vector<Ball> merge_balls(std::vector<Ball> balls, int *merges)
{
  int count = 0;
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (std::size_t i = 0; i < balls.size() && !changed; ++i)
    {
      for (std::size_t j = i + 1; j < balls.size() && !changed; ++j)
      {
        const double dist = std::hypot(balls[i].center.x - balls[j].center.x,
                                       balls[i].center.y - balls[j].center.y);
        if (dist < 2.0 * (balls[i].radius + balls[j].radius))
        {
          Ball merged;
          merged.center = {0.5 * (balls[i].center.x + balls[j].center.x),
                           0.5 * (balls[i].center.y + balls[j].center.y)};
          merged.radius = 3.0 * (balls[i].radius + balls[j].radius);
          balls.erase(balls.begin() + static_cast<std::ptrdiff_t>(j));
          balls[i] = merged;
          ++count;
          changed = true;
        }
      }
    }
  }
  if (merges)
  {
    *merges = count;
  }
  return balls;
}

double level_set_length(const ScalarField &r0, double beta)
{
  const Grid &g = r0.grid;
  const double h = g.spacing();
  double total = 0.0;
  for (int iy = 0; iy + 1 < g.n(); ++iy)
  {
    double row = 0.0;
    for (int ix = 0; ix + 1 < g.n(); ++ix)
    {
      // Corners counter-clockwise from the lower left, in cell-local units.
      const double v[4] = {r0(ix, iy) - beta, r0(ix + 1, iy) - beta, r0(ix + 1, iy + 1) - beta,
                           r0(ix, iy + 1) - beta};
      const double px[4] = {0, 1, 1, 0}, py[4] = {0, 0, 1, 1};
      double cx[4], cy[4];
      int crossings = 0;
      for (int e = 0; e < 4; ++e)
      {
        const int a = e, b = (e + 1) % 4;
        if ((v[a] < 0.0) != (v[b] < 0.0))
        {
          const double t = v[a] / (v[a] - v[b]);
          cx[crossings] = px[a] + t * (px[b] - px[a]);
          cy[crossings] = py[a] + t * (py[b] - py[a]);
          ++crossings;
        }
      }
      if (crossings == 2)
      {
        row += std::hypot(cx[1] - cx[0], cy[1] - cy[0]);
      }
      else if (crossings == 4)
      {
        // Saddle: pair crossings according to the sign of the cell average.
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        if ((centre < 0.0) == (v[0] < 0.0))
        {
          row += std::hypot(cx[1] - cx[0], cy[1] - cy[0]) + std::hypot(cx[3] - cx[2], cy[3] - cy[2]);
        }
        else
        {
          row += std::hypot(cx[3] - cx[0], cy[3] - cy[0]) + std::hypot(cx[2] - cx[1], cy[2] - cy[1]);
        }
      }
    }
    total += row;
  }
  return total * h;
}

namespace
{

std::vector<std::vector<std::size_t>> sublevel_components(const ScalarField &r0, double beta)
{
  const Grid &g = r0.grid;
  const int n = g.n();
  std::vector<int> label(g.size(), -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t start = 0; start < g.size(); ++start)
  {
    if (label[start] >= 0 || r0.values[start] > beta)
    {
      continue;
    }
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::deque<std::size_t> queue{start};
    label[start] = id;
    while (!queue.empty())
    {
      const std::size_t k = queue.front();
      queue.pop_front();
      comps[id].push_back(k);
      const int ix = static_cast<int>(k % n), iy = static_cast<int>(k / n);
      const int nx[4] = {ix - 1, ix + 1, ix, ix};
      const int ny[4] = {iy, iy, iy - 1, iy + 1};
      for (int e = 0; e < 4; ++e)
      {
        if (nx[e] < 0 || nx[e] >= n || ny[e] < 0 || ny[e] >= n)
        {
          continue;
        }
        const std::size_t m = g.index(nx[e], ny[e]);
        if (label[m] < 0 && r0.values[m] <= beta)
        {
          label[m] = id;
          queue.push_back(m);
        }
      }
    }
  }
  return comps;
}

bool inside(const CoverBall &b, double x, double y, double factor)
{
  return std::hypot(x - b.center.x, y - b.center.y) <= factor * b.radius;
}

}  // namespace

BallCover cover_vortex_set(const VortexSolution &sol)
{
  const Grid &g = sol.grid;
  BallCover cover;
  double best = std::numeric_limits<double>::infinity();
  constexpr int kScan = 26;
  for (int i = 0; i < kScan; ++i)
  {
    const double beta = 0.25 + 0.25 * i / (kScan - 1);
    const double len = level_set_length(sol.r0, beta);
    if (len < best)
    {
      best = len;
      cover.beta = beta;
    }
  }
  const auto comps = sublevel_components(sol.r0, cover.beta);
  cover.components = static_cast<int>(comps.size());
  if (cover.components > sol.degree())
  {
    throw InternalError("sublevel set has more components than vortices");
  }
  std::vector<Ball> balls;
  for (const auto &comp : comps)
  {
    double sx = 0.0, sy = 0.0;
    for (std::size_t k : comp)
    {
      sx += g.coord(static_cast<int>(k % g.n()));
      sy += g.coord(static_cast<int>(k / g.n()));
    }
    const Point c{sx / comp.size(), sy / comp.size()};
    double rmax = 0.0;
    for (std::size_t k : comp)
    {
      rmax = std::max(rmax, std::hypot(g.coord(static_cast<int>(k % g.n())) - c.x,
                                       g.coord(static_cast<int>(k / g.n())) - c.y));
    }
    balls.push_back({c, std::max(1.0, rmax + g.spacing())});
  }
  balls = merge_balls(std::move(balls), &cover.merges);
  for (const auto &b : balls)
  {
    CoverBall cb{b.center, b.radius, {}};
    for (std::size_t z = 0; z < sol.zeros.size(); ++z)
    {
      if (inside(cb, sol.zeros[z].x, sol.zeros[z].y, 1.0))
      {
        cb.zeros.push_back(static_cast<int>(z));
      }
    }
    cover.balls.push_back(cb);
  }

  // r0 / w_k = e^{h} prod_{zeros outside ball k} |x - a|
  cover.min_ratio = std::numeric_limits<double>::infinity();
  cover.max_ratio = 0.0;
  for (const auto &b : cover.balls)
  {
    for (int iy = 0; iy < g.n(); ++iy)
    {
      for (int ix = 0; ix < g.n(); ++ix)
      {
        const double x = g.coord(ix), y = g.coord(iy);
        if (!inside(b, x, y, 2.0))
        {
          continue;
        }
        double ratio = std::exp(sol.h_reg(ix, iy));
        for (std::size_t z = 0; z < sol.zeros.size(); ++z)
        {
          if (std::find(b.zeros.begin(), b.zeros.end(), static_cast<int>(z)) == b.zeros.end())
          {
            ratio *= std::hypot(x - sol.zeros[z].x, y - sol.zeros[z].y);
          }
        }
        cover.min_ratio = std::min(cover.min_ratio, ratio);
        cover.max_ratio = std::max(cover.max_ratio, ratio);
      }
    }
  }
  return cover;
}

CoverCheck check_cover(const BallCover &cover, const VortexSolution &sol)
{
  const Grid &g = sol.grid;
  CoverCheck c;
  c.covers = true;
  for (int iy = 0; iy < g.n() && c.covers; ++iy)
  {
    for (int ix = 0; ix < g.n(); ++ix)
    {
      if (sol.r0(ix, iy) > cover.beta)
      {
        continue;
      }
      const bool hit = std::any_of(cover.balls.begin(), cover.balls.end(), [&](const CoverBall &b) {
        return inside(b, g.coord(ix), g.coord(iy), 1.0);
      });
      if (!hit)
      {
        c.covers = false;
        break;
      }
    }
  }
  c.disjoint_doubles = true;
  for (std::size_t i = 0; i < cover.balls.size(); ++i)
  {
    for (std::size_t j = i + 1; j < cover.balls.size(); ++j)
    {
      const auto &a = cover.balls[i], &b = cover.balls[j];
      if (std::hypot(a.center.x - b.center.x, a.center.y - b.center.y) < 2.0 * (a.radius + b.radius))
      {
        c.disjoint_doubles = false;
      }
    }
  }
  c.radii_at_least_one = std::all_of(cover.balls.begin(), cover.balls.end(),
                                     [](const CoverBall &b) { return b.radius >= 1.0; });
  c.comparable = std::isfinite(cover.min_ratio) && std::isfinite(cover.max_ratio) &&
                 cover.min_ratio > 0.0 && cover.max_ratio < std::numeric_limits<double>::infinity();
  return c;
}

nlohmann::json to_json(const BallCover &c)
{
  nlohmann::json balls = nlohmann::json::array();
  for (const auto &b : c.balls)
  {
    balls.push_back({{"cx", b.center.x}, {"cy", b.center.y}, {"rho", b.radius}});
  }
  return {{"beta", c.beta},
          {"balls", balls},
          {"comparability", {{"min_ratio", c.min_ratio}, {"max_ratio", c.max_ratio}}}};
}

}  // namespace vortexlab
