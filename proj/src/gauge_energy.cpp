// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/gauge_energy.hpp"

#include <cmath>
#include <numbers>
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/taubes.hpp"

namespace vortexlab
{

PairState base_pair(const VortexSolution &base)
{
  PairState p;
  p.u = base.u0;
  p.A = base.A0;
  p.pert = PerturbativeData{ScalarField(base.grid), OneForm(base.grid)};
  return p;
}

ScalarField energy_density(const ComplexField &u, const OneForm &A)
{
  require_same_grid(u.grid, A.grid, "energy of (u, A)");
  const Grid &g = u.grid;
  const int n = g.n();
  const double h = g.spacing();
  const std::size_t size = g.size();
  std::vector<double> dre1(size), dre2(size), dim1(size), dim2(size);
  stencil::diff_x(u.re, dre1, n, h);
  stencil::diff_y(u.re, dre2, n, h);
  stencil::diff_x(u.im, dim1, n, h);
  stencil::diff_y(u.im, dim2, n, h);
  const TwoForm F = d(A);
  ScalarField e(g);
  for (std::size_t k = 0; k < size; ++k)
  {
    const double p1 = dre1[k] + A.a1[k] * u.im[k];
    const double p2 = dre2[k] + A.a2[k] * u.im[k];
    const double q1 = dim1[k] - A.a1[k] * u.re[k];
    const double q2 = dim2[k] - A.a2[k] * u.re[k];
    const double pot = 1.0 - u.re[k] * u.re[k] - u.im[k] * u.im[k];
    e.values[k] = p1 * p1 + p2 * p2 + q1 * q1 + q2 * q2 + F.density[k] * F.density[k] +
                  0.25 * pot * pot;
  }
  return e;
}

double energy_direct(const ComplexField &u, const OneForm &A)
{
  return integrate(energy_density(u, A));
}

double energy_direct(const PairState &p)
{
  return energy_direct(p.u, p.A);
}

DiscrepancyReport discrepancy_perturbative(const VortexSolution &base, const ScalarField &h_prime,
                                           const OneForm &B)
{
  require_same_grid(base.grid, h_prime.grid, "discrepancy: h'");
  require_same_grid(base.grid, B.grid, "discrepancy: B");
  const Grid &g = base.grid;
  DiscrepancyReport rep;
  rep.e1 = star(d(h_prime));
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    rep.e1.a1[k] += B.a1[k];
    rep.e1.a2[k] += B.a2[k];
  }
  const TwoForm dB = d(B);
  const TwoForm dA0 = d(base.A0);
  rep.e2 = ScalarField(g);
  ScalarField first(g), second(g);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    const double r0sq = base.r0.values[k] * base.r0.values[k];
    const double defect = dA0.density[k] - 0.5 * (1.0 - r0sq);
    rep.e2.values[k] = dB.density[k] + r0sq * 0.5 * std::expm1(2.0 * h_prime.values[k]) + defect;
    const double rsq = r0sq * std::exp(2.0 * h_prime.values[k]);
    first.values[k] = rsq * (rep.e1.a1[k] * rep.e1.a1[k] + rep.e1.a2[k] * rep.e1.a2[k]);
    second.values[k] = rep.e2.values[k] * rep.e2.values[k];
  }
  rep.first_term = integrate(first);
  rep.second_term = integrate(second);
  rep.total = rep.first_term + rep.second_term;
  return rep;
}

nlohmann::json to_json(const DiscrepancyReport &r)
{
  return {{"total", r.total}, {"first_term", r.first_term}, {"second_term", r.second_term}};
}

namespace
{

double bilinear(const std::vector<double> &v, const Grid &g, double x, double y)
{
  const double h = g.spacing();
  const double fx = (x + g.half_width()) / h;
  const double fy = (y + g.half_width()) / h;
  int ix = static_cast<int>(std::floor(fx));
  int iy = static_cast<int>(std::floor(fy));
  ix = std::clamp(ix, 0, g.n() - 2);
  iy = std::clamp(iy, 0, g.n() - 2);
  const double tx = fx - ix, ty = fy - iy;
  return (1 - tx) * (1 - ty) * v[g.index(ix, iy)] + tx * (1 - ty) * v[g.index(ix + 1, iy)] +
         (1 - tx) * ty * v[g.index(ix, iy + 1)] + tx * ty * v[g.index(ix + 1, iy + 1)];
}

}  // namespace

DegreeResult degree(const ComplexField &u, double radius_fraction)
{
  if (!(radius_fraction > 0.0 && radius_fraction < 1.0))
  {
    throw InputError("radius fraction must lie in (0, 1)");
  }
  const Grid &g = u.grid;
  const double radius = radius_fraction * g.half_width();
  const int samples = std::max(512, static_cast<int>(16.0 * 2.0 * std::numbers::pi * radius / g.spacing()));
  double total = 0.0;
  double pre_re = 0.0, pre_im = 0.0;
  for (int k = 0; k <= samples; ++k)
  {
    const double t = 2.0 * std::numbers::pi * (k % samples) / samples;
    const double x = radius * std::cos(t), y = radius * std::sin(t);
    const double re = bilinear(u.re, g, x, y);
    const double im = bilinear(u.im, g, x, y);
    if (std::hypot(re, im) < 0.1)
    {
      throw InputError("degree undefined on contour");
    }
    if (k > 0)
    {
      // arg(z_k / z_{k-1})
      total += std::atan2(im * pre_re - re * pre_im, re * pre_re + im * pre_im);
    }
    pre_re = re;
    pre_im = im;
  }
  const double winding = total / (2.0 * std::numbers::pi);
  DegreeResult r;
  r.degree = static_cast<int>(std::lround(winding));
  r.defect = std::abs(winding - r.degree);
  return r;
}

L2Distance l2_distance(const PairState &p, const VortexSolution &base)
{
  require_same_grid(p.u.grid, base.grid, "l2_distance: u");
  require_same_grid(p.A.grid, base.grid, "l2_distance: A");
  const Grid &g = base.grid;
  ScalarField du(g), dF(g);
  const TwoForm F = d(p.A);
  const TwoForm F0 = d(base.A0);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    const double a = p.u.re[k] - base.u0.re[k];
    const double b = p.u.im[k] - base.u0.im[k];
    du.values[k] = a * a + b * b;
    const double c = F.density[k] - F0.density[k];
    dF.values[k] = c * c;
  }
  return {integrate(du), integrate(dF)};
}

namespace
{

TwoForm jacobian_smooth(const VortexSolution &base, const ScalarField &h_prime, const OneForm &B)
{
  const Grid &g = base.grid;
  const VortexWeight w = base.weight();
  const ScalarField omega = w.sample_value(g);
  const OneForm domega = w.sample_grad(g);
  const ScalarField domega_sq = w.sample_grad_sq(g);

  ScalarField s(g);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    s.values[k] = base.h_reg.values[k] + h_prime.values[k];
  }
  const OneForm ds = d(s);
  const OneForm m = d(base.h_reg);
  OneForm A(g);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    A.a1[k] = base.A0.a1[k] + B.a1[k];
    A.a2[k] = base.A0.a2[k] + B.a2[k];
  }
  const TwoForm F = d(A);

  TwoForm J(g);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    const double om = omega.values[k];
    const double e2s = std::exp(2.0 * s.values[k]);
    const double rsq = om * om * e2s;
    // P = w dw + w^2 ds, and A - dtheta = -*m + B - *dw / w.
    const double p1 = om * domega.a1[k] + om * om * ds.a1[k];
    const double p2 = om * domega.a2[k] + om * om * ds.a2[k];
    // -*m + B = (m2 + B1, -m1 + B2)
    const double c1 = m.a2[k] + B.a1[k];
    const double c2 = -m.a1[k] + B.a2[k];
    const double wedge = p1 * c2 - p2 * c1;
    const double radial = -domega_sq.values[k] - om * (ds.a1[k] * domega.a1[k] + ds.a2[k] * domega.a2[k]);
    J.density[k] = (1.0 - rsq) * F.density[k] - 2.0 * e2s * (radial + wedge);
  }
  return J;
}

}  // namespace

TwoForm jacobian_field(const PairState &p, const VortexSolution &base)
{
  if (!p.pert)
  {
    throw InputError("jacobian_field needs a pair built from a base solution");
  }
  require_same_grid(p.pert->h_prime.grid, base.grid, "jacobian_field");
  return jacobian_smooth(base, p.pert->h_prime, p.pert->B);
}

TwoForm base_jacobian(const VortexSolution &base)
{
  return jacobian_smooth(base, ScalarField(base.grid), OneForm(base.grid));
}

double jacobian_l1_diff(const PairState &p, const VortexSolution &base)
{
  const TwoForm J = jacobian_field(p, base);
  const TwoForm J0 = base_jacobian(base);
  ScalarField diff(base.grid);
  for (std::size_t k = 0; k < diff.values.size(); ++k)
  {
    diff.values[k] = std::abs(J.density[k] - J0.density[k]);
  }
  return integrate(diff);
}

double weighted_sobolev_lhs(const VortexSolution &base, const PerturbativeData &pert, double eps)
{
  if (!(eps > 0.0))
  {
    throw InputError("eps must be positive");
  }
  require_same_grid(base.grid, pert.h_prime.grid, "weighted_sobolev_lhs");
  const OneForm dh = d(pert.h_prime);
  ScalarField dens(base.grid);
  for (std::size_t k = 0; k < dens.values.size(); ++k)
  {
    const double w = std::pow(base.r0.values[k], 2.0 + 2.0 * eps);
    dens.values[k] = w * (dh.a1[k] * dh.a1[k] + dh.a2[k] * dh.a2[k] + pert.B.a1[k] * pert.B.a1[k] +
                          pert.B.a2[k] * pert.B.a2[k]);
  }
  return integrate(dens);
}

double total_flux(const OneForm &A)
{
  return integrate(d(A));
}

}  // namespace vortexlab
