// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"

namespace vortexlab
{

namespace
{

double psi(double t)
{
  return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

// 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t)
{
  const double a = psi(t), b = psi(1.0 - t);
  return a / (a + b);
}

// Uniform double in (0, 1] built from the raw 64-bit output.
double unit_open(std::mt19937_64 &rng)
{
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

std::vector<double> gaussian_noise(std::size_t count, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; k += 2)
  {
    const double u1 = unit_open(rng), u2 = unit_open(rng);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    out[k] = rad * std::cos(2.0 * std::numbers::pi * u2);
    if (k + 1 < count)
    {
      out[k + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
  }
  return out;
}

void convolve_rows(std::vector<double> &f, int n, const std::vector<double> &kernel, bool along_x)
{
  const int half = static_cast<int>(kernel.size() / 2);
  std::vector<double> out(f.size(), 0.0);
  for (int iy = 0; iy < n; ++iy)
  {
    for (int ix = 0; ix < n; ++ix)
    {
      double s = 0.0;
      for (int j = -half; j <= half; ++j)
      {
        const int jx = along_x ? ix + j : ix;
        const int jy = along_x ? iy : iy + j;
        if (jx < 0 || jx >= n || jy < 0 || jy >= n)
        {
          continue;
        }
        s += kernel[j + half] * f[static_cast<std::size_t>(jy) * n + jx];
      }
      out[static_cast<std::size_t>(iy) * n + ix] = s;
    }
  }
  f.swap(out);
}

}  // namespace

double cutoff(double s)
{
  s = std::abs(s);
  if (s <= 0.5)
  {
    return 1.0;
  }
  if (s >= 1.0)
  {
    return 0.0;
  }
  const double a = psi(1.0 - s), b = psi(s - 0.5);
  return a / (a + b);
}

ScalarField bump_field(const Grid &grid, Point center, double radius, double amplitude)
{
  if (!(radius > 0.0))
  {
    throw InputError("bump radius must be positive");
  }
  const double inner = grid.half_width() - kInteriorMargin * grid.spacing();
  if (std::abs(center.x) + radius > inner || std::abs(center.y) + radius > inner)
  {
    throw InputError("bump reaches the boundary margin");
  }
  return sample(grid, [&](double x, double y) {
    return amplitude * cutoff(std::hypot(x - center.x, y - center.y) / radius);
  });
}

ScalarField random_smooth_field(const Grid &grid, std::uint64_t seed, double amplitude,
                                double corr_len)
{
  const double h = grid.spacing();
  if (!(corr_len >= 4.0 * h * (1.0 - 1e-12)))
  {
    throw InputError("corr_len must be at least 4 grid spacings");
  }
  const int n = grid.n();
  ScalarField out(grid);
  if (amplitude == 0.0)
  {
    return out;
  }
  std::vector<double> f = gaussian_noise(grid.size(), seed);
  const int half = static_cast<int>(std::ceil(4.0 * corr_len / h));
  std::vector<double> kernel(2 * half + 1);
  for (int j = -half; j <= half; ++j)
  {
    const double x = j * h / corr_len;
    kernel[j + half] = std::exp(-0.5 * x * x);
  }
  convolve_rows(f, n, kernel, true);
  convolve_rows(f, n, kernel, false);

  const double width = std::max(2.0 * corr_len, grid.half_width() / 8.0);
  const double edge = kInteriorMargin * h;
  const auto window1d = [&](int i) {
    const double dist = std::min(i, n - 1 - i) * h;  // distance from the box edge
    return smooth_step((dist - edge) / width);
  };
  double sup = 0.0;
  for (int iy = 0; iy < n; ++iy)
  {
    for (int ix = 0; ix < n; ++ix)
    {
      const std::size_t k = grid.index(ix, iy);
      f[k] *= window1d(ix) * window1d(iy);
      sup = std::max(sup, std::abs(f[k]));
    }
  }
  if (sup == 0.0)
  {
    return out;
  }
  const double scale = amplitude / sup;
  for (std::size_t k = 0; k < f.size(); ++k)
  {
    out.values[k] = f[k] * scale;
  }
  return out;
}

OneForm random_smooth_form(const Grid &grid, std::uint64_t seed, double amplitude, double corr_len)
{
  OneForm B(grid);
  B.a1 = random_smooth_field(grid, seed, amplitude, corr_len).values;
  B.a2 = random_smooth_field(grid, seed + 1, amplitude, corr_len).values;
  return B;
}

nlohmann::json to_json(const PerturbationDescriptor &d)
{
  return {{"kind", d.kind},           {"center", {d.center.x, d.center.y}},
          {"radius", d.radius},       {"amplitude", d.amplitude},
          {"corr_len", d.corr_len},   {"seed", d.seed},
          {"b_direction", {d.b_direction.x, d.b_direction.y}}};
}

PerturbationDescriptor descriptor_from_json(const nlohmann::json &j)
{
  PerturbationDescriptor d;
  d.kind = j.at("kind").get<std::string>();
  d.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
  d.radius = j.at("radius").get<double>();
  d.amplitude = j.at("amplitude").get<double>();
  d.corr_len = j.at("corr_len").get<double>();
  d.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("b_direction"))
  {
    d.b_direction = {j.at("b_direction").at(0).get<double>(), j.at("b_direction").at(1).get<double>()};
  }
  return d;
}

Perturbation make_bump_perturbation(std::shared_ptr<const VortexSolution> base, Point center,
                                    double radius, double amplitude, Point b_direction)
{
  Perturbation p;
  p.h_prime = bump_field(base->grid, center, radius, amplitude);
  p.B = OneForm(base->grid);
  for (std::size_t k = 0; k < p.h_prime.values.size(); ++k)
  {
    p.B.a1[k] = b_direction.x * p.h_prime.values[k];
    p.B.a2[k] = b_direction.y * p.h_prime.values[k];
  }
  p.descriptor.b_direction = b_direction;
  p.descriptor.kind = "bump";
  p.descriptor.center = center;
  p.descriptor.radius = radius;
  p.descriptor.amplitude = amplitude;
  p.base = std::move(base);
  return p;
}

Perturbation make_random_perturbation(std::shared_ptr<const VortexSolution> base,
                                      std::uint64_t seed, double amplitude, double corr_len)
{
  Perturbation p;
  p.h_prime = random_smooth_field(base->grid, seed, amplitude, corr_len);
  p.B = random_smooth_form(base->grid, seed + 1, amplitude, corr_len);
  p.descriptor.kind = "random";
  p.descriptor.amplitude = amplitude;
  p.descriptor.corr_len = corr_len;
  p.descriptor.seed = seed;
  p.base = std::move(base);
  return p;
}

Perturbation scaled(const Perturbation &p, double t)
{
  Perturbation out = p;
  for (auto &v : out.h_prime.values)
  {
    v *= t;
  }
  for (std::size_t k = 0; k < out.B.a1.size(); ++k)
  {
    out.B.a1[k] *= t;
    out.B.a2[k] *= t;
  }
  out.descriptor.amplitude *= t;
  return out;
}

bool vanishes_near_boundary(std::span<const double> f, const Grid &grid, int rings)
{
  for (int iy = 0; iy < grid.n(); ++iy)
  {
    for (int ix = 0; ix < grid.n(); ++ix)
    {
      if (grid.ring(ix, iy) < rings && f[grid.index(ix, iy)] != 0.0)
      {
        return false;
      }
    }
  }
  return true;
}

PairState apply_perturbation(const Perturbation &p)
{
  if (!p.base)
  {
    throw InputError("perturbation has no base solution");
  }
  const VortexSolution &base = *p.base;
  require_same_grid(base.grid, p.h_prime.grid, "perturbation h'");
  require_same_grid(base.grid, p.B.grid, "perturbation B");
  if (!all_finite(p.h_prime.values) || !all_finite(p.B.a1) || !all_finite(p.B.a2))
  {
    throw InputError("perturbation has non-finite values");
  }
  if (sup_norm(p.h_prime.values) > 2.0)
  {
    throw InputError("sup|h'| exceeds 2");
  }
  if (!vanishes_near_boundary(p.h_prime.values, base.grid, kInteriorMargin) ||
      !vanishes_near_boundary(p.B.a1, base.grid, kInteriorMargin) ||
      !vanishes_near_boundary(p.B.a2, base.grid, kInteriorMargin))
  {
    throw InputError("perturbation must vanish on the boundary margin");
  }
  PairState out;
  out.u = base.u0;
  out.A = base.A0;
  for (std::size_t k = 0; k < base.grid.size(); ++k)
  {
    const double e = std::exp(p.h_prime.values[k]);
    out.u.re[k] *= e;
    out.u.im[k] *= e;
    out.A.a1[k] += p.B.a1[k];
    out.A.a2[k] += p.B.a2[k];
  }
  out.pert = PerturbativeData{p.h_prime, p.B};
  return out;
}

PairState truncate_modulus(const PairState &p)
{
  PairState out = p;
  for (std::size_t k = 0; k < out.u.re.size(); ++k)
  {
    const double m = std::hypot(out.u.re[k], out.u.im[k]);
    if (m > 3.0)
    {
      const double s = 3.0 / m;
      out.u.re[k] *= s;
      out.u.im[k] *= s;
      if (out.pert)
      {
        out.pert->h_prime.values[k] += std::log(s);
      }
    }
  }
  return out;
}

TruncationReport truncation_report(const PairState &in, const PairState &out, int N)
{
  TruncationReport r;
  r.energy_in = energy_direct(in);
  r.energy_out = energy_direct(out);
  ScalarField diff(in.u.grid);
  for (std::size_t k = 0; k < diff.values.size(); ++k)
  {
    const double a = in.u.re[k] - out.u.re[k], b = in.u.im[k] - out.u.im[k];
    diff.values[k] = a * a + b * b;
  }
  r.dist_u_sq = integrate(diff);
  const double excess = r.energy_in - 2.0 * std::numbers::pi * N;
  r.constant = excess > 0.0 ? r.dist_u_sq / excess : 0.0;
  return r;
}

PairState gauge_transform(const PairState &p, const ScalarField &xi)
{
  require_same_grid(p.u.grid, xi.grid, "gauge_transform");
  if (!vanishes_near_boundary(xi.values, xi.grid, kInteriorMargin))
  {
    throw InputError("gauge function must vanish on the boundary margin");
  }
  PairState out;
  out.u = p.u;
  out.A = p.A;
  const OneForm dxi = d(xi);
  for (std::size_t k = 0; k < xi.values.size(); ++k)
  {
    const double c = std::cos(xi.values[k]), s = std::sin(xi.values[k]);
    out.u.re[k] = p.u.re[k] * c - p.u.im[k] * s;
    out.u.im[k] = p.u.re[k] * s + p.u.im[k] * c;
    out.A.a1[k] += dxi.a1[k];
    out.A.a2[k] += dxi.a2[k];
  }
  return out;
}

double sharpness_closed_form(const VortexSolution &base, const ScalarField &h)
{
  require_same_grid(base.grid, h.grid, "sharpness_closed_form");
  const OneForm dh = d(h);
  ScalarField dens(base.grid);
  for (std::size_t k = 0; k < dens.values.size(); ++k)
  {
    const double r0sq = base.r0.values[k] * base.r0.values[k];
    const double pot = 0.5 * std::expm1(2.0 * h.values[k]);
    dens.values[k] = r0sq * (dh.a1[k] * dh.a1[k] + dh.a2[k] * dh.a2[k] + pot * pot);
  }
  return integrate(dens);
}

}  // namespace vortexlab
