// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/taubes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include "json.hpp"
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/field_io.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/linalg.hpp"

namespace vortexlab
{

ZeroSet parse_zero_list(const std::string &text)
{
  ZeroSet zeros;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ';'))
  {
    if (item.find_first_not_of(" \t") == std::string::npos)
    {
      continue;
    }
    const auto comma = item.find(',');
    if (comma == std::string::npos)
    {
      throw InputError("malformed zero \"" + item + "\" (expected x,y)");
    }
    try
    {
      std::size_t used_x = 0, used_y = 0;
      const std::string xs = item.substr(0, comma), ys = item.substr(comma + 1);
      const double x = std::stod(xs, &used_x);
      const double y = std::stod(ys, &used_y);
      if (xs.find_first_not_of(" \t", used_x) != std::string::npos ||
          ys.find_first_not_of(" \t", used_y) != std::string::npos)
      {
        throw std::invalid_argument("trailing text");
      }
      zeros.push_back({x, y});
    }
    catch (const std::logic_error &)
    {
      throw InputError("malformed zero \"" + item + "\" (expected x,y)");
    }
  }
  if (zeros.empty())
  {
    throw InputError("zero list is empty");
  }
  return zeros;
}

namespace
{

constexpr int kDirichletRings = 2;

void check_zeros(const ZeroSet &zeros, const Grid &grid)
{
  if (zeros.empty())
  {
    throw InputError("zero set is empty");
  }
  const double limit = 0.5 * grid.half_width();
  for (const auto &z : zeros)
  {
    if (!std::isfinite(z.x) || !std::isfinite(z.y) || std::abs(z.x) > limit ||
        std::abs(z.y) > limit)
    {
      throw InputError("zero too close to boundary");
    }
  }
}

ScalarField log_weight(const ZeroSet &zeros, const Grid &grid)
{
  return VortexWeight::unit(zeros).sample_log(grid);
}

// r0^2 = exp(2 (h + log w)), zero where w vanishes.
void modulus_sq(const ScalarField &h, const ScalarField &logw, std::vector<double> &out)
{
  out.resize(h.values.size());
  for (std::size_t k = 0; k < out.size(); ++k)
  {
    out[k] = std::isinf(logw.values[k]) ? 0.0 : std::exp(2.0 * (h.values[k] + logw.values[k]));
  }
}

bool in_interior(const Grid &g, int ix, int iy)
{
  return g.ring(ix, iy) >= kDirichletRings;
}

// Lap h - (r0^2 - 1)/2 on interior nodes, zero elsewhere; returns the sup-norm.
double newton_residual(const ScalarField &h, const std::vector<double> &r0sq, std::vector<double> &F)
{
  const Grid &g = h.grid;
  const int n = g.n();
  const double c = 1.0 / (4.0 * g.spacing() * g.spacing());
  F.assign(g.size(), 0.0);
  double sup = 0.0;
  for (int iy = kDirichletRings; iy < n - kDirichletRings; ++iy)
  {
    for (int ix = kDirichletRings; ix < n - kDirichletRings; ++ix)
    {
      const std::size_t k = g.index(ix, iy);
      const double lap = c * (h.values[k - 2] + h.values[k + 2] + h.values[k - 2 * n] +
                              h.values[k + 2 * n] - 4.0 * h.values[k]);
      F[k] = lap - 0.5 * (r0sq[k] - 1.0);
      sup = std::max(sup, std::abs(F[k]));
    }
  }
  return sup;
}

}  // namespace

VortexSolution solve_taubes(const ZeroSet &zeros, const Grid &grid, const TaubesOptions &opts)
{
  check_zeros(zeros, grid);
  if (!(opts.tol > 0.0))
  {
    throw InputError("tolerance must be positive");
  }
  const int n = grid.n();
  const ScalarField logw = log_weight(zeros, grid);

  ScalarField h(grid);
  for (int iy = 0; iy < n; ++iy)
  {
    for (int ix = 0; ix < n; ++ix)
    {
      const std::size_t k = grid.index(ix, iy);
      if (!in_interior(grid, ix, iy))
      {
        h.values[k] = -logw.values[k];
        continue;
      }
      double s = 0.0;
      for (const auto &z : zeros)
      {
        const double dx = grid.coord(ix) - z.x, dy = grid.coord(iy) - z.y;
        s += std::log(dx * dx + dy * dy + 1.0);
      }
      h.values[k] = -0.5 * s;
    }
  }

  const int lo = kDirichletRings, hi = n - 1 - kDirichletRings;
  const SublatticePoisson lap(n, lo, hi, grid.spacing(), 0.0);
  const SublatticePoisson precond(n, lo, hi, grid.spacing(), 1.0);

  std::vector<double> r0sq, F, delta(grid.size()), F_trial;
  modulus_sq(h, logw, r0sq);
  double res = newton_residual(h, r0sq, F);
  int iter = 0;
  ScalarField trial(grid);
  std::vector<double> r0sq_trial;
  while (res > opts.tol)
  {
    if (iter >= opts.max_iterations)
    {
      throw ConvergenceError("Taubes Newton iteration did not converge", res, iter);
    }
    const LinearOperator jac = [&](std::span<const double> x, std::span<double> y) {
      lap.apply(x, y);
      for (std::size_t k = 0; k < y.size(); ++k)
      {
        y[k] += r0sq[k] * x[k];
      }
      // Keep the Dirichlet rings decoupled.
      for (int iy = 0; iy < n; ++iy)
      {
        for (int ix = 0; ix < n; ++ix)
        {
          if (!in_interior(grid, ix, iy))
          {
            y[grid.index(ix, iy)] = 0.0;
          }
        }
      }
    };
    const LinearOperator pre = [&](std::span<const double> x, std::span<double> y) {
      precond.solve(x, y);
    };
    std::fill(delta.begin(), delta.end(), 0.0);
    const double inner_tol = std::clamp(0.1 * res, 1e-14, 0.1);
    const CgResult cg = pcg(jac, pre, F, delta, inner_tol, 500);
    if (!cg.converged && cg.relative_residual > 0.5)
    {
      throw ConvergenceError("Taubes inner linear solve failed", res, iter);
    }

    double step = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings)
    {
      for (std::size_t k = 0; k < grid.size(); ++k)
      {
        trial.values[k] = h.values[k] + step * delta[k];
      }
      modulus_sq(trial, logw, r0sq_trial);
      const double trial_res = newton_residual(trial, r0sq_trial, F_trial);
      if (trial_res < res)
      {
        std::swap(h.values, trial.values);
        std::swap(r0sq, r0sq_trial);
        std::swap(F, F_trial);
        res = trial_res;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++iter;
    if (!accepted)
    {
      throw ConvergenceError("Taubes line search stalled", res, iter);
    }
  }
  return solution_from_regular_part(zeros, std::move(h), opts.tol, iter);
}

VortexSolution solution_from_regular_part(const ZeroSet &zeros, ScalarField h_reg, double tol,
                                          int iterations)
{
  const Grid grid = h_reg.grid;
  check_zeros(zeros, grid);
  if (!all_finite(h_reg.values))
  {
    throw InputError("regular part has non-finite values");
  }
  VortexSolution sol;
  sol.zeros = zeros;
  sol.grid = grid;
  sol.tol = tol;
  sol.iterations = iterations;
  sol.h_reg = std::move(h_reg);

  const ScalarField logw = log_weight(zeros, grid);
  sol.r0 = ScalarField(grid);
  sol.u0 = ComplexField(grid);
  for (int iy = 0; iy < grid.n(); ++iy)
  {
    for (int ix = 0; ix < grid.n(); ++ix)
    {
      const std::size_t k = grid.index(ix, iy);
      const double eh = std::exp(sol.h_reg.values[k]);
      sol.r0.values[k] = std::isinf(logw.values[k]) ? 0.0 : std::exp(sol.h_reg.values[k] + logw.values[k]);
      const std::complex<double> z(grid.coord(ix), grid.coord(iy));
      std::complex<double> poly(1.0, 0.0);
      for (const auto &a : zeros)
      {
        poly *= z - std::complex<double>(a.x, a.y);
      }
      sol.u0.re[k] = poly.real() * eh;
      sol.u0.im[k] = poly.imag() * eh;
    }
  }
  // A0 = -*dh = (D2 h, -D1 h)
  const OneForm dh = d(sol.h_reg);
  sol.A0 = OneForm(grid);
  for (std::size_t k = 0; k < grid.size(); ++k)
  {
    sol.A0.a1[k] = dh.a2[k];
    sol.A0.a2[k] = -dh.a1[k];
  }
  sol.energy = energy_direct(sol.u0, sol.A0);
  sol.residual_sup = taubes_residual(sol);
  return sol;
}

TaubesResidual taubes_residual_parts(const VortexSolution &sol)
{
  const Grid &g = sol.grid;
  const int n = g.n();
  std::vector<double> r0sq(g.size()), F;
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    r0sq[k] = sol.r0.values[k] * sol.r0.values[k];
  }
  TaubesResidual out;
  out.newton = newton_residual(sol.h_reg, r0sq, F);
  const TwoForm curv = d(sol.A0);
  for (int iy = kDirichletRings; iy < n - kDirichletRings; ++iy)
  {
    for (int ix = kDirichletRings; ix < n - kDirichletRings; ++ix)
    {
      const std::size_t k = g.index(ix, iy);
      out.curvature = std::max(out.curvature, std::abs(curv.density[k] - 0.5 * (1.0 - r0sq[k])));
    }
  }
  return out;
}

double taubes_residual(const VortexSolution &sol)
{
  return taubes_residual_parts(sol).value();
}

//
// Radial oracle
//

double RadialProfile::value_at(double r) const
{
  if (r <= rho.front())
  {
    return f.front();
  }
  if (r >= rho.back())
  {
    return f.back();
  }
  const double step = rho[1] - rho[0];
  const auto i = std::min(static_cast<std::size_t>(r / step), rho.size() - 2);
  const double t = (r - rho[i]) / step;
  return (1.0 - t) * f[i] + t * f[i + 1];
}

namespace
{

enum class Shot
{
  TooSmall,
  TooLarge,
  Reached,
};

// g = log f - log rho satisfies g'' + g'/rho = (rho^2 e^{2g} - 1) / 2. Integrates with RK4
// from the series start at rho = ds and records f at every node.
Shot shoot(double g0, double ds, int count, std::vector<double> &f_out)
{
  const double c2 = std::exp(2.0 * g0);
  const auto rhs = [](double rho, double g, double gp) {
    return 0.5 * (rho * rho * std::exp(2.0 * g) - 1.0) - gp / rho;
  };
  f_out.assign(1, 0.0);
  double rho = ds;
  double g = g0 - rho * rho / 8.0 + c2 * std::pow(rho, 4) / 32.0;
  double gp = -rho / 4.0 + c2 * std::pow(rho, 3) / 8.0;
  f_out.push_back(rho * std::exp(g));
  for (int i = 1; i < count; ++i)
  {
    const double k1g = gp, k1p = rhs(rho, g, gp);
    const double k2g = gp + 0.5 * ds * k1p, k2p = rhs(rho + 0.5 * ds, g + 0.5 * ds * k1g, k2g);
    const double k3g = gp + 0.5 * ds * k2p, k3p = rhs(rho + 0.5 * ds, g + 0.5 * ds * k2g, k3g);
    const double k4g = gp + ds * k3p, k4p = rhs(rho + ds, g + ds * k3g, k4g);
    g += ds / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
    gp += ds / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    rho += ds;
    const double f = rho * std::exp(g);
    if (!std::isfinite(f) || f > 1.0)
    {
      return Shot::TooLarge;
    }
    if (1.0 / rho + gp < 0.0)
    {
      return Shot::TooSmall;
    }
    f_out.push_back(f);
  }
  return Shot::Reached;
}

}  // namespace

RadialProfile radial_profile_oracle(double rho_max, int steps)
{
  if (!(rho_max >= 8.0))
  {
    throw InputError("rho_max must be at least 8");
  }
  if (steps < 16)
  {
    throw InputError("radial oracle needs at least 16 steps");
  }
  const double out_step = rho_max / steps;
  const int sub = std::max(1, static_cast<int>(std::ceil(out_step / 2e-3)));
  const double ds = out_step / sub;
  const int count = steps * sub + 1;

  std::vector<double> f_lo, f_hi;
  double lo = std::log(1e-3), hi = std::log(10.0);
  if (shoot(lo, ds, count, f_lo) != Shot::TooSmall || shoot(hi, ds, count, f_hi) != Shot::TooLarge)
  {
    throw InternalError("radial shooting bracket failure");
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it)
  {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
    {
      break;
    }
    std::vector<double> f_mid;
    const Shot s = shoot(mid, ds, count, f_mid);
    if (s == Shot::TooLarge)
    {
      hi = mid;
    }
    else if (s == Shot::TooSmall)
    {
      lo = mid;
    }
    else
    {
      lo = hi = mid;
      break;
    }
  }
  shoot(lo, ds, count, f_lo);
  shoot(hi, ds, count, f_hi);

  // Trust the shot until the bracketing trajectories separate, then back off one unit
  // of length and continue with the decaying tail.
  const std::size_t common = std::min(f_lo.size(), f_hi.size());
  std::size_t split = common - 1;
  for (std::size_t i = 0; i < common; ++i)
  {
    if (std::abs(f_lo[i] - f_hi[i]) > 1e-10)
    {
      split = i;
      break;
    }
  }
  const double split_rho = split * ds;
  double match_rho = std::max(ds, split_rho - 1.0);
  if (split + 1 >= static_cast<std::size_t>(count))
  {
    match_rho = (count - 1) * ds;
  }
  const auto match_index = static_cast<std::size_t>(std::lround(match_rho / ds));
  match_rho = match_index * ds;
  const double f_match = 0.5 * (f_lo[match_index] + f_hi[match_index]);
  const double amp = (1.0 - f_match) / std::cyl_bessel_k(0.0, match_rho);

  RadialProfile prof;
  prof.slope_at_origin = std::exp(0.5 * (lo + hi));
  prof.matching_radius = match_rho;
  prof.rho.resize(steps + 1);
  prof.f.resize(steps + 1);
  for (int i = 0; i <= steps; ++i)
  {
    const std::size_t j = static_cast<std::size_t>(i) * sub;
    const double r = i * out_step;
    prof.rho[i] = r;
    if (j <= match_index)
    {
      prof.f[i] = 0.5 * (f_lo[j] + f_hi[j]);
    }
    else
    {
      prof.f[i] = 1.0 - amp * std::cyl_bessel_k(0.0, r);
    }
  }
  prof.f[0] = 0.0;
  return prof;
}

//
// Persistence
//

void save_solution(const VortexSolution &sol, const std::filesystem::path &dir)
{
  std::filesystem::create_directories(dir);
  write_field(sol.h_reg, dir / "h_reg.ahf");
  write_field(sol.r0, dir / "r0.ahf");
  write_field(sol.u0, dir / "u0.ahf");
  write_field(sol.A0, dir / "A0.ahf");
  nlohmann::json zeros = nlohmann::json::array();
  for (const auto &z : sol.zeros)
  {
    zeros.push_back({z.x, z.y});
  }
  nlohmann::json manifest = {
      {"zeros", zeros},
      {"n", sol.grid.n()},
      {"L", sol.grid.half_width()},
      {"tol", sol.tol},
      {"energy", sol.energy},
      {"residual_sup", sol.residual_sup},
      {"iterations", sol.iterations},
  };
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << "\n";
  if (!out)
  {
    throw FieldIoError(FieldIoError::Kind::Io, "cannot write manifest in " + dir.string());
  }
}

namespace
{

nlohmann::json read_manifest(const std::filesystem::path &dir)
{
  std::ifstream in(dir / "manifest.json");
  if (!in)
  {
    throw FieldIoError(FieldIoError::Kind::Io, "missing manifest.json in " + dir.string());
  }
  try
  {
    return nlohmann::json::parse(in);
  }
  catch (const nlohmann::json::exception &e)
  {
    throw FieldIoError(FieldIoError::Kind::BadHeader,
                       "malformed manifest in " + dir.string() + ": " + e.what());
  }
}

ZeroSet manifest_zeros(const nlohmann::json &m)
{
  ZeroSet zeros;
  for (const auto &z : m.at("zeros"))
  {
    zeros.push_back({z.at(0).get<double>(), z.at(1).get<double>()});
  }
  return zeros;
}

}  // namespace

VortexSolution load_solution(const std::filesystem::path &dir)
{
  const auto m = read_manifest(dir);
  ScalarField h = read_scalar_field(dir / "h_reg.ahf");
  try
  {
    const Grid expected = build_grid(m.at("n").get<int>(), m.at("L").get<double>());
    require_same_grid(expected, h.grid, "manifest vs h_reg.ahf");
    return solution_from_regular_part(manifest_zeros(m), std::move(h), m.at("tol").get<double>(),
                                      m.at("iterations").get<int>());
  }
  catch (const nlohmann::json::exception &e)
  {
    throw FieldIoError(FieldIoError::Kind::BadHeader,
                       "manifest in " + dir.string() + " lacks fields: " + e.what());
  }
}

SolutionCheck verify_solution_dir(const std::filesystem::path &dir)
{
  SolutionCheck check;
  try
  {
    const auto m = read_manifest(dir);
    const VortexSolution sol = load_solution(dir);
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    if (rel(m.at("energy").get<double>(), sol.energy) > 1e-9)
    {
      check.problems.push_back("manifest energy does not match the stored regular part");
    }
    if (std::abs(m.at("residual_sup").get<double>() - sol.residual_sup) > 1e-9 + 1e-6 * sol.residual_sup)
    {
      check.problems.push_back("manifest residual does not match the stored regular part");
    }
    if (sol.residual_sup > std::max(10.0 * sol.tol, 1e-8))
    {
      check.problems.push_back("stored regular part does not solve the Taubes equation");
    }
    const auto compare = [&](const std::vector<double> &a, const std::vector<double> &b, const char *name) {
      double diff = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k)
      {
        diff = std::max(diff, std::abs(a[k] - b[k]));
      }
      if (diff > 1e-12)
      {
        check.problems.push_back(std::string(name) + " differs from the field rebuilt from h_reg");
      }
    };
    const auto r0 = read_scalar_field(dir / "r0.ahf");
    const auto u0 = read_complex_field(dir / "u0.ahf");
    const auto A0 = read_one_form(dir / "A0.ahf");
    compare(r0.values, sol.r0.values, "r0.ahf");
    compare(u0.re, sol.u0.re, "u0.ahf (re)");
    compare(u0.im, sol.u0.im, "u0.ahf (im)");
    compare(A0.a1, sol.A0.a1, "A0.ahf (a1)");
    compare(A0.a2, sol.A0.a2, "A0.ahf (a2)");
  }
  catch (const std::exception &e)
  {
    check.problems.push_back(e.what());
  }
  check.ok = check.problems.empty();
  return check;
}

}  // namespace vortexlab
