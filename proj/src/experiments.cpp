// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include "vortexlab/error.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/weighted_calc.hpp"

namespace vortexlab
{

std::size_t Table::column(const std::string &name) const
{
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end())
  {
    throw InputError("missing column: " + name);
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::string config_hash(const nlohmann::json &config)
{
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : config.dump())
  {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_csv(const std::filesystem::path &path, const Table &table, const nlohmann::json &config)
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw InputError("cannot write " + path.string());
  }
  out << "# config_hash: " << config_hash(config) << "\n";
  out << "# config: " << config.dump() << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
  {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  char buf[32];
  for (const auto &row : table.rows)
  {
    for (std::size_t c = 0; c < row.size(); ++c)
    {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out)
  {
    throw InputError("write failed: " + path.string());
  }
}

Table read_csv(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw InputError("cannot read " + path.string());
  }
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (header)
    {
      while (std::getline(ss, cell, ','))
      {
        t.columns.push_back(cell);
      }
      header = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ','))
    {
      row.push_back(std::strtod(cell.c_str(), nullptr));
    }
    if (row.size() != t.columns.size())
    {
      throw InputError("ragged row in " + path.string());
    }
    t.rows.push_back(std::move(row));
  }
  if (header)
  {
    throw InputError("no header in " + path.string());
  }
  return t;
}

std::filesystem::path summary_path(const std::filesystem::path &csv)
{
  return std::filesystem::path(csv.string() + ".summary.json");
}

int worker_count()
{
  if (const char *env = std::getenv("VORTEXLAB_THREADS"))
  {
    const int v = std::atoi(env);
    if (v > 0)
    {
      return v;
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)> &body)
{
  const int workers = std::min(worker_count(), count);
  if (workers <= 1)
  {
    for (int i = 0; i < count; ++i)
    {
      body(i);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w)
  {
    pool.emplace_back([&, w] {
      try
      {
        for (int i = w; i < count; i += workers)
        {
          body(i);
        }
      }
      catch (...)
      {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
  {
    t.join();
  }
  for (auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

Perturbation reference_bump(std::shared_ptr<const VortexSolution> base)
{
  if (base->zeros.empty())
  {
    throw InputError("reference bump needs at least one zero");
  }
  const Point z = base->zeros.front();
  return make_bump_perturbation(base, {z.x + 0.5, z.y + 0.25}, 2.0, 1.0, {0.6, -0.4});
}

double SweepRow::stability_ratio() const
{
  const double dist = dist_u_sq + dist_F_sq;
  return dist > 0.0 ? discrepancy / dist : 0.0;
}

double SweepRow::jacobian_ratio() const
{
  return discrepancy > 0.0 ? jacobian_l1_diff / std::sqrt(discrepancy) : 0.0;
}

double SweepRow::eps_ratio(std::size_t i, double eps) const
{
  return discrepancy > 0.0 ? eps * eps * sobolev.at(i) / discrepancy : 0.0;
}

std::vector<SweepRow> stability_sweep(const Perturbation &p, const std::vector<double> &t_list,
                                      const std::vector<double> &eps_list)
{
  if (!p.base)
  {
    throw InputError("sweep needs a solved base");
  }
  const VortexSolution &base = *p.base;
  std::vector<SweepRow> rows(t_list.size());
  parallel_for(static_cast<int>(t_list.size()), [&](int i) {
    const Perturbation q = scaled(p, t_list[i]);
    const PairState s = apply_perturbation(q);
    SweepRow r;
    r.t = t_list[i];
    r.discrepancy = discrepancy_perturbative(base, q.h_prime, q.B).total;
    const L2Distance dist = l2_distance(s, base);
    r.dist_u_sq = dist.dist_u_sq;
    r.dist_F_sq = dist.dist_F_sq;
    r.jacobian_l1_diff = jacobian_l1_diff(s, base);
    for (double eps : eps_list)
    {
      r.sobolev.push_back(weighted_sobolev_lhs(base, *s.pert, eps));
    }
    rows[i] = std::move(r);
  });
  return rows;
}

namespace
{

std::string eps_label(double eps)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

}  // namespace

Table sweep_table(const std::vector<SweepRow> &rows, const std::vector<double> &eps_list)
{
  Table t;
  t.columns = {"t", "discrepancy", "dist_u_sq", "dist_F_sq", "jacobian_l1_diff"};
  for (double e : eps_list)
  {
    t.columns.push_back("sobolev_lhs_eps_" + eps_label(e));
  }
  t.columns.push_back("ratio_discrepancy_dist");
  t.columns.push_back("ratio_jacobian_sqrt");
  for (double e : eps_list)
  {
    t.columns.push_back("ratio_eps_" + eps_label(e));
  }
  for (const auto &r : rows)
  {
    std::vector<double> row{r.t, r.discrepancy, r.dist_u_sq, r.dist_F_sq, r.jacobian_l1_diff};
    row.insert(row.end(), r.sobolev.begin(), r.sobolev.end());
    row.push_back(r.stability_ratio());
    row.push_back(r.jacobian_ratio());
    for (std::size_t i = 0; i < eps_list.size(); ++i)
    {
      row.push_back(r.eps_ratio(i, eps_list[i]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace
{

bool ball_clear(const BallCover &cover, Point c, double radius)
{
  return std::all_of(cover.balls.begin(), cover.balls.end(), [&](const CoverBall &b) {
    return std::hypot(c.x - b.center.x, c.y - b.center.y) >= radius + 2.0 * b.radius;
  });
}

}  // namespace

Point sharpness_center(const VortexSolution &base, double max_radius)
{
  const Grid &g = base.grid;
  const BallCover cover = cover_vortex_set(base);
  const double inner = g.half_width() - kInteriorMargin * g.spacing();
  Point best;
  double best_dist = -1.0;
  for (int iy = 0; iy < g.n(); iy += 4)
  {
    for (int ix = 0; ix < g.n(); ix += 4)
    {
      const Point c{g.coord(ix), g.coord(iy)};
      if (std::abs(c.x) + max_radius > inner || std::abs(c.y) + max_radius > inner ||
          !ball_clear(cover, c, max_radius))
      {
        continue;
      }
      double dist = std::numeric_limits<double>::infinity();
      for (const Point &z : base.zeros)
      {
        dist = std::min(dist, std::hypot(c.x - z.x, c.y - z.y));
      }
      if (dist > best_dist)
      {
        best_dist = dist;
        best = c;
      }
    }
  }
  if (best_dist < 0.0)
  {
    throw InputError("no room for a ball of that radius away from the vortex set");
  }
  return best;
}

std::vector<SharpnessRow> sharpness_sweep(std::shared_ptr<const VortexSolution> base, Point center,
                                          const std::vector<double> &radii, double amplitude)
{
  const BallCover cover = cover_vortex_set(*base);
  for (double R : radii)
  {
    if (!ball_clear(cover, center, R))
    {
      throw InputError("ball intersects the covering region of the vortex set");
    }
  }
  std::vector<SharpnessRow> rows(radii.size());
  parallel_for(static_cast<int>(radii.size()), [&](int i) {
    const Perturbation p = make_bump_perturbation(base, center, radii[i], amplitude);
    const PairState s = apply_perturbation(p);
    SharpnessRow r;
    r.radius = radii[i];
    r.amplitude = amplitude;
    r.discrepancy = discrepancy_perturbative(*base, p.h_prime, p.B).total;
    r.closed_form = sharpness_closed_form(*base, p.h_prime);
    r.dist_u_sq = l2_distance(s, *base).dist_u_sq;
    r.ratio = r.discrepancy > 0.0 ? r.dist_u_sq / r.discrepancy : 0.0;
    rows[i] = r;
  });
  return rows;
}

Table sharpness_table(const std::vector<SharpnessRow> &rows)
{
  Table t;
  t.columns = {"radius", "amplitude", "discrepancy", "closed_form", "dist_u_sq", "ratio_dist_discrepancy"};
  for (const auto &r : rows)
  {
    t.rows.push_back({r.radius, r.amplitude, r.discrepancy, r.closed_form, r.dist_u_sq, r.ratio});
  }
  return t;
}

std::vector<HodgeRow> hodge_suite(const Grid &grid, std::uint64_t seed, int count,
                                  const std::vector<double> &eps_list, double tol)
{
  const double c0 = grid.coord(grid.n() / 2) + 0.5 * grid.spacing();
  const VortexWeight w = VortexWeight::unit({{c0, c0}});
  std::vector<std::vector<HodgeRow>> per_seed(count);
  parallel_for(count, [&](int i) {
    const std::uint64_t s = seed + 2 * static_cast<std::uint64_t>(i);
    const OneForm B = random_smooth_form(grid, s, 1.0, 0.8);
    const HodgeParts parts = hodge_decompose(B, w, tol);
    for (double eps : eps_list)
    {
      const HodgeGap gap = hodge_gap_check(parts, w, eps);
      per_seed[i].push_back({static_cast<double>(s), eps, parts.weighted_residual,
                             parts.standard_residual, gap.lhs, gap.rhs, gap.constant});
    }
  });
  std::vector<HodgeRow> rows;
  for (auto &v : per_seed)
  {
    rows.insert(rows.end(), v.begin(), v.end());
  }
  return rows;
}

Table hodge_table(const std::vector<HodgeRow> &rows)
{
  Table t;
  t.columns = {"seed", "eps", "weighted_residual", "standard_residual", "gap_lhs", "gap_rhs",
               "gap_constant", "ratio_lhs_rhs"};
  for (const auto &r : rows)
  {
    t.rows.push_back({r.seed, r.eps, r.weighted_residual, r.standard_residual, r.gap_lhs, r.gap_rhs,
                      r.gap_constant, r.gap_rhs > 0.0 ? r.gap_lhs / r.gap_rhs : 0.0});
  }
  return t;
}

namespace
{

double unit_uniform(std::mt19937_64 &rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<HardyRow> hardy_suite(const Grid &grid, std::uint64_t seed, int count)
{
  const int n = grid.n();
  const double h = grid.spacing();
  // Centres within the middle half of the box.
  const int lo = n / 4, span = n / 2;
  std::vector<HardyRow> rows(count);
  parallel_for(count, [&](int i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    const int centers = 1 + static_cast<int>(rng() % 3);
    std::vector<Point> pts;
    std::vector<double> exps;
    static constexpr double kExponents[3] = {0.5, 1.0, 2.0};
    for (int k = 0; k < centers; ++k)
    {
      const int ix = lo + static_cast<int>(rng() % span), iy = lo + static_cast<int>(rng() % span);
      pts.push_back({grid.coord(ix) + 0.5 * h, grid.coord(iy) + 0.5 * h});
      exps.push_back(kExponents[rng() % 3]);
    }
    const double corr = std::max(4.0 * h, 0.3 + 1.2 * unit_uniform(rng));
    const ScalarField f = random_smooth_field(grid, rng(), 1.0, corr);
    const HardyGap gap = hardy_gap(VortexWeight(pts, exps), f);
    rows[i] = {static_cast<double>(i), static_cast<double>(centers), gap.lhs, gap.rhs};
  });
  return rows;
}

Table hardy_table(const std::vector<HardyRow> &rows)
{
  Table t;
  t.columns = {"case", "centers", "lhs", "rhs", "ratio_lhs_rhs"};
  for (const auto &r : rows)
  {
    t.rows.push_back({r.index, r.centers, r.lhs, r.rhs, r.rhs > 0.0 ? r.lhs / r.rhs : 0.0});
  }
  return t;
}

ComplexPoly seeded_polynomial(std::uint64_t seed, int degree)
{
  std::mt19937_64 rng(seed);
  std::vector<Complex> roots;
  for (int k = 0; k < degree; ++k)
  {
    const double r = 0.45 * std::sqrt(unit_uniform(rng));
    const double theta = 2.0 * std::numbers::pi * unit_uniform(rng);
    roots.push_back(std::polar(r, theta));
  }
  return ComplexPoly::from_roots(roots);
}

std::vector<PolyRow> poly_suite(int max_degree, int seeds, double cn)
{
  std::vector<PolyRow> rows(static_cast<std::size_t>(max_degree) * seeds);
  parallel_for(static_cast<int>(rows.size()), [&](int i) {
    const int degree = 1 + i / seeds;
    const int s = 1 + i % seeds;
    const ComplexPoly P = seeded_polynomial(1000 * static_cast<std::uint64_t>(degree) + s, degree);
    const SampledPerturbation R = seeded_cosine_perturbation(s, degree, cn);
    const SampledPerturbation R_half = seeded_cosine_perturbation(s, degree, 0.5 * cn);
    const ComparableResult full = comparable_polynomial(P, R, cn);
    const ComparableResult half = comparable_polynomial(P, R_half, cn);
    PolyRow r;
    r.degree = degree;
    r.seed = s;
    r.cn_norm = R.cn_norm;
    r.lambda = full.lambda_measured;
    r.lambda_half = half.lambda_measured;
    for (const Complex &b : full.Q.roots())
    {
      r.max_root_modulus = std::max(r.max_root_modulus, std::abs(b));
    }
    r.max_root_residual = full.max_root_residual;
    rows[i] = r;
  });
  return rows;
}

Table poly_table(const std::vector<PolyRow> &rows)
{
  Table t;
  t.columns = {"degree", "seed", "cn_norm", "lambda_measured", "lambda_half_norm", "max_root_modulus",
               "max_root_residual"};
  for (const auto &r : rows)
  {
    t.rows.push_back({r.degree, r.seed, r.cn_norm, r.lambda, r.lambda_half, r.max_root_modulus,
                      r.max_root_residual});
  }
  return t;
}

}  // namespace vortexlab
