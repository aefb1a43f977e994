// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

// vortexlab command-line driver. Every experiment command writes a CSV (with a config hash
// header) and a <csv>.summary.json holding the measured criteria; `report` aggregates them.
//
// Exit codes: 0 ok, 1 internal error or failing report, 2 bad input, 3 missing artifacts.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>
#include "CLI11.hpp"
#include "json.hpp"
#include "vortexlab/calculus.hpp"
#include "vortexlab/criteria.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/experiments.hpp"
#include "vortexlab/field_io.hpp"
#include "vortexlab/gauge_energy.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/polyperturb.hpp"
#include "vortexlab/selection.hpp"
#include "vortexlab/taubes.hpp"
#include "vortexlab/weighted_calc.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace vortexlab;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitMissing = 3;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised for absent inputs (base directory, experiment outputs).
class MissingArtifact : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct BaseOptions
{
  std::string zeros = "0,0";
  int grid = 257;
  double box = 12.0;
  double tol = 1e-10;
  std::string base;  // solution directory; overrides the solve flags
};

void add_base_options(CLI::App *cmd, BaseOptions &o)
{
  cmd->add_option("--zeros", o.zeros, "Zeros as \"x,y;x,y\"")->capture_default_str();
  cmd->add_option("--grid", o.grid, "Grid points per side (odd)")->capture_default_str();
  cmd->add_option("--box", o.box, "Half-width L of the box")->capture_default_str();
  cmd->add_option("--tol", o.tol, "Newton tolerance")->capture_default_str();
  cmd->add_option("--base", o.base, "Load a solved base from this directory");
}

json base_config(const BaseOptions &o)
{
  if (!o.base.empty())
  {
    return {{"base", o.base}};
  }
  return {{"zeros", o.zeros}, {"grid", o.grid}, {"box", o.box}, {"tol", o.tol}};
}

std::shared_ptr<const VortexSolution> obtain_base(const BaseOptions &o)
{
  if (!o.base.empty())
  {
    if (!fs::exists(fs::path(o.base) / "manifest.json"))
    {
      throw MissingArtifact("missing base solution: " + o.base);
    }
    return std::make_shared<const VortexSolution>(load_solution(o.base));
  }
  TaubesOptions opts;
  opts.tol = o.tol;
  return std::make_shared<const VortexSolution>(
      solve_taubes(parse_zero_list(o.zeros), build_grid(o.grid, o.box), opts));
}

Point parse_point(const std::string &text)
{
  const auto pts = parse_zero_list(text);
  if (pts.size() != 1)
  {
    throw InputError("expected a single point \"x,y\", got \"" + text + "\"");
  }
  return pts[0];
}

json criteria_json(const std::vector<Criterion> &cs)
{
  json out = json::array();
  for (const auto &c : cs)
  {
    out.push_back(to_json(c));
  }
  return out;
}

void write_json(const fs::path &path, const json &j)
{
  if (path.has_parent_path())
  {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  if (!out)
  {
    throw InputError("cannot write " + path.string());
  }
}

void write_summary(const fs::path &csv, const std::string &command, const json &config,
                   const std::vector<Criterion> &criteria, json extra = json::object())
{
  extra["command"] = command;
  extra["config"] = config;
  extra["config_hash"] = config_hash(config);
  extra["criteria"] = criteria_json(criteria);
  write_json(summary_path(csv), extra);
}

void print_criteria(const std::vector<Criterion> &cs)
{
  for (const auto &c : cs)
  {
    std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

//
// solve
//

struct SolveOptions
{
  BaseOptions base;
  std::string out;
  bool doubling = false;
};

int cmd_solve(const SolveOptions &o)
{
  const auto t0 = std::chrono::steady_clock::now();
  TaubesOptions opts;
  opts.tol = o.base.tol;
  const ZeroSet zeros = parse_zero_list(o.base.zeros);
  const VortexSolution sol = solve_taubes(zeros, build_grid(o.base.grid, o.base.box), opts);
  const double seconds = seconds_since(t0);
  save_solution(sol, o.out);

  const double disc = discrepancy_perturbative(sol, ScalarField(sol.grid), OneForm(sol.grid)).total;
  json extra = {{"energy", sol.energy},
                {"residual_sup", sol.residual_sup},
                {"iterations", sol.iterations},
                {"discrepancy", disc},
                {"seconds", seconds},
                {"jacobian_mass", integrate(base_jacobian(sol))}};

  const BallCover cover = cover_vortex_set(sol);
  write_json(fs::path(o.out) / "cover.json", to_json(cover));
  std::vector<Criterion> criteria = {
      check_cover_cases({{o.base.zeros, check_cover(cover, sol), cover}})};
  if (o.doubling)
  {
    const VortexSolution wide =
        solve_taubes(zeros, build_grid(2 * o.base.grid - 1, 2.0 * o.base.box), opts);
    extra["energy_doubled_box"] = wide.energy;
    criteria.push_back(check_bogomolny(sol.energy, sol.degree(), disc, seconds, wide.energy));
  }
  if (zeros.size() == 1 && zeros[0] == Point{0.0, 0.0})
  {
    const RadialProfile prof = radial_profile_oracle(std::max(8.0, 2.0 * o.base.box), 24000);
    const int mid = sol.grid.n() / 2;
    double sup = 0.0;
    for (int ix = 0; ix < sol.grid.n(); ++ix)
    {
      const double rho = std::abs(sol.grid.coord(ix));
      if (rho <= 8.0)
      {
        sup = std::max(sup, std::abs(prof.value_at(rho) - sol.r0(ix, mid)));
      }
    }
    criteria.push_back(check_oracle(sup));
  }
  json config = base_config(o.base);
  config["doubling_check"] = o.doubling;
  extra["command"] = "solve";
  extra["config"] = config;
  extra["config_hash"] = config_hash(config);
  extra["criteria"] = criteria_json(criteria);
  write_json(fs::path(o.out) / "solve.summary.json", extra);
  std::printf("energy %.10f  residual %.3e  iterations %d  discrepancy %.3e  (%.2fs)\n", sol.energy,
              sol.residual_sup, sol.iterations, disc, seconds);
  print_criteria(criteria);
  return kExitOk;
}

//
// perturb
//

struct PerturbOptions
{
  BaseOptions base;
  std::string kind = "bump";
  std::string center = "0.5,0.25";
  double radius = 2.0;
  double amplitude = 0.5;
  double corr_len = 1.5;
  std::uint64_t seed = 1;
  std::string b_direction = "0,0";
  int count = 1;
  std::string out;
};

Perturbation build_perturbation(const PerturbOptions &o, std::shared_ptr<const VortexSolution> b,
                                std::uint64_t seed)
{
  if (o.kind == "bump")
  {
    return make_bump_perturbation(b, parse_point(o.center), o.radius, o.amplitude,
                                  parse_point(o.b_direction));
  }
  if (o.kind == "random")
  {
    return make_random_perturbation(b, seed, o.amplitude, o.corr_len);
  }
  if (o.kind == "zero")
  {
    return make_bump_perturbation(b, b->zeros[0], 1.0, 0.0);
  }
  throw InputError("unknown perturbation kind: " + o.kind);
}

int cmd_perturb(const PerturbOptions &o)
{
  if (o.count < 1)
  {
    throw InputError("--count must be positive");
  }
  auto b = obtain_base(o.base);
  const double two_pi_n = kTwoPi * b->degree();

  // Random perturbations use seeds seed, seed + 3, ... so that their streams do not overlap.
  const int count = o.kind == "random" ? o.count : 1;
  std::vector<std::pair<double, double>> pairs(count);
  std::vector<json> records(count);
  parallel_for(count, [&](int i) {
    const Perturbation p = build_perturbation(o, b, o.seed + 3 * static_cast<std::uint64_t>(i));
    const PairState s = apply_perturbation(p);
    const DiscrepancyReport rep = discrepancy_perturbative(*b, p.h_prime, p.B);
    const double excess = energy_direct(s) - two_pi_n;
    const L2Distance dist = l2_distance(s, *b);
    pairs[i] = {excess, rep.total};
    records[i] = {{"descriptor", to_json(p.descriptor)},
                  {"discrepancy", to_json(rep)},
                  {"energy_minus_2piN", excess},
                  {"dist_u_sq", dist.dist_u_sq},
                  {"dist_F_sq", dist.dist_F_sq},
                  {"jacobian_l1_diff", jacobian_l1_diff(s, *b)}};
  });

  const fs::path dir(o.out);
  fs::create_directories(dir);
  const Perturbation first = build_perturbation(o, b, o.seed);
  const PairState s = apply_perturbation(first);
  write_field(first.h_prime, dir / "h_prime.ahf");
  write_field(first.B, dir / "B.ahf");
  write_field(s.u, dir / "u.ahf");
  write_field(s.A, dir / "A.ahf");
  write_json(dir / "descriptor.json", to_json(first.descriptor));

  json config = base_config(o.base);
  config.update({{"kind", o.kind},
                 {"center", o.center},
                 {"radius", o.radius},
                 {"amplitude", o.amplitude},
                 {"corr_len", o.corr_len},
                 {"seed", o.seed},
                 {"b_direction", o.b_direction},
                 {"count", count}});
  std::vector<Criterion> criteria;
  if (o.kind != "zero")
  {
    criteria.push_back(check_identity(pairs));
  }
  json extra = {{"cases", records}};
  extra["command"] = "perturb";
  extra["config"] = config;
  extra["config_hash"] = config_hash(config);
  extra["criteria"] = criteria_json(criteria);
  write_json(dir / "perturb.summary.json", extra);
  std::printf("discrepancy %.6e  energy - 2 pi N %.6e\n", pairs[0].second, pairs[0].first);
  print_criteria(criteria);
  return kExitOk;
}

//
// sweep-stability
//

struct SweepOptions
{
  BaseOptions base;
  std::vector<double> t_list = {0.2, 0.1, 0.05, 0.025};
  std::vector<double> eps_list = {0.5, 0.25, 0.125};
  std::string out;
};

int cmd_sweep(const SweepOptions &o)
{
  if (o.t_list.empty() || o.eps_list.empty())
  {
    throw InputError("--t-list and --eps-list must not be empty");
  }
  for (double e : o.eps_list)
  {
    if (!(e > 0.0))
    {
      throw InputError("eps values must be positive");
    }
  }
  auto b = obtain_base(o.base);
  const Perturbation p = reference_bump(b);
  const auto rows = stability_sweep(p, o.t_list, o.eps_list);

  json config = base_config(o.base);
  config.update({{"t_list", o.t_list}, {"eps_list", o.eps_list}, {"perturbation", to_json(p.descriptor)}});
  write_csv(o.out, sweep_table(rows, o.eps_list), config);

  // Criteria use the t > 0 rows ordered by decreasing t.
  std::vector<SweepRow> active;
  for (const auto &r : rows)
  {
    if (r.t > 0.0)
    {
      active.push_back(r);
    }
  }
  std::sort(active.begin(), active.end(), [](const SweepRow &a, const SweepRow &c) { return a.t > c.t; });
  std::vector<Criterion> criteria;
  json extra = json::object();
  if (!active.empty())
  {
    criteria.push_back(check_quadratic_stability({active}));
    // Second smallest t: small, but still well above round-off in the discrepancy.
    const SweepRow &fixed = active[active.size() >= 2 ? active.size() - 2 : 0];
    extra["sobolev_t"] = fixed.t;
    criteria.push_back(check_weighted_sobolev(fixed, o.eps_list));
    criteria.push_back(check_jacobian({active}, {integrate(base_jacobian(*b))}, {b->degree()}));
  }
  write_summary(o.out, "sweep-stability", config, criteria, extra);
  print_criteria(criteria);
  return kExitOk;
}

//
// sharpness
//

struct SharpnessOptions
{
  BaseOptions base;
  std::vector<double> radius_list = {0.5, 1.0, 2.0};
  double amplitude = 1.0;
  std::string center;
  std::string out;
};

int cmd_sharpness(const SharpnessOptions &o)
{
  if (o.radius_list.empty())
  {
    throw InputError("--radius-list must not be empty");
  }
  auto b = obtain_base(o.base);
  std::vector<double> radii = o.radius_list;
  std::sort(radii.begin(), radii.end());
  const Point center = o.center.empty() ? sharpness_center(*b, radii.back()) : parse_point(o.center);
  const auto rows = sharpness_sweep(b, center, radii, o.amplitude);

  json config = base_config(o.base);
  config.update({{"radius_list", radii}, {"amplitude", o.amplitude}, {"center", {center.x, center.y}}});
  write_csv(o.out, sharpness_table(rows), config);
  std::vector<Criterion> criteria = {check_sharpness(rows)};
  write_summary(o.out, "sharpness", config, criteria);
  print_criteria(criteria);
  return kExitOk;
}

//
// hodge-suite (weighted Hodge decompositions and the Hardy inequality)
//

struct HodgeOptions
{
  int grid = 257;
  double box = 8.0;
  double tol = 1e-8;
  std::uint64_t seed = 7;
  int count = 3;
  int hardy_count = 100;
  double gap_eps = 0.25;
  std::vector<double> eps_list = {0.5, 0.25, 0.125};
  std::string out;
};

int cmd_hodge(const HodgeOptions &o)
{
  if (o.count < 1 || o.hardy_count < 1)
  {
    throw InputError("--count and --hardy-count must be positive");
  }
  const Grid g = build_grid(o.grid, o.box);
  const auto hodge = hodge_suite(g, o.seed, o.count, o.eps_list, o.tol);
  const auto hardy = hardy_suite(g, o.seed, o.hardy_count);

  const json config = {{"grid", o.grid},       {"box", o.box},         {"tol", o.tol},
                       {"seed", o.seed},       {"count", o.count},     {"hardy_count", o.hardy_count},
                       {"eps_list", o.eps_list}, {"gap_eps", o.gap_eps}};
  fs::path hardy_csv = fs::path(o.out);
  hardy_csv.replace_extension(".hardy.csv");
  write_csv(o.out, hodge_table(hodge), config);
  write_csv(hardy_csv, hardy_table(hardy), config);
  std::vector<Criterion> criteria = {check_hodge(hodge, o.gap_eps), check_hardy(hardy)};
  write_summary(o.out, "hodge-suite", config, criteria, {{"hardy_csv", hardy_csv.string()}});
  print_criteria(criteria);
  return kExitOk;
}

//
// selection-run
//

struct SelectionCliOptions
{
  BaseOptions base;
  double amplitude = 0.3;
  double corr_len = 0.0;  // 0 = four grid spacings
  std::uint64_t seed = 31;
  int max_iters = 1000;
  int rounds = 0;  // 0 = N
  std::string out;
};

int cmd_selection(const SelectionCliOptions &o)
{
  auto b = obtain_base(o.base);
  const double corr = o.corr_len > 0.0 ? o.corr_len : 4.0 * b->grid.spacing();
  const PairState anchor = apply_perturbation(make_random_perturbation(b, o.seed, o.amplitude, corr));
  SelectionOptions opts;
  opts.max_iters = o.max_iters;
  const int rounds = o.rounds > 0 ? o.rounds : b->degree();
  const SelectionReport rep = selection_iterate(b, anchor, rounds, opts);

  Table log;
  log.columns = {"round", "iter", "G", "E", "grad_norm", "step_size"};
  for (const auto &r : rep.log)
  {
    log.rows.push_back({double(r.round), double(r.iter), r.G, r.E, r.grad_norm, r.step_size});
  }
  json config = base_config(o.base);
  config.update({{"amplitude", o.amplitude},
                 {"corr_len", corr},
                 {"seed", o.seed},
                 {"max_iters", o.max_iters},
                 {"rounds", rounds}});
  write_csv(o.out, log, config);

  // Gradient check at the selected pair with the original anchor as penalty centre.
  PenalizedProblem prob = make_problem(b, anchor);
  prob.current = rep.result;
  std::vector<Criterion> criteria = {check_selection(rep, b->degree()),
                                     check_gradient_result(check_gradient(prob, o.seed + 60, 10, 1e-6))};
  json extra = to_json(rep);
  write_summary(o.out, "selection-run", config, criteria, extra);
  print_criteria(criteria);
  return kExitOk;
}

//
// poly-suite
//

struct PolyOptions
{
  int max_degree = 5;
  int seeds = 5;
  double cn = 1e-3;
  std::string out;
};

int cmd_poly(const PolyOptions &o)
{
  if (o.max_degree < 1 || o.seeds < 1 || !(o.cn > 0.0))
  {
    throw InputError("--max-degree, --seeds and --cn must be positive");
  }
  const auto rows = poly_suite(o.max_degree, o.seeds, o.cn);
  const json config = {{"max_degree", o.max_degree}, {"seeds", o.seeds}, {"cn", o.cn}};
  write_csv(o.out, poly_table(rows), config);

  // Exact cases: R = 0, and constant R against a linear P.
  const auto zero_r = make_perturbation([](Complex) { return Complex(0.0); }, 3);
  const double eps = o.cn;
  const auto const_r = make_perturbation([eps](Complex) { return Complex(eps); }, 1);
  const ComplexPoly p3 = seeded_polynomial(3001, 3);
  const ComplexPoly p1 = ComplexPoly::from_roots({0.0});
  const ComparableResult r0 = comparable_polynomial(p3, zero_r, o.cn);
  const ComparableResult r1 = comparable_polynomial(p1, const_r, o.cn);
  json reports = json::array({to_json(p3, r0, zero_r.cn_norm), to_json(p1, r1, const_r.cn_norm)});
  // One full report per degree for the first seed.
  for (int deg = 1; deg <= o.max_degree; ++deg)
  {
    const ComplexPoly P = seeded_polynomial(1000 * static_cast<std::uint64_t>(deg) + 1, deg);
    const SampledPerturbation R = seeded_cosine_perturbation(1, deg, o.cn);
    reports.push_back(to_json(P, comparable_polynomial(P, R, o.cn), R.cn_norm));
  }
  std::vector<Criterion> criteria = {check_poly(rows, {r0.lambda_measured, r1.lambda_measured})};
  write_summary(o.out, "poly-suite", config, criteria, {{"reports", reports}});
  print_criteria(criteria);
  return kExitOk;
}

//
// report
//

struct ReportOptions
{
  std::string in = ".";
  std::string out;
};

const std::vector<std::string> kAllCriteria = {
    "bogomolny_equality", "oracle_equivalence", "discrepancy_identity", "quadratic_stability",
    "sharpness",          "weighted_sobolev",   "jacobian",             "hardy",
    "weighted_hodge",     "ball_cover",         "selection",            "polynomial_lemma",
    "gradient_check"};

int cmd_report(const ReportOptions &o)
{
  const fs::path root(o.in);
  if (!fs::is_directory(root))
  {
    throw MissingArtifact("not a directory: " + o.in);
  }
  std::vector<fs::path> summaries, solutions;
  for (const auto &entry : fs::recursive_directory_iterator(root))
  {
    const std::string name = entry.path().filename().string();
    if (!entry.is_regular_file())
    {
      continue;
    }
    if (name.size() > 13 && name.ends_with(".summary.json"))
    {
      summaries.push_back(entry.path());
    }
    else if (name == "manifest.json")
    {
      solutions.push_back(entry.path().parent_path());
    }
  }
  std::sort(summaries.begin(), summaries.end());
  std::sort(solutions.begin(), solutions.end());
  if (summaries.empty() && solutions.empty())
  {
    std::fprintf(stderr, "nothing to report\n");
    return kExitMissing;
  }

  // Per criterion: all entries must pass.
  std::map<std::string, json> merged;
  json sources = json::array();
  json unreadable = json::array();
  for (const auto &path : summaries)
  {
    json s;
    try
    {
      std::ifstream in(path);
      s = json::parse(in);
    }
    catch (const json::exception &e)
    {
      unreadable.push_back({{"path", path.string()}, {"error", e.what()}});
      continue;
    }
    sources.push_back(path.string());
    for (const auto &c : s.value("criteria", json::array()))
    {
      const std::string name = c.value("name", "");
      auto &m = merged[name];
      if (m.is_null())
      {
        m = {{"name", name}, {"pass", true}, {"entries", json::array()}};
      }
      m["pass"] = m["pass"].get<bool>() && c.value("pass", false);
      m["entries"].push_back({{"source", path.string()}, {"pass", c.value("pass", false)},
                              {"detail", c.value("detail", "")}});
    }
  }
  json criteria = json::array();
  bool all_pass = unreadable.empty();
  for (auto &[name, m] : merged)
  {
    all_pass = all_pass && m["pass"].get<bool>();
    criteria.push_back(m);
  }
  json missing = json::array();
  for (const auto &name : kAllCriteria)
  {
    if (!merged.count(name))
    {
      missing.push_back(name);
    }
  }
  json consistency = json::array();
  for (const auto &dir : solutions)
  {
    const SolutionCheck check = verify_solution_dir(dir);
    consistency.push_back({{"name", "solution_consistency"},
                           {"path", dir.string()},
                           {"pass", check.ok},
                           {"problems", check.problems}});
    all_pass = all_pass && check.ok;
  }
  all_pass = all_pass && missing.empty();

  const json report = {{"pass", all_pass},
                       {"criteria", criteria},
                       {"solution_consistency", consistency},
                       {"missing", missing},
                       {"unreadable", unreadable},
                       {"sources", sources}};
  const fs::path out = o.out.empty() ? root / "report.json" : fs::path(o.out);
  write_json(out, report);
  for (const auto &c : criteria)
  {
    std::printf("%s %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL", c["name"].get<std::string>().c_str());
  }
  for (const auto &c : consistency)
  {
    std::printf("%s solution_consistency %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                c["path"].get<std::string>().c_str());
  }
  for (const auto &m : missing)
  {
    std::printf("MISSING %s\n", m.get<std::string>().c_str());
  }
  return all_pass ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Vortex minimizer experiments"};
  app.require_subcommand(1);

  SolveOptions solve_o;
  auto *solve = app.add_subcommand("solve", "Solve for the minimizer with prescribed zeros");
  add_base_options(solve, solve_o.base);
  solve->add_option("--out", solve_o.out, "Output solution directory")->required();
  solve->add_flag("--doubling-check", solve_o.doubling, "Also solve on a box twice as wide");

  PerturbOptions pert_o;
  auto *perturb = app.add_subcommand("perturb", "Perturb a solved base and evaluate the discrepancy");
  add_base_options(perturb, pert_o.base);
  perturb->add_option("--kind", pert_o.kind, "bump, random or zero")->capture_default_str();
  perturb->add_option("--center", pert_o.center, "Bump centre \"x,y\"")->capture_default_str();
  perturb->add_option("--radius", pert_o.radius)->capture_default_str();
  perturb->add_option("--amplitude", pert_o.amplitude)->capture_default_str();
  perturb->add_option("--corr-len", pert_o.corr_len)->capture_default_str();
  perturb->add_option("--seed", pert_o.seed)->capture_default_str();
  perturb->add_option("--b-direction", pert_o.b_direction, "B = bump * (bx, by)")->capture_default_str();
  perturb->add_option("--count", pert_o.count, "Number of random seeds")->capture_default_str();
  perturb->add_option("--out", pert_o.out, "Output directory")->required();

  SweepOptions sweep_o;
  auto *sweep = app.add_subcommand("sweep-stability", "Scaled bump sweep");
  add_base_options(sweep, sweep_o.base);
  sweep->add_option("--t-list", sweep_o.t_list)->delimiter(',')->capture_default_str();
  sweep->add_option("--eps-list", sweep_o.eps_list)->delimiter(',')->capture_default_str();
  sweep->add_option("--out", sweep_o.out, "Output CSV")->required();

  SharpnessOptions sharp_o;
  auto *sharp = app.add_subcommand("sharpness", "Mollified balls away from the vortex set");
  add_base_options(sharp, sharp_o.base);
  sharp->add_option("--radius-list", sharp_o.radius_list)->delimiter(',')->capture_default_str();
  sharp->add_option("--amplitude", sharp_o.amplitude)->capture_default_str();
  sharp->add_option("--center", sharp_o.center, "Ball centre \"x,y\" (default: farthest from the zeros)");
  sharp->add_option("--out", sharp_o.out, "Output CSV")->required();

  HodgeOptions hodge_o;
  auto *hodge = app.add_subcommand("hodge-suite", "Weighted Hodge and Hardy suites");
  hodge->add_option("--grid", hodge_o.grid)->capture_default_str();
  hodge->add_option("--box", hodge_o.box)->capture_default_str();
  hodge->add_option("--tol", hodge_o.tol)->capture_default_str();
  hodge->add_option("--seed", hodge_o.seed)->capture_default_str();
  hodge->add_option("--count", hodge_o.count, "Random one-forms")->capture_default_str();
  hodge->add_option("--hardy-count", hodge_o.hardy_count, "Random Hardy cases")->capture_default_str();
  hodge->add_option("--eps-list", hodge_o.eps_list)->delimiter(',')->capture_default_str();
  hodge->add_option("--gap-eps", hodge_o.gap_eps, "eps at which the gap inequality is judged")
      ->capture_default_str();
  hodge->add_option("--out", hodge_o.out, "Output CSV")->required();

  SelectionCliOptions sel_o;
  auto *sel = app.add_subcommand("selection-run", "Penalized selection from a rough anchor");
  add_base_options(sel, sel_o.base);
  sel->add_option("--amplitude", sel_o.amplitude)->capture_default_str();
  sel->add_option("--corr-len", sel_o.corr_len, "Noise correlation length (default 4h)");
  sel->add_option("--seed", sel_o.seed)->capture_default_str();
  sel->add_option("--max-iters", sel_o.max_iters)->capture_default_str();
  sel->add_option("--rounds", sel_o.rounds, "Re-anchoring rounds (default N)");
  sel->add_option("--out", sel_o.out, "Output iteration-log CSV")->required();

  PolyOptions poly_o;
  auto *poly = app.add_subcommand("poly-suite", "Perturbed polynomial suite");
  poly->add_option("--max-degree", poly_o.max_degree)->capture_default_str();
  poly->add_option("--seeds", poly_o.seeds)->capture_default_str();
  poly->add_option("--cn", poly_o.cn, "C^N norm of the perturbations")->capture_default_str();
  poly->add_option("--out", poly_o.out, "Output CSV")->required();

  ReportOptions report_o;
  auto *report = app.add_subcommand("report", "Aggregate experiment summaries");
  report->add_option("--in", report_o.in, "Directory to scan")->capture_default_str();
  report->add_option("--out", report_o.out, "Report JSON (default <in>/report.json)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return kExitInput;
  }

  try
  {
    if (*solve)
    {
      return cmd_solve(solve_o);
    }
    if (*perturb)
    {
      return cmd_perturb(pert_o);
    }
    if (*sweep)
    {
      return cmd_sweep(sweep_o);
    }
    if (*sharp)
    {
      return cmd_sharpness(sharp_o);
    }
    if (*hodge)
    {
      return cmd_hodge(hodge_o);
    }
    if (*sel)
    {
      return cmd_selection(sel_o);
    }
    if (*poly)
    {
      return cmd_poly(poly_o);
    }
    if (*report)
    {
      return cmd_report(report_o);
    }
  }
  catch (const MissingArtifact &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissing;
  }
  catch (const InputError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  catch (const FieldIoError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == FieldIoError::Kind::Io ? kExitMissing : kExitInput;
  }
  catch (const ConvergenceError &e)
  {
    std::cerr << "error: " << e.what() << " (residual " << e.last_residual() << " after "
              << e.iterations() << " iterations)\n";
    return kExitInternal;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
