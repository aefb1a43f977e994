// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include "doctest.h"
#include "vortexlab/criteria.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/experiments.hpp"

using namespace vortexlab;

namespace
{

std::filesystem::path temp_file(const char *name)
{
  auto dir = std::filesystem::temp_directory_path() / "vortexlab_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const VortexSolution> base()
{
  static auto sol = std::make_shared<const VortexSolution>(
      solve_taubes({{0.0, 0.0}}, build_grid(129, 12.0)));
  return sol;
}

}  // namespace

TEST_CASE("config hash is stable and sensitive")
{
  nlohmann::json a = {{"grid", 129}, {"box", 12.0}};
  CHECK(config_hash(a) == config_hash(nlohmann::json{{"box", 12.0}, {"grid", 129}}));
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) != config_hash(nlohmann::json{{"grid", 257}, {"box", 12.0}}));
}

TEST_CASE("CSV round trip keeps every digit")
{
  Table t{{"t", "value"}, {{0.1, 1.0 / 3.0}, {1e-300, -2.5}}};
  auto path = temp_file("round.csv");
  nlohmann::json cfg = {{"seed", 1}};
  write_csv(path, t, cfg);
  auto text = slurp(path);
  CHECK(text.rfind("# config_hash: " + config_hash(cfg), 0) == 0);
  auto back = read_csv(path);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(back.column("value") == 1);
  CHECK_THROWS_AS(back.column("missing"), InputError);
  CHECK(summary_path(path).filename() == "round.csv.summary.json");
}

TEST_CASE("parallel_for visits every index once")
{
  std::vector<std::atomic<int>> hits(37);
  parallel_for(37, [&](int i) { hits[i]++; });
  for (auto &h : hits)
  {
    CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(4, [](int i) {
                    if (i == 2)
                    {
                      throw InputError("boom");
                    }
                  }),
                  InputError);
}

TEST_CASE("stability sweep rows and determinism")
{
  auto p = reference_bump(base());
  std::vector<double> eps = {0.5, 0.25};
  auto rows = stability_sweep(p, {0.1, 0.05, 0.0}, eps);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].discrepancy > rows[1].discrepancy);
  CHECK(rows[1].stability_ratio() > 0.0);
  CHECK(rows[2].dist_u_sq == 0.0);
  CHECK(rows[2].dist_F_sq == 0.0);
  CHECK(rows[2].discrepancy < 1e-4);
  // Quadratic regime: halving t quarters the distances.
  CHECK(rows[0].dist_u_sq / rows[1].dist_u_sq == doctest::Approx(4.0).epsilon(0.05));

  auto table = sweep_table(rows, eps);
  CHECK(table.columns.front() == "t");
  CHECK(table.rows.size() == 3);
  auto ri = table.column("ratio_discrepancy_dist");
  CHECK(table.rows[1][ri] == doctest::Approx(rows[1].stability_ratio()));

  auto a = temp_file("sweep_a.csv"), b = temp_file("sweep_b.csv");
  write_csv(a, sweep_table(stability_sweep(p, {0.1, 0.05}, eps), eps), {{"k", 1}});
  write_csv(b, sweep_table(stability_sweep(p, {0.1, 0.05}, eps), eps), {{"k", 1}});
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("sharpness sweep stays in a band and refuses balls near the vortices")
{
  auto b = base();
  auto center = sharpness_center(*b, 2.0);
  auto rows = sharpness_sweep(b, center, {0.5, 1.0, 2.0}, 1.0);
  REQUIRE(rows.size() == 3);
  for (const auto &r : rows)
  {
    CHECK(r.ratio > 0.0);
    CHECK(r.discrepancy > 0.0);
  }
  CHECK(rows[0].discrepancy < rows[2].discrepancy);
  CHECK(check_sharpness(rows).pass);
  CHECK_THROWS_AS(sharpness_sweep(b, {0.5, 0.0}, {1.0}, 1.0), InputError);
}

TEST_CASE("hardy and hodge suites")
{
  auto g = build_grid(129, 8.0);
  auto hardy = hardy_suite(g, 3, 6);
  CHECK(hardy.size() == 6);
  CHECK(check_hardy(hardy).pass);

  auto hodge = hodge_suite(g, 4, 1, {0.5, 0.25}, 1e-8);
  CHECK(hodge.size() == 2);
  CHECK(check_hodge(hodge, 0.25).pass);
  CHECK_FALSE(check_hodge(hodge, 0.3).pass);  // no rows at that eps
}

TEST_CASE("poly suite and criterion")
{
  auto rows = poly_suite(2, 2, 1e-3);
  CHECK(rows.size() == 4);
  for (const auto &r : rows)
  {
    CHECK(r.lambda >= 1.0);
    // Halving the perturbation roughly halves lambda - 1.
    CHECK((r.lambda_half - 1.0) < 0.75 * (r.lambda - 1.0));
  }
  CHECK(check_poly(rows, {1.0}).pass);
  CHECK_FALSE(check_poly(rows, {1.1}).pass);
  auto t = poly_table(rows);
  CHECK(t.rows.size() == 4);
}

TEST_CASE("criteria thresholds")
{
  CHECK(check_oracle(1e-3).pass);
  CHECK_FALSE(check_oracle(3e-3).pass);
  CHECK(check_identity({{1.0, 1.0005}}).pass);
  CHECK_FALSE(check_identity({{1.0, 1.01}}).pass);
  CHECK_FALSE(check_identity({}).pass);
  CHECK(check_gradient_result({1e-7, 10}).pass);
  CHECK_FALSE(check_gradient_result({1e-4, 10}).pass);
  CHECK(check_bogomolny(6.28, 1, 1e-6, 1.0, 6.28).pass);
  CHECK_FALSE(check_bogomolny(6.0, 1, 1e-6, 1.0, 6.0).pass);

  SweepRow a, b;
  a.discrepancy = 1.0;
  a.dist_u_sq = 0.5;
  b.discrepancy = 0.25;
  b.dist_u_sq = 0.13;
  CHECK(check_quadratic_stability({{a, b}}).pass);
  b.dist_u_sq = 0.05;
  CHECK_FALSE(check_quadratic_stability({{a, b}}).pass);

  auto j = to_json(check_oracle(1e-3));
  CHECK(j["name"] == "oracle_equivalence");
  CHECK(j["pass"] == true);
}
