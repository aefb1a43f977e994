// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include "doctest.h"
#include "vortexlab/error.hpp"
#include "vortexlab/experiments.hpp"
#include "vortexlab/polyperturb.hpp"

using namespace vortexlab;

namespace
{

SampledPerturbation constant(Complex c, int order) { return make_perturbation([c](Complex) { return c; }, order); }

}  // namespace

TEST_CASE("polynomial construction and evaluation")
{
  auto p = ComplexPoly::from_roots({{0.3, 0.0}, {-0.3, 0.0}});
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(0.3)) < 1e-15);
  CHECK(std::abs(p.coefficients()[0] - Complex(-0.09)) < 1e-15);
  CHECK(std::abs(p.derivative(1.0) - Complex(2.0)) < 1e-15);
  CHECK_THROWS_AS(ComplexPoly::from_coefficients({1.0, 2.0}), InputError);
  CHECK(ComplexPoly::from_coefficients({0.5, 1.0}).degree() == 1);
}

TEST_CASE("C^N norms of simple functions")
{
  CHECK(cn_norm([](Complex) { return Complex(0.25); }, 2) == doctest::Approx(0.25).epsilon(1e-9));
  // z: value up to 1, first partials 1, second partials 0.
  CHECK(cn_norm([](Complex z) { return z; }, 2) == doctest::Approx(1.0).epsilon(1e-6));
  // z^2 has second partials of modulus 2.
  CHECK(cn_norm([](Complex z) { return z * z; }, 2) == doctest::Approx(2.0).epsilon(1e-4));
  auto R = seeded_cosine_perturbation(3, 2, 1e-3);
  CHECK(R.cn_norm == doctest::Approx(1e-3).epsilon(1e-6));
  CHECK(R.polar_samples.size() == 17 * 64);
}

TEST_CASE("find_zero exact cases")
{
  double eps = 1e-3;
  auto a = find_zero(ComplexPoly::from_roots({0.0}), constant(eps, 1));
  CHECK(std::abs(a - Complex(-eps)) < 1e-15);

  auto b = find_zero(ComplexPoly::from_roots({0.0, 0.0}), constant(-eps * eps, 2));
  CHECK(std::abs(std::abs(b) - eps) < 1e-12);
  CHECK(std::abs(b.imag()) < 1e-12);

  auto P = ComplexPoly::from_roots({{0.3, 0.0}, {-0.3, 0.0}});
  auto R = make_perturbation([](Complex z) { return 1e-3 * z; }, 2);
  auto c = find_zero(P, R);
  double disc = std::sqrt(1e-6 + 0.36);
  double r1 = (-1e-3 + disc) / 2.0, r2 = (-1e-3 - disc) / 2.0;
  CHECK(std::min(std::abs(c - r1), std::abs(c - r2)) < 1e-12);
  CHECK(std::abs(P(c) + R(c)) < 1e-12);

  // Rouche hypothesis fails.
  CHECK_THROWS_AS(find_zero(ComplexPoly::from_roots({0.0}), constant(2.0, 1)), InputError);
}

TEST_CASE("deflation")
{
  auto d0 = deflate_once(ComplexPoly::from_roots({0.0, 0.0}), constant(0.0, 2), 0.0);
  CHECK(d0.P.degree() == 1);
  CHECK(std::abs(d0.P.coefficients()[0]) == 0.0);
  CHECK(d0.R.cn_norm == 0.0);

  double eps = 1e-3;
  auto d1 = deflate_once(ComplexPoly::from_roots({0.0}), constant(eps, 1), -eps);
  CHECK(d1.P.degree() == 0);
  CHECK(d1.R.cn_norm == 0.0);

  auto P = seeded_polynomial(7, 3);
  auto R = seeded_cosine_perturbation(8, 3, 1e-4);
  auto a = find_zero(P, R);
  auto d2 = deflate_once(P, R, a);
  CHECK(d2.P.degree() == 2);
  CHECK(std::isfinite(d2.R.cn_norm));

  CHECK_THROWS_AS(deflate_once(P, R, Complex(1.5)), InputError);
}

TEST_CASE("comparable polynomial exact cases")
{
  auto P = seeded_polynomial(1, 3);
  auto zero = comparable_polynomial(P, constant(0.0, 3));
  CHECK(std::abs(zero.lambda_measured - 1.0) <= 1e-12);
  for (int k = 0; k < 3; ++k)
  {
    CHECK(std::abs(zero.Q.coefficients()[k] - P.coefficients()[k]) < 1e-12);
  }

  double eps = 1e-3;
  auto lin = comparable_polynomial(ComplexPoly::from_roots({0.0}), constant(eps, 1));
  CHECK(std::abs(lin.Q.coefficients()[0] - Complex(eps)) < 1e-15);
  CHECK(std::abs(lin.lambda_measured - 1.0) <= 1e-12);
}

TEST_CASE("comparable polynomial on a seeded degree five case")
{
  auto P = seeded_polynomial(5000, 5);
  auto R = seeded_cosine_perturbation(5001, 5, 1e-3);
  auto res = comparable_polynomial(P, R);
  REQUIRE(res.Q.roots().size() == 5);
  for (const auto &b : res.Q.roots())
  {
    CHECK(std::abs(b) < 2.0 / 3.0);
  }
  CHECK(res.max_root_residual < 1e-6);
  CHECK(std::isfinite(res.lambda_measured));
  CHECK(res.lambda_measured >= 1.0);
  CHECK(res.lambda_measured < 1.2);

  auto j = to_json(P, res, R.cn_norm);
  CHECK(j["roots_P"].size() == 5);
  CHECK(j["roots_Q"].size() == 5);
  CHECK(j.contains("lambda_measured"));

  // Roots of P outside B_{1/2} are rejected.
  CHECK_THROWS_AS(comparable_polynomial(ComplexPoly::from_roots({0.6}), constant(0.0, 1)), InputError);
  // A perturbation above the admissible size is rejected.
  CHECK_THROWS_AS(comparable_polynomial(P, seeded_cosine_perturbation(5001, 5, 1e-1)), InputError);
}
