// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include "doctest.h"
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/field_io.hpp"
#include "vortexlab/grid.hpp"

using namespace vortexlab;

namespace
{

std::filesystem::path temp_file(const char *name)
{
  auto dir = std::filesystem::temp_directory_path() / "vortexlab_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("build_grid spacing and validation")
{
  auto g = build_grid(65, 8.0);
  CHECK(g.spacing() == 0.25);
  CHECK(g.coord(32) == 0.0);
  CHECK(g.coord(0) == -8.0);
  CHECK(g.coord(64) == 8.0);
  CHECK(build_grid(513, 12.0).spacing() == 0.046875);
  CHECK_THROWS_WITH_AS(build_grid(64, 8.0), "n must be odd", InputError);
  CHECK_THROWS_AS(build_grid(63, 8.0), InputError);
  CHECK_THROWS_AS(build_grid(65, 0.0), InputError);
  CHECK_THROWS_AS(build_grid(65, -1.0), InputError);
}

TEST_CASE("d of scalar fields")
{
  auto g = build_grid(129, 4.0);
  auto c = d(sample(g, [](double, double) { return 3.5; }));
  CHECK(sup_norm(c.a1) == 0.0);
  CHECK(sup_norm(c.a2) == 0.0);

  auto lin = d(sample(g, [](double x, double) { return x; }));
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    CHECK(lin.a1[k] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(lin.a2[k]) < 1e-12);
  }

  auto quad = d(sample(g, [](double x, double y) { return x * x + y * y; }));
  double err = 0.0;
  for (int iy = 1; iy < g.n() - 1; ++iy)
  {
    for (int ix = 1; ix < g.n() - 1; ++ix)
    {
      err = std::max(err, std::abs(quad.a1[g.index(ix, iy)] - 2.0 * g.coord(ix)));
      err = std::max(err, std::abs(quad.a2[g.index(ix, iy)] - 2.0 * g.coord(iy)));
    }
  }
  CHECK(err < 1e-12);
}

TEST_CASE("d of one-forms")
{
  auto g = build_grid(129, 4.0);
  OneForm rot(g);
  for (int iy = 0; iy < g.n(); ++iy)
  {
    for (int ix = 0; ix < g.n(); ++ix)
    {
      rot.a1[g.index(ix, iy)] = -0.5 * g.coord(iy);
      rot.a2[g.index(ix, iy)] = 0.5 * g.coord(ix);
    }
  }
  auto f = d(rot);
  for (double v : f.density)
  {
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(sup_norm(d(OneForm(g)).density) == 0.0);

  // The x and y difference operators act on separate indices and commute, so d(df)
  // vanishes to round-off rather than only to O(h^2).
  auto sc = sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
  CHECK(sup_norm(d(d(sc)).density) < 1e-11);
}

TEST_CASE("hodge star algebra")
{
  auto g = build_grid(65, 8.0);
  OneForm a(g);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    a.a1[k] = std::sin(0.1 * k);
    a.a2[k] = std::cos(0.3 * k);
  }
  auto ss = star(star(a));
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    CHECK(ss.a1[k] == -a.a1[k]);
    CHECK(ss.a2[k] == -a.a2[k]);
  }
  OneForm dx(g);
  std::fill(dx.a1.begin(), dx.a1.end(), 1.0);
  auto sdx = star(dx);
  CHECK(sdx.a1[0] == 0.0);
  CHECK(sdx.a2[0] == 1.0);

  auto f = sample(g, [](double x, double y) { return x - 2 * y; });
  CHECK(star(star(f)).values == f.values);
}

TEST_CASE("trapezoid quadrature")
{
  auto g = build_grid(65, 8.0);
  CHECK(integrate(ScalarField(g, 1.0)) == 256.0);
  auto affine = sample(g, [](double x, double y) { return 1.0 + 0.5 * x - 2.0 * y + 0.25 * x * y; });
  CHECK(integrate(affine) == doctest::Approx(256.0).epsilon(1e-13));
  auto odd = sample(g, [](double x, double y) { return x * std::exp(-y * y); });
  CHECK(std::abs(integrate(odd)) < 1e-12);

  auto big = build_grid(513, 12.0);
  auto gauss = sample(big, [](double x, double y) { return std::exp(-x * x - y * y); });
  CHECK(std::abs(integrate(gauss) - std::numbers::pi) < 1e-8);
}

TEST_CASE("discrete Stokes for compactly supported forms")
{
  const auto stokes = [](int n) {
    auto g = build_grid(n, 6.0);
    const auto bump = [](double x, double y) {
      const double r2 = x * x + y * y;
      return r2 < 9.0 ? std::exp(-1.0 / (9.0 - r2)) : 0.0;
    };
    OneForm a(g);
    for (int iy = 0; iy < g.n(); ++iy)
    {
      for (int ix = 0; ix < g.n(); ++ix)
      {
        const double x = g.coord(ix), y = g.coord(iy);
        a.a1[g.index(ix, iy)] = bump(x - 0.5, y) * y * y;
        a.a2[g.index(ix, iy)] = bump(x, y + 0.3) * x;
      }
    }
    return std::abs(integrate(d(a)));
  };
  CHECK(stokes(129) < 1e-10);
}

TEST_CASE("AHF1 round trip")
{
  auto g = build_grid(65, 8.0);
  auto f = sample(g, [](double x, double y) { return std::sin(x) / (1.0 + y * y); });
  auto path = temp_file("scalar.ahf");
  write_field(f, path);
  auto back = read_scalar_field(path);
  CHECK(back.grid == g);
  CHECK(std::memcmp(back.values.data(), f.values.data(), 8 * g.size()) == 0);

  OneForm a(g);
  a.a1 = f.values;
  std::fill(a.a2.begin(), a.a2.end(), -2.0);
  write_field(a, path);
  auto ab = read_one_form(path);
  CHECK(ab.a1 == a.a1);
  CHECK(ab.a2 == a.a2);
  CHECK_THROWS_AS(read_scalar_field(path), FieldIoError);

  ComplexField u(g);
  u.re = f.values;
  write_field(u, path);
  CHECK(read_complex_field(path).re == u.re);

  CHECK(std::filesystem::file_size(path) == 18 + 2 * 8 * g.size());
}

TEST_CASE("AHF1 error kinds")
{
  auto g = build_grid(65, 8.0);
  auto path = temp_file("bad.ahf");
  write_field(ScalarField(g, 1.0), path);

  const auto kind_of = [&]() {
    try
    {
      read_field(path);
    }
    catch (const FieldIoError &e)
    {
      return e.kind();
    }
    FAIL("expected a FieldIoError");
    return FieldIoError::Kind::Io;
  };

  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("XXXX", 4);
  }
  CHECK(kind_of() == FieldIoError::Kind::BadMagic);

  write_field(ScalarField(g, 1.0), path);
  std::filesystem::resize_file(path, 18 + 8 * (g.size() - 1));
  CHECK(kind_of() == FieldIoError::Kind::Truncated);

  write_field(ScalarField(g, 1.0), path);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(18 + 8 * 10);
    const double nan = std::nan("");
    f.write(reinterpret_cast<const char *>(&nan), 8);
  }
  CHECK(kind_of() == FieldIoError::Kind::NonFinite);

  ScalarField bad(g, 1.0);
  bad.values[3] = INFINITY;
  CHECK_THROWS_AS(write_field(bad, path), FieldIoError);
}
