// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_GRID_HPP
#define VORTEXLAB_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace vortexlab
{

//
// Uniform collocated lattice on the square [-L, L]^2 with n points per side. n is odd so
// that the origin is a node. Storage for every field on the grid is row-major with index
// iy * n + ix.
//
class Grid
{
public:
  Grid() = default;

  int n() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  double coord(int i) const { return -half_width_ + i * spacing_; }
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * n_ + ix; }

  // Distance (in rings) of a node from the outermost ring of the box.
  int ring(int ix, int iy) const;

  bool operator==(const Grid &other) const
  {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

private:
  friend Grid build_grid(int n, double half_width);
  Grid(int n, double half_width);

  int n_ = 0;
  double half_width_ = 0.0;
  double spacing_ = 0.0;
};

// Throws InputError for even n, n < 65 or L <= 0.
Grid build_grid(int n, double half_width);

// Number of outermost rings on which compactly supported test data must vanish.
inline constexpr int kInteriorMargin = 4;

struct ScalarField
{
  Grid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Grid &g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

  double &operator()(int ix, int iy) { return values[grid.index(ix, iy)]; }
  double operator()(int ix, int iy) const { return values[grid.index(ix, iy)]; }
};

struct ComplexField
{
  Grid grid;
  std::vector<double> re, im;

  ComplexField() = default;
  explicit ComplexField(const Grid &g) : grid(g), re(g.size(), 0.0), im(g.size(), 0.0) {}
};

// a1 dx + a2 dy
struct OneForm
{
  Grid grid;
  std::vector<double> a1, a2;

  OneForm() = default;
  explicit OneForm(const Grid &g) : grid(g), a1(g.size(), 0.0), a2(g.size(), 0.0) {}
};

// density dx^dy
struct TwoForm
{
  Grid grid;
  std::vector<double> density;

  TwoForm() = default;
  explicit TwoForm(const Grid &g) : grid(g), density(g.size(), 0.0) {}
};

// Sample a function of (x, y) at every node.
template <typename F>
ScalarField sample(const Grid &grid, F &&f)
{
  ScalarField out(grid);
  for (int iy = 0; iy < grid.n(); ++iy)
  {
    for (int ix = 0; ix < grid.n(); ++ix)
    {
      out(ix, iy) = f(grid.coord(ix), grid.coord(iy));
    }
  }
  return out;
}

bool all_finite(std::span<const double> v);

// Throws InputError when the two grids differ.
void require_same_grid(const Grid &a, const Grid &b, const char *what);

}  // namespace vortexlab

#endif  // VORTEXLAB_GRID_HPP
