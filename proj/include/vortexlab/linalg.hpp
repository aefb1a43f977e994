// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_LINALG_HPP
#define VORTEXLAB_LINALG_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace vortexlab
{

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct CgResult
{
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Preconditioned conjugate gradients for a symmetric positive (semi)definite operator.
// `x` holds the initial guess on entry. Stops when ||r|| <= rel_tol * ||b||. An empty
// preconditioner means the identity.
CgResult pcg(const LinearOperator &op, const LinearOperator &precond, std::span<const double> b,
             std::span<double> x, double rel_tol, int max_iterations);

// Dot product with a fixed summation order.
double dot(std::span<const double> a, std::span<const double> b);

//
// Exact solver for (-Lap + shift) u = f, where Lap is the composed central-difference
// Laplacian D1 D1 + D2 D2 on an n x n grid of spacing h, restricted to nodes with both
// indices in [lo, hi] (zero outside). That operator splits into four independent
// parity sublattices, each carrying a standard five-point Laplacian of spacing 2h with
// homogeneous Dirichlet data, which are diagonalized by type-I sine transforms.
//
// Arrays passed to solve() are full n x n row-major; entries outside [lo, hi]^2 are
// ignored on input and zeroed on output.
//
class SublatticePoisson
{
public:
  SublatticePoisson(int n, int lo, int hi, double h, double shift);
  ~SublatticePoisson();
  SublatticePoisson(const SublatticePoisson &) = delete;
  SublatticePoisson &operator=(const SublatticePoisson &) = delete;

  void solve(std::span<const double> f, std::span<double> u) const;

  // Applies (-Lap + shift) itself under the same restriction.
  void apply(std::span<const double> u, std::span<double> out) const;

  int lo() const { return lo_; }
  int hi() const { return hi_; }

private:
  struct Block;
  int n_, lo_, hi_;
  double h_, shift_;
  std::vector<std::unique_ptr<Block>> blocks_;
};

// Share of the spectral energy of an n x n array carried by modes with
// max(|kx|, |ky|) > cutoff * (n / 2). Returns 0 for a zero array.
double high_frequency_fraction(std::span<const double> f, int n, double cutoff);

}  // namespace vortexlab

#endif  // VORTEXLAB_LINALG_HPP
