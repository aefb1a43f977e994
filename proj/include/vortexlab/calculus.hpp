// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_CALCULUS_HPP
#define VORTEXLAB_CALCULUS_HPP

#include <span>
#include <vector>
#include "vortexlab/grid.hpp"

namespace vortexlab
{

//
// Discrete exterior calculus on the collocated grid. Derivatives are central differences
// in the interior and second-order one-sided differences on the outermost ring.
// Orientation: *dx = dy, *dy = -dx.
//

OneForm d(const ScalarField &f);
TwoForm d(const OneForm &alpha);

OneForm star(const OneForm &alpha);
TwoForm star(const ScalarField &f);
ScalarField star(const TwoForm &tau);

// Trapezoidal quadrature over the box.
double integrate(const ScalarField &f);
double integrate(const TwoForm &tau);

// Quadrature of sum(values * values) over each node, i.e. ||f||^2_{L^2}.
double l2_norm_sq(const ScalarField &f);
double l2_norm_sq(const OneForm &alpha);

double sup_norm(std::span<const double> v);

namespace stencil
{

// Raw derivative kernels on a row-major n x n array with spacing h. `out` is overwritten.
void diff_x(std::span<const double> in, std::span<double> out, int n, double h);
void diff_y(std::span<const double> in, std::span<double> out, int n, double h);

// Exact transposes of diff_x / diff_y; `out` is accumulated into.
void diff_x_transpose_add(std::span<const double> in, std::span<double> out, int n, double h);
void diff_y_transpose_add(std::span<const double> in, std::span<double> out, int n, double h);

// Five-point Laplacian at interior nodes; the outermost ring of `out` is set to zero.
void laplacian5(std::span<const double> in, std::span<double> out, int n, double h);

// Trapezoid weights (h^2 in the interior, halved on edges, quartered at corners).
std::vector<double> trapezoid_weights(const Grid &grid);

// Weighted sum with a fixed row-by-row reduction order, so repeated runs give
// bit-identical results.
double weighted_sum(std::span<const double> w, std::span<const double> f, int n);

}  // namespace stencil

}  // namespace vortexlab

#endif  // VORTEXLAB_CALCULUS_HPP
