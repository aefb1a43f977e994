// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_POLYPERTURB_HPP
#define VORTEXLAB_POLYPERTURB_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>
#include "json.hpp"

namespace vortexlab
{

using Complex = std::complex<double>;

// Monic polynomial stored by coefficients c[0] + c[1] z + ... + z^N. Roots are kept when
// the polynomial was built from them.
class ComplexPoly
{
public:
  ComplexPoly() : coeffs_{1.0} {}
  static ComplexPoly from_roots(const std::vector<Complex> &roots);
  static ComplexPoly from_coefficients(std::vector<Complex> coeffs);  // must be monic

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex> &coefficients() const { return coeffs_; }
  bool has_roots() const { return has_roots_; }
  const std::vector<Complex> &roots() const { return roots_; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

private:
  std::vector<Complex> coeffs_;
  std::vector<Complex> roots_;
  bool has_roots_ = true;
};

// Perturbation R on the closed unit disc: an evaluation callback, samples on a polar grid
// and the measured C^N norm.
struct SampledPerturbation
{
  std::function<Complex(Complex)> eval;
  int order = 0;          // N of the C^N norm
  double cn_norm = 0.0;   // sup over the disc of all partials of order <= N
  std::vector<Complex> polar_samples;  // radii k/16 (k = 0..16) times 64 angles, row-major

  Complex operator()(Complex z) const { return eval(z); }
};

// Samples R and measures its C^N norm.
SampledPerturbation make_perturbation(std::function<Complex(Complex)> eval, int order);

// sup over the disc of max |d^a R| over multi-indices with |a| <= order, by centred finite
// differences. The spacing is 1e-3 for orders up to 3 and 1e-16^(1/(k+2)) for k > 3.
double cn_norm(const std::function<Complex(Complex)> &eval, int order);

// Sum of four cosine modes with seeded complex amplitudes, wave vectors in [-2, 2]^2 and
// phases, rescaled so that its measured C^order norm equals target.
SampledPerturbation seeded_cosine_perturbation(std::uint64_t seed, int order, double target);

// A root of P + R in the open unit disc by argument-principle subdivision and Newton
// polishing. Throws InputError when sup |R| >= min |P| on the unit circle or when the
// winding number of P + R along the circle is zero.
Complex find_zero(const ComplexPoly &P, const SampledPerturbation &R);

struct Deflation
{
  ComplexPoly P;
  SampledPerturbation R;
};

// P' = (P(z) - P(a)) / (z - a) by synthetic division and R'(z) = (R(z) - R(a)) / (z - a),
// with a first-order expansion within 1e-6 of a. Throws InputError when |a| >= 1.
Deflation deflate_once(const ComplexPoly &P, const SampledPerturbation &R, Complex a);

struct ComparableResult
{
  ComplexPoly Q;
  double lambda_measured = 0.0;
  double max_root_residual = 0.0;       // max_j |(P + R)(b_j)|
  std::vector<double> deflated_norms;  // C^{N-k} norms of the deflated perturbations
};

// Roots of P must lie in B_{1/2} and cn_norm(R) must not exceed `admissibility`. Throws
// InputError("lemma hypothesis violated (eps too large)") if a root of Q leaves B_{2/3}.
ComparableResult comparable_polynomial(const ComplexPoly &P, const SampledPerturbation &R,
                                       double admissibility = 1e-3);

// max(ratio, 1/ratio) of |P + R| / |Q| over a 256 x 256 grid on the disc, excluding
// 1e-3-neighbourhoods of the roots of Q, and over the circles bounding them.
double measure_lambda(const ComplexPoly &P, const SampledPerturbation &R, const ComplexPoly &Q);

nlohmann::json to_json(const ComplexPoly &P, const ComparableResult &r, double cn);

}  // namespace vortexlab

#endif  // VORTEXLAB_POLYPERTURB_HPP
