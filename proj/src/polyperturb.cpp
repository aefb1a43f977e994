// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/polyperturb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include "vortexlab/error.hpp"

namespace vortexlab
{

ComplexPoly ComplexPoly::from_roots(const std::vector<Complex> &roots)
{
  ComplexPoly p;
  p.coeffs_ = {1.0};
  for (const Complex &r : roots)
  {
    // multiply by (z - r)
    std::vector<Complex> next(p.coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.coeffs_.size(); ++k)
    {
      next[k + 1] += p.coeffs_[k];
      next[k] -= r * p.coeffs_[k];
    }
    p.coeffs_ = std::move(next);
  }
  p.roots_ = roots;
  p.has_roots_ = true;
  if (p.degree() > 16)
  {
    throw InputError("polynomial degree above 16");
  }
  return p;
}

ComplexPoly ComplexPoly::from_coefficients(std::vector<Complex> coeffs)
{
  if (coeffs.empty() || coeffs.back() != Complex(1.0))
  {
    throw InputError("polynomial must be monic");
  }
  ComplexPoly p;
  p.coeffs_ = std::move(coeffs);
  p.has_roots_ = p.degree() == 0;
  return p;
}

Complex ComplexPoly::operator()(Complex z) const
{
  if (has_roots_)
  {
    Complex v = 1.0;
    for (const Complex &r : roots_)
    {
      v *= z - r;
    }
    return v;
  }
  Complex v = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;)
  {
    v = v * z + coeffs_[k];
  }
  return v;
}

Complex ComplexPoly::derivative(Complex z) const
{
  Complex v = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;)
  {
    v = v * z + static_cast<double>(k) * coeffs_[k];
  }
  return v;
}

namespace
{

double binomial(int n, int k)
{
  double r = 1.0;
  for (int j = 1; j <= k; ++j)
  {
    r = r * (n - k + j) / j;
  }
  return r;
}

double fd_step(int order)
{
  return order <= 3 ? 1e-3 : std::pow(1e-16, 1.0 / (order + 2));
}

// Centred difference for d^i/dx^i d^j/dy^j at z.
Complex partial(const std::function<Complex(Complex)> &f, Complex z, int i, int j)
{
  if (i == 0 && j == 0)
  {
    return f(z);
  }
  const double s = fd_step(i + j);
  Complex acc = 0.0;
  for (int p = 0; p <= i; ++p)
  {
    for (int q = 0; q <= j; ++q)
    {
      const double sign = ((p + q) % 2 == 0) ? 1.0 : -1.0;
      const Complex at = z + Complex((0.5 * i - p) * s, (0.5 * j - q) * s);
      acc += sign * binomial(i, p) * binomial(j, q) * f(at);
    }
  }
  return acc / std::pow(s, i + j);
}

std::vector<Complex> disc_points(int radii, int angles)
{
  std::vector<Complex> pts{Complex(0.0)};
  for (int k = 1; k <= radii; ++k)
  {
    const double r = static_cast<double>(k) / radii;
    for (int m = 0; m < angles; ++m)
    {
      pts.push_back(std::polar(r, 2.0 * std::numbers::pi * m / angles));
    }
  }
  return pts;
}

double unit_uniform(std::mt19937_64 &rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Winding of F along the segment [z0, z1], refined until each arg step is below 1/2.
std::optional<double> arg_change(const std::function<Complex(Complex)> &F, Complex z0, Complex z1,
                                 Complex f0, Complex f1, int depth)
{
  if (std::abs(f0) == 0.0 || std::abs(f1) == 0.0)
  {
    return std::nullopt;
  }
  const double step = std::arg(f1 / f0);
  if (std::abs(step) < 0.5)
  {
    return step;
  }
  if (depth > 48)
  {
    return std::nullopt;  // a zero sits on the contour
  }
  const Complex zm = 0.5 * (z0 + z1);
  const Complex fm = F(zm);
  const auto a = arg_change(F, z0, zm, f0, fm, depth + 1);
  const auto b = arg_change(F, zm, z1, fm, f1, depth + 1);
  if (!a || !b)
  {
    return std::nullopt;
  }
  return *a + *b;
}

// Winding number of F along the closed polygon through `vertices` (each edge pre-split into
// `split` pieces); nullopt if the contour passes too close to a zero.
std::optional<int> winding(const std::function<Complex(Complex)> &F, const std::vector<Complex> &vertices,
                           int split)
{
  double total = 0.0;
  for (std::size_t v = 0; v < vertices.size(); ++v)
  {
    const Complex a = vertices[v], b = vertices[(v + 1) % vertices.size()];
    Complex prev = a;
    Complex fprev = F(a);
    for (int s = 1; s <= split; ++s)
    {
      const Complex z = a + (b - a) * (static_cast<double>(s) / split);
      const Complex fz = F(z);
      const auto d = arg_change(F, prev, z, fprev, fz, 0);
      if (!d)
      {
        return std::nullopt;
      }
      total += *d;
      prev = z;
      fprev = fz;
    }
  }
  const double w = total / (2.0 * std::numbers::pi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 1e-3)
  {
    return std::nullopt;
  }
  return static_cast<int>(rounded);
}

Complex newton_polish(const std::function<Complex(Complex)> &F, Complex z)
{
  Complex best = z;
  double best_abs = std::abs(F(z));
  for (int it = 0; it < 30 && best_abs > 0.0; ++it)
  {
    const double s = 1e-7 * std::max(1e-3, std::abs(z) + 1e-3);
    const Complex f = F(z);
    const Complex fx = (F(z + s) - F(z - s)) / (2.0 * s);
    const Complex fy = (F(z + Complex(0.0, s)) - F(z - Complex(0.0, s))) / (2.0 * s);
    // Solve [Re fx Re fy; Im fx Im fy] d = -[Re f; Im f].
    const double a = fx.real(), b = fy.real(), c = fx.imag(), d = fy.imag();
    const double det = a * d - b * c;
    if (det == 0.0)
    {
      break;
    }
    const double dx = -(d * f.real() - b * f.imag()) / det;
    const double dy = -(-c * f.real() + a * f.imag()) / det;
    z += Complex(dx, dy);
    const double fa = std::abs(F(z));
    if (fa < best_abs)
    {
      best_abs = fa;
      best = z;
    }
    else if (std::hypot(dx, dy) < 1e-16)
    {
      break;
    }
  }
  return best;
}

std::vector<Complex> rectangle(Complex lo, double w, double h)
{
  return {lo, lo + w, lo + Complex(w, h), lo + Complex(0.0, h)};
}

// Depth-first search over rectangles with positive winding, nearest the origin first.
std::optional<Complex> search(const std::function<Complex(Complex)> &F, Complex lo, double w,
                              double h, int depth)
{
  if (std::max(w, h) < 1e-10 || depth > 80)
  {
    const Complex z = newton_polish(F, lo + Complex(0.5 * w, 0.5 * h));
    if (std::abs(z) < 1.0)
    {
      return z;
    }
    return std::nullopt;
  }
  // Slightly off-centre splits keep zeros off the child contours; another offset is tried
  // when a contour still passes through one.
  static constexpr std::array<double, 4> kSplit{0.5 + 1.7e-3, 0.5 - 2.9e-3, 0.5 + 7.3e-3,
                                                0.5 - 1.13e-2};
  struct Child
  {
    Complex lo;
    double w, h;
    int count;
  };
  for (double frac : kSplit)
  {
    const double a = w * frac, b = h * frac;
    std::array<Child, 4> children{Child{lo, a, b, 0}, Child{lo + a, w - a, b, 0},
                                  Child{lo + Complex(0.0, b), a, h - b, 0},
                                  Child{lo + Complex(a, b), w - a, h - b, 0}};
    bool ok = true;
    for (auto &ch : children)
    {
      const auto count = winding(F, rectangle(ch.lo, ch.w, ch.h), 8);
      if (!count)
      {
        ok = false;
        break;
      }
      ch.count = *count;
    }
    if (!ok)
    {
      continue;
    }
    std::sort(children.begin(), children.end(), [](const Child &x, const Child &y) {
      return std::abs(x.lo + Complex(0.5 * x.w, 0.5 * x.h)) <
             std::abs(y.lo + Complex(0.5 * y.w, 0.5 * y.h));
    });
    for (const auto &ch : children)
    {
      if (ch.count <= 0)
      {
        continue;
      }
      if (const auto found = search(F, ch.lo, ch.w, ch.h, depth + 1))
      {
        return found;
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

double cn_norm(const std::function<Complex(Complex)> &eval, int order)
{
  if (order < 0)
  {
    throw InputError("order must be non-negative");
  }
  double sup = 0.0;
  for (const Complex &z : disc_points(8, 32))
  {
    for (int k = 0; k <= order; ++k)
    {
      for (int i = 0; i <= k; ++i)
      {
        sup = std::max(sup, std::abs(partial(eval, z, i, k - i)));
      }
    }
  }
  return sup;
}

SampledPerturbation make_perturbation(std::function<Complex(Complex)> eval, int order)
{
  SampledPerturbation R;
  R.eval = std::move(eval);
  R.order = order;
  R.cn_norm = cn_norm(R.eval, order);
  for (int k = 0; k <= 16; ++k)
  {
    for (int m = 0; m < 64; ++m)
    {
      R.polar_samples.push_back(R.eval(std::polar(k / 16.0, 2.0 * std::numbers::pi * m / 64)));
    }
  }
  return R;
}

SampledPerturbation seeded_cosine_perturbation(std::uint64_t seed, int order, double target)
{
  struct Mode
  {
    Complex amp;
    double kx, ky, phase;
  };
  std::mt19937_64 rng(seed);
  std::vector<Mode> modes(4);
  for (auto &m : modes)
  {
    m.amp = Complex(2.0 * unit_uniform(rng) - 1.0, 2.0 * unit_uniform(rng) - 1.0);
    m.kx = 4.0 * unit_uniform(rng) - 2.0;
    m.ky = 4.0 * unit_uniform(rng) - 2.0;
    m.phase = 2.0 * std::numbers::pi * unit_uniform(rng);
  }
  const auto raw = [modes](Complex z) {
    Complex v = 0.0;
    for (const auto &m : modes)
    {
      v += m.amp * std::cos(m.kx * z.real() + m.ky * z.imag() + m.phase);
    }
    return v;
  };
  const double scale = target / cn_norm(raw, order);
  return make_perturbation([raw, scale](Complex z) { return scale * raw(z); }, order);
}

Complex find_zero(const ComplexPoly &P, const SampledPerturbation &R)
{
  if (P.degree() < 1)
  {
    throw InputError("find_zero needs degree at least 1");
  }
  constexpr int kCircle = 1024;
  double min_p = std::numeric_limits<double>::infinity(), sup_r = 0.0;
  std::vector<Complex> circle(kCircle);
  for (int m = 0; m < kCircle; ++m)
  {
    circle[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / kCircle);
    min_p = std::min(min_p, std::abs(P(circle[m])));
    sup_r = std::max(sup_r, std::abs(R(circle[m])));
  }
  if (!(sup_r < min_p))
  {
    throw InputError("Rouche hypothesis violated: sup|R| >= min|P| on the unit circle");
  }
  const std::function<Complex(Complex)> F = [&](Complex z) { return P(z) + R(z); };
  const auto w = winding(F, circle, 1);
  if (!w || *w == 0)
  {
    throw InputError("winding number of P + R on the unit circle is zero");
  }
  const auto found = search(F, Complex(-1.0, -1.0), 2.0, 2.0, 0);
  if (!found)
  {
    throw ConvergenceError("argument-principle search found no zero in the unit disc", 0.0, 0);
  }
  return *found;
}

Deflation deflate_once(const ComplexPoly &P, const SampledPerturbation &R, Complex a)
{
  if (!(std::abs(a) < 1.0))
  {
    throw InputError("deflation point outside the unit disc");
  }
  if (P.degree() < 1)
  {
    throw InputError("cannot deflate a constant polynomial");
  }
  const auto &c = P.coefficients();
  const int N = P.degree();
  std::vector<Complex> b(N);
  b[N - 1] = c[N];
  for (int k = N - 1; k >= 1; --k)
  {
    b[k - 1] = c[k] + a * b[k];
  }
  Deflation out;
  out.P = ComplexPoly::from_coefficients(std::move(b));

  const Complex Ra = R(a);
  const double s = 1e-5;
  const Complex rx = (R(a + s) - R(a - s)) / (2.0 * s);
  const Complex ry = (R(a + Complex(0.0, s)) - R(a - Complex(0.0, s))) / (2.0 * s);
  const Complex rz = 0.5 * (rx - Complex(0.0, 1.0) * ry);
  const Complex rzbar = 0.5 * (rx + Complex(0.0, 1.0) * ry);
  auto inner = R.eval;
  auto quotient = [inner, a, Ra, rz, rzbar](Complex z) -> Complex {
    const Complex dz = z - a;
    if (std::abs(dz) < 1e-6)
    {
      const Complex phase = std::abs(dz) > 0.0 ? std::conj(dz) / dz : Complex(1.0);
      return rz + rzbar * phase;
    }
    return (inner(z) - Ra) / dz;
  };
  out.R = make_perturbation(quotient, std::max(0, R.order - 1));
  return out;
}

double measure_lambda(const ComplexPoly &P, const SampledPerturbation &R, const ComplexPoly &Q)
{
  constexpr int kGrid = 256;
  constexpr double kExclude = 1e-3;
  const auto &roots = Q.roots();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const auto visit = [&](Complex z) {
    const double q = std::abs(Q(z));
    if (q == 0.0)
    {
      return;
    }
    const double ratio = std::abs(P(z) + R(z)) / q;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  };
  for (int iy = 0; iy < kGrid; ++iy)
  {
    for (int ix = 0; ix < kGrid; ++ix)
    {
      const Complex z(-1.0 + (ix + 0.5) * 2.0 / kGrid, -1.0 + (iy + 0.5) * 2.0 / kGrid);
      if (std::abs(z) > 1.0)
      {
        continue;
      }
      const bool near = std::any_of(roots.begin(), roots.end(),
                                    [&](const Complex &b) { return std::abs(z - b) < kExclude; });
      if (!near)
      {
        visit(z);
      }
    }
  }
  for (const Complex &b : roots)
  {
    for (int m = 0; m < 64; ++m)
    {
      visit(b + std::polar(kExclude, 2.0 * std::numbers::pi * m / 64));
    }
  }
  if (hi == 0.0)
  {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(hi, 1.0 / lo);
}

ComparableResult comparable_polynomial(const ComplexPoly &P, const SampledPerturbation &R,
                                       double admissibility)
{
  if (!P.has_roots())
  {
    throw InputError("comparable_polynomial needs P given by its roots");
  }
  for (const Complex &a : P.roots())
  {
    if (!(std::abs(a) < 0.5))
    {
      throw InputError("roots of P must lie in the disc of radius 1/2");
    }
  }
  if (R.cn_norm > admissibility * (1.0 + 1e-3))
  {
    throw InputError("perturbation C^N norm above the admissibility threshold");
  }
  ComparableResult out;
  std::vector<Complex> b;
  ComplexPoly cur = P;
  SampledPerturbation cur_r = R;
  while (cur.degree() > 0)
  {
    const Complex a = find_zero(cur, cur_r);
    if (!(std::abs(a) < 2.0 / 3.0))
    {
      throw InputError("lemma hypothesis violated (eps too large)");
    }
    b.push_back(a);
    Deflation next = deflate_once(cur, cur_r, a);
    out.deflated_norms.push_back(next.R.cn_norm);
    cur = std::move(next.P);
    cur_r = std::move(next.R);
  }
  out.Q = ComplexPoly::from_roots(b);
  for (const Complex &z : b)
  {
    out.max_root_residual = std::max(out.max_root_residual, std::abs(P(z) + R(z)));
  }
  out.lambda_measured = measure_lambda(P, R, out.Q);
  return out;
}

nlohmann::json to_json(const ComplexPoly &P, const ComparableResult &r, double cn)
{
  const auto pairs = [](const std::vector<Complex> &v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Complex &z : v)
    {
      a.push_back({z.real(), z.imag()});
    }
    return a;
  };
  return {{"roots_P", pairs(P.roots())},
          {"roots_Q", pairs(r.Q.roots())},
          {"cn_norm", cn},
          {"lambda_measured", r.lambda_measured},
          {"max_root_residual", r.max_root_residual}};
}

}  // namespace vortexlab
