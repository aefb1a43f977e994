// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/selection.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include "vortexlab/calculus.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/linalg.hpp"
#include "vortexlab/perturbation.hpp"
#include "vortexlab/weighted_calc.hpp"

namespace vortexlab
{

namespace
{

// Penalized functional and its Euclidean gradient with respect to the nodal values of
// (re u, im u, A1, A2). Gradients are skipped when the output pointers are null.
struct Evaluation
{
  double G = 0.0;
  double E = 0.0;
  std::vector<double> g_re, g_im, g_a1, g_a2;
};

Evaluation evaluate(const ComplexField &u, const OneForm &A, const ComplexField &ua, const OneForm &Aa,
                    bool with_gradient)
{
  const Grid &g = u.grid;
  const int n = g.n();
  const double h = g.spacing();
  const std::size_t size = g.size();
  const auto W = stencil::trapezoid_weights(g);
  std::vector<double> dre1(size), dre2(size), dim1(size), dim2(size);
  stencil::diff_x(u.re, dre1, n, h);
  stencil::diff_y(u.re, dre2, n, h);
  stencil::diff_x(u.im, dim1, n, h);
  stencil::diff_y(u.im, dim2, n, h);
  const TwoForm F = d(A);

  std::vector<double> e(size), pen(size);
  std::vector<double> p1(size), p2(size), q1(size), q2(size), pot(size);
  for (std::size_t k = 0; k < size; ++k)
  {
    p1[k] = dre1[k] + A.a1[k] * u.im[k];
    p2[k] = dre2[k] + A.a2[k] * u.im[k];
    q1[k] = dim1[k] - A.a1[k] * u.re[k];
    q2[k] = dim2[k] - A.a2[k] * u.re[k];
    pot[k] = 1.0 - u.re[k] * u.re[k] - u.im[k] * u.im[k];
    e[k] = p1[k] * p1[k] + p2[k] * p2[k] + q1[k] * q1[k] + q2[k] * q2[k] +
           F.density[k] * F.density[k] + 0.25 * pot[k] * pot[k];
    const double a = u.re[k] - ua.re[k], b = u.im[k] - ua.im[k];
    const double c = A.a1[k] - Aa.a1[k], dd = A.a2[k] - Aa.a2[k];
    pen[k] = a * a + b * b + c * c + dd * dd;
  }
  Evaluation ev;
  ev.E = stencil::weighted_sum(W, e, n);
  ev.G = ev.E + stencil::weighted_sum(W, pen, n);
  if (!with_gradient)
  {
    return ev;
  }
  ev.g_re.assign(size, 0.0);
  ev.g_im.assign(size, 0.0);
  ev.g_a1.assign(size, 0.0);
  ev.g_a2.assign(size, 0.0);
  std::vector<double> wp1(size), wp2(size), wq1(size), wq2(size), wF(size);
  for (std::size_t k = 0; k < size; ++k)
  {
    wp1[k] = 2.0 * W[k] * p1[k];
    wp2[k] = 2.0 * W[k] * p2[k];
    wq1[k] = 2.0 * W[k] * q1[k];
    wq2[k] = 2.0 * W[k] * q2[k];
    wF[k] = 2.0 * W[k] * F.density[k];
  }
  stencil::diff_x_transpose_add(wp1, ev.g_re, n, h);
  stencil::diff_y_transpose_add(wp2, ev.g_re, n, h);
  stencil::diff_x_transpose_add(wq1, ev.g_im, n, h);
  stencil::diff_y_transpose_add(wq2, ev.g_im, n, h);
  stencil::diff_x_transpose_add(wF, ev.g_a2, n, h);
  for (auto &v : wF)
  {
    v = -v;
  }
  stencil::diff_y_transpose_add(wF, ev.g_a1, n, h);
  for (std::size_t k = 0; k < size; ++k)
  {
    const double wpot = W[k] * pot[k];
    ev.g_re[k] += -wq1[k] * A.a1[k] - wq2[k] * A.a2[k] - wpot * u.re[k] +
                  2.0 * W[k] * (u.re[k] - ua.re[k]);
    ev.g_im[k] += wp1[k] * A.a1[k] + wp2[k] * A.a2[k] - wpot * u.im[k] +
                  2.0 * W[k] * (u.im[k] - ua.im[k]);
    ev.g_a1[k] += wp1[k] * u.im[k] - wq1[k] * u.re[k] + 2.0 * W[k] * (A.a1[k] - Aa.a1[k]);
    ev.g_a2[k] += wp2[k] * u.im[k] - wq2[k] * u.re[k] + 2.0 * W[k] * (A.a2[k] - Aa.a2[k]);
  }
  return ev;
}

void require_problem(const PenalizedProblem &prob)
{
  if (!prob.base)
  {
    throw InputError("penalized problem has no base solution");
  }
  const Grid &g = prob.base->grid;
  require_same_grid(g, prob.anchor.u.grid, "anchor u");
  require_same_grid(g, prob.anchor.A.grid, "anchor A");
  require_same_grid(g, prob.current.u.grid, "current u");
  require_same_grid(g, prob.current.A.grid, "current A");
}

// Descent variables (h', B1, B2) stacked; the L2 inner product uses quadrature weights
// and ignores the frozen margin.
struct Space
{
  const VortexSolution &base;
  std::size_t size;
  std::vector<double> w;  // quadrature weight on free nodes, 0 on frozen ones

  explicit Space(const VortexSolution &b) : base(b), size(b.grid.size())
  {
    const auto W = stencil::trapezoid_weights(b.grid);
    w.assign(size, 0.0);
    for (int iy = 0; iy < b.grid.n(); ++iy)
    {
      for (int ix = 0; ix < b.grid.n(); ++ix)
      {
        if (b.grid.ring(ix, iy) >= kInteriorMargin)
        {
          w[b.grid.index(ix, iy)] = W[b.grid.index(ix, iy)];
        }
      }
    }
  }

  double inner(const std::vector<double> &a, const std::vector<double> &b) const
  {
    double total = 0.0;
    for (int c = 0; c < 3; ++c)
    {
      const std::span<const double> sa(a.data() + c * size, size), sb(b.data() + c * size, size);
      std::vector<double> prod(size);
      for (std::size_t k = 0; k < size; ++k)
      {
        prod[k] = sa[k] * sb[k];
      }
      total += stencil::weighted_sum(w, prod, base.grid.n());
    }
    return total;
  }

  std::vector<double> pack(const PerturbativeData &p) const
  {
    std::vector<double> x(3 * size);
    std::copy(p.h_prime.values.begin(), p.h_prime.values.end(), x.begin());
    std::copy(p.B.a1.begin(), p.B.a1.end(), x.begin() + size);
    std::copy(p.B.a2.begin(), p.B.a2.end(), x.begin() + 2 * size);
    return x;
  }

  PairState unpack(const std::vector<double> &x) const
  {
    PairState s;
    s.u = base.u0;
    s.A = base.A0;
    PerturbativeData p{ScalarField(base.grid), OneForm(base.grid)};
    for (std::size_t k = 0; k < size; ++k)
    {
      p.h_prime.values[k] = x[k];
      p.B.a1[k] = x[size + k];
      p.B.a2[k] = x[2 * size + k];
      const double e = std::exp(x[k]);
      s.u.re[k] *= e;
      s.u.im[k] *= e;
      s.A.a1[k] += p.B.a1[k];
      s.A.a2[k] += p.B.a2[k];
    }
    s.pert = std::move(p);
    return s;
  }

  // L2 gradient in (h', B) from the Euclidean gradient in (u, A); zero on frozen nodes.
  std::vector<double> chain(const Evaluation &ev, const PairState &s) const
  {
    std::vector<double> gx(3 * size, 0.0);
    for (std::size_t k = 0; k < size; ++k)
    {
      if (w[k] == 0.0)
      {
        continue;
      }
      gx[k] = (ev.g_re[k] * s.u.re[k] + ev.g_im[k] * s.u.im[k]) / w[k];
      gx[size + k] = ev.g_a1[k] / w[k];
      gx[2 * size + k] = ev.g_a2[k] / w[k];
    }
    return gx;
  }
};

}  // namespace

PenalizedProblem make_problem(std::shared_ptr<const VortexSolution> base, const PairState &anchor)
{
  if (!anchor.pert)
  {
    throw InputError("selection anchor needs perturbative data over the base");
  }
  PenalizedProblem prob;
  prob.base = std::move(base);
  prob.anchor = anchor;
  prob.current = anchor;
  require_problem(prob);
  return prob;
}

double penalized_energy(const PenalizedProblem &prob)
{
  require_problem(prob);
  return evaluate(prob.current.u, prob.current.A, prob.anchor.u, prob.anchor.A, false).G;
}

PenalizedGradient penalized_gradient(const PenalizedProblem &prob)
{
  require_problem(prob);
  const Evaluation ev = evaluate(prob.current.u, prob.current.A, prob.anchor.u, prob.anchor.A, true);
  const Grid &g = prob.base->grid;
  const auto W = stencil::trapezoid_weights(g);
  PenalizedGradient out{ComplexField(g), OneForm(g)};
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    out.grad_u.re[k] = ev.g_re[k] / W[k];
    out.grad_u.im[k] = ev.g_im[k] / W[k];
    out.grad_A.a1[k] = ev.g_a1[k] / W[k];
    out.grad_A.a2[k] = ev.g_a2[k] / W[k];
  }
  return out;
}

GradientCheck check_gradient(const PenalizedProblem &prob, std::uint64_t seed, int directions,
                             double step)
{
  const PenalizedGradient grad = penalized_gradient(prob);
  const Grid &g = prob.base->grid;
  const auto W = stencil::trapezoid_weights(g);
  const double corr = std::max(1.0, 4.0 * g.spacing());
  GradientCheck out;
  out.directions = directions;
  for (int dir = 0; dir < directions; ++dir)
  {
    const std::uint64_t s = seed + 4 * static_cast<std::uint64_t>(dir);
    const auto dre = random_smooth_field(g, s, 1.0, corr).values;
    const auto dim = random_smooth_field(g, s + 1, 1.0, corr).values;
    const auto da1 = random_smooth_field(g, s + 2, 1.0, corr).values;
    const auto da2 = random_smooth_field(g, s + 3, 1.0, corr).values;
    std::vector<double> prod(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
    {
      prod[k] = grad.grad_u.re[k] * dre[k] + grad.grad_u.im[k] * dim[k] +
                grad.grad_A.a1[k] * da1[k] + grad.grad_A.a2[k] * da2[k];
    }
    const double analytic = stencil::weighted_sum(W, prod, g.n());
    const auto shifted = [&](double t) {
      ComplexField u = prob.current.u;
      OneForm A = prob.current.A;
      for (std::size_t k = 0; k < g.size(); ++k)
      {
        u.re[k] += t * dre[k];
        u.im[k] += t * dim[k];
        A.a1[k] += t * da1[k];
        A.a2[k] += t * da2[k];
      }
      return evaluate(u, A, prob.anchor.u, prob.anchor.A, false).G;
    };
    const double fd = (shifted(step) - shifted(-step)) / (2.0 * step);
    const double scale = std::max({std::abs(analytic), std::abs(fd), 1e-10});
    out.max_rel_error = std::max(out.max_rel_error, std::abs(fd - analytic) / scale);
  }
  return out;
}

PairState minimize_penalized(PenalizedProblem &prob, int max_iters)
{
  require_problem(prob);
  if (!prob.current.pert)
  {
    throw InputError("current pair needs perturbative data over the base");
  }
  const Space space(*prob.base);
  const int round = prob.history.empty() ? 0 : prob.history.back().round;
  std::vector<double> x = space.pack(*prob.current.pert);
  PairState state = space.unpack(x);
  Evaluation ev = evaluate(state.u, state.A, prob.anchor.u, prob.anchor.A, true);
  std::vector<double> gx = space.chain(ev, state);
  double gnorm = std::sqrt(space.inner(gx, gx));
  prob.history.push_back({round, 0, ev.G, ev.E, gnorm, 0.0});

  constexpr std::size_t kMemory = 8;
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  const std::size_t dim = x.size();

  for (int it = 1; it <= max_iters && gnorm > prob.tolerance; ++it)
  {
    // Two-loop recursion for d = -H g.
    std::vector<double> q = gx;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t j = s_hist.size(); j-- > 0;)
    {
      alpha[j] = rho_hist[j] * space.inner(s_hist[j], q);
      for (std::size_t k = 0; k < dim; ++k)
      {
        q[k] -= alpha[j] * y_hist[j][k];
      }
    }
    double gamma = 0.0;
    if (!s_hist.empty())
    {
      gamma = space.inner(s_hist.back(), y_hist.back()) / space.inner(y_hist.back(), y_hist.back());
    }
    else
    {
      gamma = 1.0 / std::max(1.0, gnorm);
    }
    for (auto &v : q)
    {
      v *= gamma;
    }
    for (std::size_t j = 0; j < s_hist.size(); ++j)
    {
      const double beta = rho_hist[j] * space.inner(y_hist[j], q);
      for (std::size_t k = 0; k < dim; ++k)
      {
        q[k] += (alpha[j] - beta) * s_hist[j][k];
      }
    }
    std::vector<double> dir(dim);
    for (std::size_t k = 0; k < dim; ++k)
    {
      dir[k] = -q[k];
    }
    double slope = space.inner(gx, dir);
    bool steepest = s_hist.empty();
    if (!(slope < 0.0))
    {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      const double scale = 1.0 / std::max(1.0, gnorm);
      for (std::size_t k = 0; k < dim; ++k)
      {
        dir[k] = -scale * gx[k];
      }
      slope = space.inner(gx, dir);
      steepest = true;
    }

    // Armijo backtracking; the trial h' is kept below 2 in modulus.
    double step = 1.0;
    double dir_sup = 0.0;
    for (std::size_t k = 0; k < space.size; ++k)
    {
      dir_sup = std::max(dir_sup, std::abs(dir[k]));
    }
    if (dir_sup > 0.5)
    {
      step = 0.5 / dir_sup;
    }
    bool accepted = false;
    std::vector<double> x_new(dim);
    PairState trial;
    Evaluation ev_new;
    for (int halving = 0; halving < 40; ++halving, step *= 0.5)
    {
      for (std::size_t k = 0; k < dim; ++k)
      {
        x_new[k] = x[k] + step * dir[k];
      }
      trial = space.unpack(x_new);
      ev_new = evaluate(trial.u, trial.A, prob.anchor.u, prob.anchor.A, false);
      if (std::isfinite(ev_new.G) && ev_new.G <= ev.G + 1e-4 * step * slope)
      {
        accepted = true;
        break;
      }
    }
    if (!accepted)
    {
      const double floor = 1e-13 * std::max(1.0, std::abs(ev.G));
      if (!steepest)
      {
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        --it;
        continue;
      }
      if (std::abs(slope) * step < floor)
      {
        break;  // G is flat to round-off along steepest descent
      }
      throw ConvergenceError("line search failed in penalized descent", gnorm, it);
    }
    ev_new = evaluate(trial.u, trial.A, prob.anchor.u, prob.anchor.A, true);
    std::vector<double> g_new = space.chain(ev_new, trial);
    std::vector<double> s(dim), y(dim);
    for (std::size_t k = 0; k < dim; ++k)
    {
      s[k] = x_new[k] - x[k];
      y[k] = g_new[k] - gx[k];
    }
    const double sy = space.inner(s, y);
    if (sy > 1e-14 * std::sqrt(space.inner(s, s) * space.inner(y, y)))
    {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > kMemory)
      {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x.swap(x_new);
    state = std::move(trial);
    ev = std::move(ev_new);
    gx.swap(g_new);
    gnorm = std::sqrt(space.inner(gx, gx));
    prob.history.push_back({round, it, ev.G, ev.E, gnorm, step});
  }
  prob.current = state;
  return state;
}

SelectionReport selection_iterate(std::shared_ptr<const VortexSolution> base, const PairState &anchor,
                                  int N, const SelectionOptions &opts)
{
  if (N < 1)
  {
    throw InputError("selection needs N >= 1");
  }
  if (!base)
  {
    throw InputError("selection needs a base solution");
  }
  SelectionReport rep;
  rep.degree_anchor = degree(anchor.u, 0.8).degree;
  rep.energy_chain.push_back(energy_direct(anchor));
  PairState current = truncate_modulus(anchor);
  rep.energy_chain.push_back(energy_direct(current));
  for (int round = 0; round < N; ++round)
  {
    PenalizedProblem prob = make_problem(base, current);
    prob.tolerance = opts.tolerance;
    const std::size_t start = rep.log.size();
    current = minimize_penalized(prob, opts.max_iters);
    for (auto rec : prob.history)
    {
      rec.round = round;
      rep.log.push_back(rec);
    }
    for (std::size_t k = start + 1; k < rep.log.size(); ++k)
    {
      if (rep.log[k].G > rep.log[k - 1].G)
      {
        rep.monotone = false;
      }
    }
    rep.energy_chain.push_back(energy_direct(current));
  }
  rep.result = current;
  rep.degree_result = degree(current.u, 0.8).degree;

  const Grid &g = base->grid;
  ScalarField du(g), dF(g);
  const TwoForm Fa = d(anchor.A), Fr = d(current.A);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    const double a = anchor.u.re[k] - current.u.re[k], b = anchor.u.im[k] - current.u.im[k];
    du.values[k] = a * a + b * b;
    const double c = Fa.density[k] - Fr.density[k];
    dF.values[k] = c * c;
  }
  rep.dist_u_sq = integrate(du);
  rep.dist_F_sq = integrate(dF);
  rep.anchor_excess = rep.energy_chain.front() - 2.0 * std::numbers::pi * N;
  rep.distance_constant =
      rep.anchor_excess > 0.0 ? (rep.dist_u_sq + rep.dist_F_sq) / rep.anchor_excess : 0.0;

  const double beta = cover_vortex_set(*base).beta;
  rep.min_modulus_ratio = std::numeric_limits<double>::infinity();
  rep.max_modulus_ratio = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    if (base->r0.values[k] > beta)
    {
      const double ratio = std::hypot(current.u.re[k], current.u.im[k]) / base->r0.values[k];
      rep.min_modulus_ratio = std::min(rep.min_modulus_ratio, ratio);
      rep.max_modulus_ratio = std::max(rep.max_modulus_ratio, ratio);
    }
  }
  rep.hf_fraction_anchor = high_frequency_fraction(anchor.pert->h_prime.values, g.n(), 0.1);
  rep.hf_fraction_result = high_frequency_fraction(current.pert->h_prime.values, g.n(), 0.1);
  return rep;
}

nlohmann::json to_json(const SelectionReport &r)
{
  return {{"energy_chain", r.energy_chain},
          {"dist_u_sq", r.dist_u_sq},
          {"dist_F_sq", r.dist_F_sq},
          {"anchor_excess", r.anchor_excess},
          {"distance_constant", r.distance_constant},
          {"min_modulus_ratio", r.min_modulus_ratio},
          {"max_modulus_ratio", r.max_modulus_ratio},
          {"degree_anchor", r.degree_anchor},
          {"degree_result", r.degree_result},
          {"monotone", r.monotone},
          {"hf_fraction_anchor", r.hf_fraction_anchor},
          {"hf_fraction_result", r.hf_fraction_result},
          {"iterations", r.log.size()}};
}

}  // namespace vortexlab
