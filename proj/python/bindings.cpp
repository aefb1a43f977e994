// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>
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

namespace py = pybind11;
using namespace vortexlab;

namespace
{

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
// pybind11 holders cannot be const-qualified; the library takes shared_ptr<const T>.
using SolutionPtr = std::shared_ptr<VortexSolution>;

Array to_array(const std::vector<double> &v, int n)
{
  Array out({n, n});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> from_array(const Array &a, const Grid &g, const char *what)
{
  if (a.ndim() != 2 || a.shape(0) != g.n() || a.shape(1) != g.n())
  {
    throw InputError(std::string(what) + " must have shape (n, n)");
  }
  return {a.data(), a.data() + a.size()};
}

ScalarField scalar(const Array &a, const Grid &g)
{
  ScalarField f(g);
  f.values = from_array(a, g, "scalar field");
  return f;
}

OneForm one_form(const Array &a1, const Array &a2, const Grid &g)
{
  OneForm f(g);
  f.a1 = from_array(a1, g, "a1");
  f.a2 = from_array(a2, g, "a2");
  return f;
}

std::vector<Point> points(const std::vector<std::pair<double, double>> &pts)
{
  std::vector<Point> out;
  for (const auto &[x, y] : pts)
  {
    out.push_back({x, y});
  }
  return out;
}

// JSON values cross the boundary as text; the Python package decodes them.
std::string dump(const nlohmann::json &j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Vortex minimizer numerics";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
  py::register_exception<FieldIoError>(m, "FieldIoError", PyExc_IOError);

  py::class_<Grid>(m, "Grid")
      .def(py::init(&build_grid), py::arg("n"), py::arg("half_width"))
      .def_property_readonly("n", &Grid::n)
      .def_property_readonly("half_width", &Grid::half_width)
      .def_property_readonly("spacing", &Grid::spacing)
      .def("coord", &Grid::coord);

  py::class_<VortexSolution, SolutionPtr>(m, "VortexSolution")
      .def_property_readonly("energy", [](const VortexSolution &s) { return s.energy; })
      .def_property_readonly("residual_sup", [](const VortexSolution &s) { return s.residual_sup; })
      .def_property_readonly("iterations", [](const VortexSolution &s) { return s.iterations; })
      .def_property_readonly("degree", &VortexSolution::degree)
      .def_property_readonly("grid", [](const VortexSolution &s) { return s.grid; })
      .def_property_readonly("zeros",
                             [](const VortexSolution &s) {
                               std::vector<std::pair<double, double>> z;
                               for (const auto &p : s.zeros)
                               {
                                 z.emplace_back(p.x, p.y);
                               }
                               return z;
                             })
      .def_property_readonly("r0", [](const VortexSolution &s) { return to_array(s.r0.values, s.grid.n()); })
      .def_property_readonly("h_reg",
                             [](const VortexSolution &s) { return to_array(s.h_reg.values, s.grid.n()); })
      .def_property_readonly("A0", [](const VortexSolution &s) {
        return py::make_tuple(to_array(s.A0.a1, s.grid.n()), to_array(s.A0.a2, s.grid.n()));
      });

  m.def(
      "solve_taubes",
      [](const std::string &zeros, int n, double half_width, double tol) -> SolutionPtr {
        TaubesOptions opts;
        opts.tol = tol;
        py::gil_scoped_release release;
        return std::make_shared<VortexSolution>(
            solve_taubes(parse_zero_list(zeros), build_grid(n, half_width), opts));
      },
      py::arg("zeros"), py::arg("n") = 257, py::arg("half_width") = 12.0, py::arg("tol") = 1e-10,
      "Solve for the minimizer with zeros given as \"x,y;x,y\".");

  m.def("taubes_residual", [](const VortexSolution &s) { return taubes_residual(s); });
  m.def("save_solution", [](const VortexSolution &s, const std::string &dir) { save_solution(s, dir); });
  m.def("load_solution",
        [](const std::string &dir) -> SolutionPtr { return std::make_shared<VortexSolution>(load_solution(dir)); });
  m.def("verify_solution_dir", [](const std::string &dir) {
    auto c = verify_solution_dir(dir);
    return py::make_tuple(c.ok, c.problems);
  });

  m.def(
      "radial_profile",
      [](double rho_max, int steps) {
        auto p = radial_profile_oracle(rho_max, steps);
        return py::make_tuple(p.rho, p.f, p.slope_at_origin);
      },
      py::arg("rho_max") = 16.0, py::arg("steps") = 4000,
      "Radial single-vortex profile by shooting: (rho, f, slope at the origin).");

  m.def(
      "bump_discrepancy",
      [](SolutionPtr base, std::pair<double, double> center, double radius, double amplitude,
         std::pair<double, double> b_direction) {
        auto p = make_bump_perturbation(base, {center.first, center.second}, radius, amplitude,
                                        {b_direction.first, b_direction.second});
        auto s = apply_perturbation(p);
        auto rep = discrepancy_perturbative(*base, p.h_prime, p.B);
        auto j = to_json(rep);
        j["energy"] = energy_direct(s);
        auto dist = l2_distance(s, *base);
        j["dist_u_sq"] = dist.dist_u_sq;
        j["dist_F_sq"] = dist.dist_F_sq;
        return dump(j);
      },
      py::arg("base"), py::arg("center"), py::arg("radius"), py::arg("amplitude"),
      py::arg("b_direction") = std::pair<double, double>{0.0, 0.0});

  m.def(
      "discrepancy",
      [](SolutionPtr base, const Array &h_prime, const Array &b1, const Array &b2) {
        return dump(to_json(discrepancy_perturbative(*base, scalar(h_prime, base->grid),
                                                     one_form(b1, b2, base->grid))));
      },
      py::arg("base"), py::arg("h_prime"), py::arg("b1"), py::arg("b2"));

  m.def(
      "stability_sweep",
      [](SolutionPtr base, const std::vector<double> &t_list, const std::vector<double> &eps_list) {
        auto rows = stability_sweep(reference_bump(base), t_list, eps_list);
        auto t = sweep_table(rows, eps_list);
        return py::make_tuple(t.columns, t.rows);
      },
      py::arg("base"), py::arg("t_list"), py::arg("eps_list"));

  m.def(
      "sharpness",
      [](SolutionPtr base, const std::vector<double> &radii, double amplitude) {
        if (radii.empty())
        {
          throw InputError("radii must not be empty");
        }
        double rmax = *std::max_element(radii.begin(), radii.end());
        auto rows = sharpness_sweep(base, sharpness_center(*base, rmax), radii, amplitude);
        auto t = sharpness_table(rows);
        return py::make_tuple(t.columns, t.rows);
      },
      py::arg("base"), py::arg("radii"), py::arg("amplitude") = 1.0);

  m.def(
      "hardy_gap",
      [](const Grid &g, const std::vector<std::pair<double, double>> &centers,
         const std::vector<double> &exponents, const Array &f) {
        auto gap = hardy_gap(VortexWeight(points(centers), exponents), scalar(f, g));
        return py::make_tuple(gap.lhs, gap.rhs);
      },
      py::arg("grid"), py::arg("centers"), py::arg("exponents"), py::arg("f"));

  m.def(
      "hodge_decompose",
      [](const Grid &g, const std::vector<std::pair<double, double>> &centers, const Array &b1,
         const Array &b2, double tol) {
        auto parts = hodge_decompose(one_form(b1, b2, g), VortexWeight::unit(points(centers)), tol);
        py::dict d;
        d["v"] = to_array(parts.v.values, g.n());
        d["f"] = to_array(parts.f.values, g.n());
        d["p"] = to_array(parts.p.values, g.n());
        d["q"] = to_array(parts.q.values, g.n());
        d["weighted_residual"] = parts.weighted_residual;
        d["standard_residual"] = parts.standard_residual;
        return d;
      },
      py::arg("grid"), py::arg("centers"), py::arg("b1"), py::arg("b2"), py::arg("tol") = 1e-8);

  m.def(
      "hodge_gap",
      [](const Grid &g, const std::vector<std::pair<double, double>> &centers, const Array &b1,
         const Array &b2, double eps, double tol) {
        auto w = VortexWeight::unit(points(centers));
        auto gap = hodge_gap_check(hodge_decompose(one_form(b1, b2, g), w, tol), w, eps);
        return py::make_tuple(gap.lhs, gap.rhs, gap.constant);
      },
      py::arg("grid"), py::arg("centers"), py::arg("b1"), py::arg("b2"), py::arg("eps"),
      py::arg("tol") = 1e-8);

  m.def("cover_vortex_set", [](const VortexSolution &s) {
    auto c = cover_vortex_set(s);
    auto j = to_json(c);
    auto check = check_cover(c, s);
    j["check"] = {{"covers", check.covers},
                  {"disjoint_doubles", check.disjoint_doubles},
                  {"radii_at_least_one", check.radii_at_least_one},
                  {"comparable", check.comparable}};
    return dump(j);
  });

  m.def(
      "selection_run",
      [](SolutionPtr base, double amplitude, std::uint64_t seed, int max_iters) {
        py::gil_scoped_release release;
        auto anchor = apply_perturbation(
            make_random_perturbation(base, seed, amplitude, 4.0 * base->grid.spacing()));
        SelectionOptions opts;
        opts.max_iters = max_iters;
        auto rep = selection_iterate(base, anchor, base->degree(), opts);
        auto j = to_json(rep);
        j["criterion"] = to_json(check_selection(rep, base->degree()));
        return dump(j);
      },
      py::arg("base"), py::arg("amplitude") = 0.3, py::arg("seed") = 31, py::arg("max_iters") = 1000);

  m.def(
      "gradient_check",
      [](SolutionPtr base, double amplitude, std::uint64_t seed, int directions) {
        auto anchor = apply_perturbation(
            make_random_perturbation(base, seed, amplitude, 4.0 * base->grid.spacing()));
        auto prob = make_problem(base, anchor);
        prob.current = base_pair(*base);
        return check_gradient(prob, seed + 60, directions).max_rel_error;
      },
      py::arg("base"), py::arg("amplitude") = 0.3, py::arg("seed") = 31, py::arg("directions") = 10);

  m.def(
      "comparable_polynomial",
      [](const std::vector<Complex> &roots, std::function<Complex(Complex)> R, int order,
         double admissibility) {
        auto P = ComplexPoly::from_roots(roots);
        auto sampled = make_perturbation(std::move(R), order);
        return dump(to_json(P, comparable_polynomial(P, sampled, admissibility), sampled.cn_norm));
      },
      py::arg("roots"), py::arg("R"), py::arg("order"), py::arg("admissibility") = 1e-3,
      "Roots of P, a callable R on the unit disc and the C^N order; returns the JSON report.");

  m.def(
      "find_zero",
      [](const std::vector<Complex> &roots, std::function<Complex(Complex)> R, int order) {
        return find_zero(ComplexPoly::from_roots(roots), make_perturbation(std::move(R), order));
      },
      py::arg("roots"), py::arg("R"), py::arg("order"));

  m.def(
      "poly_suite",
      [](int max_degree, int seeds, double cn) {
        auto t = poly_table(poly_suite(max_degree, seeds, cn));
        return py::make_tuple(t.columns, t.rows);
      },
      py::arg("max_degree") = 5, py::arg("seeds") = 5, py::arg("cn") = 1e-3);

  m.def("config_hash", [](const std::string &config_json) {
    return config_hash(nlohmann::json::parse(config_json));
  });
}
