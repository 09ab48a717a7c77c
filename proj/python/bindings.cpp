#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "c3bound/bound.hpp"
#include "c3bound/errors.hpp"
#include "c3bound/graph.hpp"
#include "c3bound/model.hpp"
#include "c3bound/solver.hpp"
#include "c3bound/spread.hpp"

namespace py = pybind11;
using namespace c3bound;

namespace {

Colouring as_colouring(const std::vector<int>& types) {
  Colouring col;
  col.types.reserve(types.size());
  for (int t : types) {
    if (t < 0 || t > 2) throw ParameterError("colour types must be 0, 1 or 2");
    col.types.push_back(static_cast<std::uint8_t>(t));
  }
  return col;
}

std::vector<int> as_ints(const Colouring& col) {
  return std::vector<int>(col.types.begin(), col.types.end());
}

SolverConfig make_config(double tol_residual, const std::string& scheme,
                         bool unit_total_spread, bool cross_check,
                         bool verify_monotonicity) {
  SolverConfig cfg;
  cfg.tol_residual = tol_residual;
  if (scheme == "nested")
    cfg.scheme = SolveScheme::nested_bisection;
  else if (scheme == "spiral")
    cfg.scheme = SolveScheme::spiral;
  else
    throw ParameterError("scheme must be 'nested' or 'spiral'");
  cfg.unit_total_spread = unit_total_spread;
  cfg.cross_check = cross_check;
  cfg.verify_monotonicity = verify_monotonicity;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "first-moment bounds on 3-colourability of sparse random multigraphs";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);
  py::register_exception<MonotonicityError>(m, "MonotonicityError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double c, int x_max, double epsilon) {
             return ModelParams::make(c, x_max, epsilon);
           }),
           py::arg("c"), py::arg("x_max") = kDefaultXMax,
           py::arg("epsilon") = 0.05)
      .def_readonly("c", &ModelParams::c)
      .def_readonly("mean_degree", &ModelParams::lambda)
      .def_readonly("x_max", &ModelParams::x_max)
      .def_readonly("epsilon", &ModelParams::epsilon)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(c=" + std::to_string(p.c) +
               ", x_max=" + std::to_string(p.x_max) +
               ", epsilon=" + std::to_string(p.epsilon) + ")";
      });

  py::class_<PoissonProfile>(m, "PoissonProfile")
      .def_readonly("mean_degree", &PoissonProfile::lambda)
      .def_readonly("weights", &PoissonProfile::weights)
      .def_readonly("u_trunc", &PoissonProfile::u_trunc)
      .def_property_readonly("x_max", &PoissonProfile::x_max);

  py::class_<SpreadVector>(m, "SpreadVector")
      .def(py::init<double, double, double>(), py::arg("phi0"), py::arg("phi1"),
           py::arg("phi2"))
      .def_static("from_free", &SpreadVector::from_free, py::arg("phi0"),
                  py::arg("phi1"), py::arg("total"))
      .def_readonly("phi0", &SpreadVector::phi0)
      .def_readonly("phi1", &SpreadVector::phi1)
      .def_readonly("phi2", &SpreadVector::phi2)
      .def("__getitem__",
           [](const SpreadVector& v, int i) {
             if (i < 0 || i > 2) throw py::index_error();
             return v[i];
           })
      .def("__repr__", [](const SpreadVector& v) {
        return "SpreadVector(" + std::to_string(v.phi0) + ", " +
               std::to_string(v.phi1) + ", " + std::to_string(v.phi2) + ")";
      });

  py::class_<OccupancyProfile>(m, "OccupancyProfile")
      .def_property_readonly("x_max", &OccupancyProfile::x_max)
      .def("alpha", &OccupancyProfile::alpha, py::arg("x"))
      .def("mu", &OccupancyProfile::mu, py::arg("x"), py::arg("j"),
           py::arg("type"));

  py::class_<PhiSolution>(m, "PhiSolution")
      .def_readonly("phi", &PhiSolution::phi)
      .def_readonly("residual_norm", &PhiSolution::residual_norm)
      .def_readonly("iterations", &PhiSolution::iterations)
      .def_readonly("c", &PhiSolution::c);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("c", &BoundReport::c)
      .def_readonly("phi", &BoundReport::phi)
      .def_readonly("f_value", &BoundReport::f_value)
      .def_readonly("log_f", &BoundReport::log_f)
      .def_readonly("x_max", &BoundReport::x_max);

  py::class_<ThresholdResult>(m, "ThresholdResult")
      .def_readonly("c_star", &ThresholdResult::c_star)
      .def_readonly("bracket_lo", &ThresholdResult::bracket_lo)
      .def_readonly("bracket_hi", &ThresholdResult::bracket_hi)
      .def_readonly("iterations", &ThresholdResult::iterations);

  py::class_<MultiGraph>(m, "MultiGraph")
      .def(py::init([](int n, std::vector<std::pair<int, int>> edges) {
             MultiGraph g;
             g.n = n;
             g.edges = std::move(edges);
             g.degrees();  // validates endpoint ranges
             return g;
           }),
           py::arg("n"), py::arg("edges") = std::vector<std::pair<int, int>>{})
      .def_readonly("n", &MultiGraph::n)
      .def_readonly("edges", &MultiGraph::edges)
      .def_property_readonly("m", &MultiGraph::m)
      .def("degrees", &MultiGraph::degrees);

  py::class_<DegreeProfileEmpirical>(m, "DegreeProfileEmpirical")
      .def_readonly("fractions", &DegreeProfileEmpirical::fractions)
      .def_readonly("tail_fraction", &DegreeProfileEmpirical::tail_fraction);

  py::class_<McResult>(m, "McResult")
      .def_readonly("estimate", &McResult::estimate)
      .def_readonly("stderr", &McResult::stderr_)
      .def_readonly("samples", &McResult::samples)
      .def_readonly("subspace_fraction", &McResult::subspace_fraction);

  m.def("poisson_pmf", &poisson_pmf, py::arg("x"), py::arg("mean_degree"));
  m.def("build_profile", &build_profile, py::arg("params"));
  m.def("large_deviation_rate", &large_deviation_rate, py::arg("xi"),
        py::arg("eta"));

  m.def("pattern_count", &pattern_count, py::arg("x"), py::arg("type"));
  m.def("log_pattern_count", &log_pattern_count, py::arg("x"), py::arg("type"));
  m.def("type_normalizer", &type_normalizer, py::arg("x"), py::arg("phi"));
  m.def("type_fraction", &type_fraction, py::arg("x"), py::arg("type"),
        py::arg("phi"));
  m.def("occupancy", &occupancy, py::arg("x"), py::arg("j"), py::arg("type"),
        py::arg("phi"));
  m.def("build_occupancy_profile", &build_occupancy_profile, py::arg("phi"),
        py::arg("params"));
  m.def("admissible", &admissible, py::arg("phi"));
  m.def(
      "system_residual",
      [](double phi0, double phi1, const ModelParams& params) {
        const auto prof = build_profile(params);
        const auto e = system_residual(phi0, phi1, params, prof);
        return std::pair<double, double>{e.e0, e.e1};
      },
      py::arg("phi0"), py::arg("phi1"), py::arg("params"));
  m.def(
      "rotated_residual",
      [](double y0, double y1, const ModelParams& params) {
        const auto prof = build_profile(params);
        const auto k = rotated_residual({y0, y1}, params, prof);
        return std::pair<double, double>{k.k0, k.k1};
      },
      py::arg("y0"), py::arg("y1"), py::arg("params"));

  m.def(
      "solve_system",
      [](const ModelParams& params, double tol_residual, const std::string& scheme,
         bool unit_total_spread, bool cross_check, bool verify_monotonicity) {
        return solve_system(params,
                            make_config(tol_residual, scheme, unit_total_spread,
                                        cross_check, verify_monotonicity));
      },
      py::arg("params"), py::arg("tol_residual") = 1e-13,
      py::arg("scheme") = "nested", py::arg("unit_total_spread") = false,
      py::arg("cross_check") = true, py::arg("verify_monotonicity") = true);

  m.def(
      "log_bound",
      [](const SpreadVector& phi, const ModelParams& params) {
        return log_bound(phi, params, build_profile(params));
      },
      py::arg("phi"), py::arg("params"));
  m.def("bound_per_vertex", &bound_per_vertex, py::arg("params"), py::arg("solution"));
  m.def(
      "bound", [](double c, int x_max) { return bound_at(c, x_max); },
      py::arg("c"), py::arg("x_max") = kDefaultXMax);
  m.def("threshold_search", &threshold_search, py::arg("x_max") = kDefaultXMax,
        py::arg("tol_c") = 1e-4);
  m.def("scan", &scan, py::arg("c_lo"), py::arg("c_hi"), py::arg("steps"),
        py::arg("x_max") = kDefaultXMax);

  m.def("derive_stream_seed", &derive_stream_seed, py::arg("seed"),
        py::arg("stream"));
  m.def("sample_graph", &sample_graph, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("degree_profile", &degree_profile, py::arg("graph"), py::arg("x_max"));
  m.def(
      "in_subspace",
      [](const MultiGraph& g, const ModelParams& params) {
        return in_subspace(g, params);
      },
      py::arg("graph"), py::arg("params"));
  m.def(
      "is_proper",
      [](const MultiGraph& g, const std::vector<int>& types) {
        return is_proper(g, as_colouring(types));
      },
      py::arg("graph"), py::arg("types"));
  m.def(
      "is_rigid",
      [](const MultiGraph& g, const std::vector<int>& types) {
        return is_rigid(g, as_colouring(types));
      },
      py::arg("graph"), py::arg("types"));
  m.def("count_proper", &count_proper, py::arg("graph"));
  m.def("count_rigid", &count_rigid, py::arg("graph"));
  m.def(
      "repair_to_rigid",
      [](const MultiGraph& g, const std::vector<int>& types) {
        return as_ints(repair_to_rigid(g, as_colouring(types)));
      },
      py::arg("graph"), py::arg("types"));
  m.def("mc_first_moment", &mc_first_moment, py::arg("n"), py::arg("m"),
        py::arg("params"), py::arg("samples"), py::arg("seed"));
  m.def("read_graph_file", &read_graph_file, py::arg("path"));
  m.def("write_graph_file", &write_graph_file, py::arg("path"), py::arg("graph"));
}
