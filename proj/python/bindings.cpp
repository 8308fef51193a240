#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "safesets/invariant.hpp"
#include "safesets/scenario.hpp"
#include "safesets/version.hpp"

namespace py = pybind11;
using namespace safesets;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("matrix rows must be non-empty");
  }
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw std::invalid_argument("ragged matrix rows");
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Rows from_matrix(const Matrix& m) {
  Rows rows(m.rows(), std::vector<double>(m.cols(), 0.0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

DiscreteLTI make_discrete(const Rows& a, const Rows& b, double dt) {
  return DiscreteLTI(to_matrix(a), to_matrix(b), dt);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Invariant-set safety supervisor toolkit";
  m.attr("__version__") = kVersion;

  py::class_<HPolytope>(m, "Polytope")
      .def(py::init([](const Rows& h, const Vector& offsets) {
             return HPolytope(to_matrix(h), offsets);
           }),
           py::arg("h"), py::arg("offsets"))
      .def_property_readonly("dim", &HPolytope::dim)
      .def_property_readonly("num_rows", &HPolytope::num_rows)
      .def_property_readonly("h", [](const HPolytope& p) { return from_matrix(p.h_matrix()); })
      .def_property_readonly("offsets", [](const HPolytope& p) { return p.h_vector(); })
      .def("contains",
           [](const HPolytope& p, const Vector& x) { return p.contains(x); },
           py::arg("x"))
      .def("is_empty", &HPolytope::is_empty)
      .def("normalized", &HPolytope::normalized)
      .def("__repr__", [](const HPolytope& p) {
        return "Polytope(dim=" + std::to_string(p.dim()) +
               ", rows=" + std::to_string(p.num_rows()) + ")";
      });

  m.def("box", [](const std::vector<std::array<double, 2>>& bounds) {
    return HPolytope::box(bounds);
  });
  m.def("intersect", &intersect);
  m.def("remove_redundancy", &remove_redundancy);
  m.def("pre_set",
        [](const HPolytope& p, const Rows& a) { return pre_set(p, to_matrix(a)); });
  m.def("is_subset", &is_subset);
  m.def("scale", &scale, py::arg("p"), py::arg("alpha"));
  m.def("vertices_2d", &vertices_2d);
  m.def("read_poly", [](const std::string& path) { return read_poly_file(path); });
  m.def("write_poly",
        [](const std::string& path, const HPolytope& p) { write_poly_file(path, p); });

  m.def("mat_mul",
        [](const Rows& a, const Rows& b) { return from_matrix(to_matrix(a) * to_matrix(b)); });
  m.def("char_poly_coeffs",
        [](const Rows& a) { return char_poly_coeffs(to_matrix(a)); });
  m.def(
      "euler_discretize",
      [](const Rows& a, const Rows& b, double dt) {
        const DiscreteLTI d = euler_discretize(ContinuousLTI(to_matrix(a), to_matrix(b)), dt);
        return py::make_tuple(from_matrix(d.a), from_matrix(d.b));
      },
      py::arg("a"), py::arg("b"), py::arg("dt"));
  m.def(
      "place_poles",
      [](const Rows& a, const Rows& b, double dt, const std::vector<double>& poles) {
        return place_poles(make_discrete(a, b, dt), poles).k.row(0);
      },
      py::arg("a"), py::arg("b"), py::arg("dt"), py::arg("poles"));
  m.def(
      "closed_loop",
      [](const Rows& a, const Rows& b, double dt, const std::vector<double>& k_row) {
        Matrix k(1, k_row.size());
        for (std::size_t j = 0; j < k_row.size(); ++j) k(0, j) = k_row[j];
        return from_matrix(closed_loop(make_discrete(a, b, dt), FeedbackGain{k}).a);
      },
      py::arg("a"), py::arg("b"), py::arg("dt"), py::arg("k"));
  m.def("is_stable", [](const Rows& a) { return is_stable(to_matrix(a)); });

  m.def(
      "compute_max_invariant",
      [](const HPolytope& x_set, const Rows& a_cl, long max_iter) {
        const InvariantResult r = compute_max_invariant(x_set, to_matrix(a_cl), max_iter);
        return py::make_tuple(r.o_inf, r.iterations, r.converged);
      },
      py::arg("x_set"), py::arg("a_cl"), py::arg("max_iter") = 500);
  m.def(
      "one_step_safe",
      [](const HPolytope& candidate, const HPolytope& o_inf, const Rows& a,
         const Rows& b, double dt, double u_max) {
        auto [ok, margins] = one_step_safe(candidate, o_inf, make_discrete(a, b, dt), u_max);
        return py::make_tuple(ok, margins);
      },
      py::arg("candidate"), py::arg("o_inf"), py::arg("a"), py::arg("b"),
      py::arg("dt"), py::arg("u_max"));
  m.def(
      "attenuate",
      [](const HPolytope& o_inf, const Rows& a, const Rows& b, double dt, double u_max) {
        const AttenuationResult r = attenuate(o_inf, make_discrete(a, b, dt), u_max);
        return py::make_tuple(r.s_inf, r.alpha, r.facet_margins);
      },
      py::arg("o_inf"), py::arg("a"), py::arg("b"), py::arg("dt"), py::arg("u_max"));

  m.def(
      "classify",
      [](const HPolytope& s_inf, const HPolytope& o_inf, const Vector& x) -> std::string {
        if (s_inf.contains(x)) return "Safe";
        if (o_inf.contains(x)) return "GrayZone";
        return "Unrecoverable";
      },
      py::arg("s_inf"), py::arg("o_inf"), py::arg("x"));

  py::class_<TraceSample>(m, "TraceSample")
      .def_readonly("time", &TraceSample::time)
      .def_readonly("state", &TraceSample::state)
      .def_readonly("u_student", &TraceSample::u_student)
      .def_readonly("u_applied", &TraceSample::u_applied)
      .def_property_readonly("mode",
                             [](const TraceSample& s) { return std::string(to_string(s.mode)); })
      .def_readonly("flags", &TraceSample::flags);

  m.def(
      "run_scenario_file",
      [](const std::string& path) {
        const LoadedScenario loaded = load_scenario_file(path);
        return run_scenario(loaded.scenario, loaded.supervisor);
      },
      py::arg("path"));
  m.def(
      "trace_csv",
      [](const std::vector<TraceSample>& trace) { return trace_csv_string(trace); },
      py::arg("trace"));
}
