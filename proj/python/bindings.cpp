#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fudist/chsh.hpp"
#include "fudist/errors.hpp"
#include "fudist/fu.hpp"
#include "fudist/optimizer.hpp"
#include "fudist/state_io.hpp"
#include "fudist/states.hpp"

namespace py = pybind11;
using namespace fudist;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const ComplexArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(rows, cols, std::vector<Complex>(a.data(), a.data() + rows * cols));
}

ComplexArray to_array(const ComplexMatrix& m) {
  ComplexArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

py::object report_dict(const FuReport& r) {
  py::dict d;
  d["d_max"] = r.d_value;
  d["source"] = std::string(to_string(r.closed_form_source));
  d["bound_classical"] = r.bounds.classical_cc;
  d["bound_purity"] = r.bounds.purity;
  if (r.witness) {
    d["witness"] = to_array(r.witness->u);
    d["cyclicity_residual"] = r.witness->cyclicity_residual;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_fudist, m) {
  m.doc() = "Fu distance and local cyclic unitaries for bipartite density matrices";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<BipartiteState>(m, "State")
      .def(py::init([](const ComplexArray& rho, std::size_t dim_a, std::size_t dim_b) {
             return BipartiteState(to_matrix(rho), dim_a, dim_b);
           }),
           py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"))
      .def_property_readonly("rho", [](const BipartiteState& s) { return to_array(s.rho()); })
      .def_property_readonly("dim_a", &BipartiteState::dim_a)
      .def_property_readonly("dim_b", &BipartiteState::dim_b)
      .def_property_readonly("purity", &BipartiteState::purity)
      .def("reduced_a", [](const BipartiteState& s) { return to_array(s.reduced_a()); })
      .def("reduced_b", [](const BipartiteState& s) { return to_array(s.reduced_b()); })
      .def("__repr__", [](const BipartiteState& s) {
        return "State(" + std::to_string(s.dim_a()) + "x" + std::to_string(s.dim_b()) + ")";
      });

  m.def("pure_from_schmidt", [](const std::vector<double>& c, std::size_t a, std::size_t b) {
    return pure_from_schmidt(c, a, b);
  });
  m.def("pseudopure", &pseudopure, py::arg("sigma"), py::arg("epsilon"));
  m.def("werner", &werner, py::arg("d"), py::arg("p"));
  m.def("horodecki_rho_a", &horodecki_rho_a, py::arg("a"));
  m.def("horodecki_rho_alpha", &horodecki_rho_alpha, py::arg("alpha"));
  m.def("upb_tiles_state", &upb_tiles_state);
  m.def("mix_with_white_noise", &mix_with_white_noise, py::arg("state"), py::arg("t"));
  m.def("apply_local_unitaries", [](const BipartiteState& s, const ComplexArray& ua, const ComplexArray& ub) {
    return apply_local_unitaries(s, to_matrix(ua), to_matrix(ub));
  });
  m.def("load_state", &load_state, py::arg("path"));
  m.def("save_state", &save_state, py::arg("state"), py::arg("path"));

  m.def("fu_distance", [](const BipartiteState& s, const ComplexArray& u) { return fu_distance(s, to_matrix(u)); },
        py::arg("state"), py::arg("u"));
  m.def("cyclicity_residual",
        [](const BipartiteState& s, const ComplexArray& u) { return cyclicity_residual(s, to_matrix(u)); });
  m.def("closed_form", [](const BipartiteState& s) -> py::object {
    const auto r = closed_form_for_state(s);
    return r ? report_dict(*r) : py::none();
  });
  m.def("dmax_pseudopure", [](const std::vector<double>& c, double eps, std::size_t a, std::size_t b) {
    return report_dict(dmax_pseudopure(c, eps, a, b));
  });
  m.def("dmax_werner", [](std::size_t d, double p) { return report_dict(dmax_werner(d, p)); });
  m.def("dmax_horodecki_a", [](double a) { return report_dict(dmax_horodecki_a(a)); });
  m.def("horodecki_alpha_distance", &horodecki_alpha_distance_value, py::arg("alpha"));
  m.def("horodecki_alpha_bound", &horodecki_alpha_bound, py::arg("alpha"));
  m.def("bound_classical", &bound_classical, py::arg("m"), py::arg("n"));
  m.def("bound_purity", py::overload_cast<const BipartiteState&>(&bound_purity), py::arg("state"));

  m.def(
      "maximize_fu",
      [](const BipartiteState& s, int restarts, std::uint64_t seed, int max_iterations, int threads) {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.max_iterations = max_iterations;
        cfg.threads = threads;
        OptimizationResult r;
        {
          py::gil_scoped_release release;
          r = maximize_fu(s, cfg);
        }
        py::dict d;
        d["d_max"] = r.d_estimate;
        d["unitary"] = to_array(r.best_unitary.u);
        d["cyclicity_residual"] = r.best_unitary.cyclicity_residual;
        d["restart_values"] = r.restart_values;
        return d;
      },
      py::arg("state"), py::arg("restarts") = 32, py::arg("seed") = 0, py::arg("max_iterations") = 2000,
      py::arg("threads") = 1);

  m.def("horodecki_m", [](const BipartiteState& s) {
    const auto r = horodecki_m(fano_decompose(s));
    py::dict d;
    d["m"] = r.m_value;
    d["violates"] = r.violates;
    d["tau"] = py::make_tuple(r.tau.first, r.tau.second);
    return d;
  });
}
