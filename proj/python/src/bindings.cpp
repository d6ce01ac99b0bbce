#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wlc/classical.hpp"
#include "wlc/coherence.hpp"
#include "wlc/graph_file.hpp"
#include "wlc/matmul.hpp"
#include "wlc/probabilistic.hpp"

namespace py = pybind11;
using namespace wlc;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

ColorMatrix::Renumber renumber_from(const std::string& name) {
  if (name == "first_occurrence") return ColorMatrix::Renumber::first_occurrence;
  if (name == "by_value") return ColorMatrix::Renumber::by_value;
  throw std::invalid_argument("renumber must be 'first_occurrence' or 'by_value'");
}

RunParams make_params(std::int64_t m, const std::string& policy, std::size_t k, double c, std::uint64_t seed,
                      const std::string& backend) {
  RunParams p;
  p.m = m;
  if (policy == "practical") {
    p.policy = StoppingPolicy::practical(k);
  } else if (policy == "theoretical") {
    p.policy = StoppingPolicy::theoretical(c);
  } else {
    throw std::invalid_argument("policy must be 'practical' or 'theoretical'");
  }
  p.seed = seed;
  p.backend = parse_backend(backend);
  return p;
}

IntMatrix to_int_matrix(const Rows& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  std::vector<std::int64_t> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged matrix");
    data.insert(data.end(), row.begin(), row.end());
  }
  return {r, c, std::move(data)};
}

Rows to_rows(const IntMatrix& m) {
  Rows out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent closures via exact and Monte Carlo Weisfeiler-Leman refinement";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<ColorMatrix>(m, "ColorMatrix")
      .def(py::init([](const Rows& rows, const std::string& renumber) {
             return ColorMatrix::validate(rows, renumber_from(renumber));
           }),
           py::arg("rows"), py::arg("renumber") = "first_occurrence")
      .def_property_readonly("n", &ColorMatrix::size)
      .def_property_readonly("r", &ColorMatrix::color_count)
      .def("to_list", &ColorMatrix::to_rows)
      .def("__getitem__", [](const ColorMatrix& x, std::pair<std::size_t, std::size_t> uv) { return x.at(uv.first, uv.second); })
      .def(py::self == py::self)
      .def("__repr__", [](const ColorMatrix& x) {
        return "<ColorMatrix n=" + std::to_string(x.size()) + " r=" + std::to_string(x.color_count()) + ">";
      });

  py::class_<RefinementOutcome>(m, "RefinementOutcome")
      .def_readonly("refined", &RefinementOutcome::refined)
      .def_readonly("result", &RefinementOutcome::result)
      .def_readonly("old_color", &RefinementOutcome::old_color);

  py::class_<WlResult>(m, "WlResult")
      .def_readonly("closure", &WlResult::closure)
      .def_readonly("iterations", &WlResult::iterations)
      .def_readonly("refining_iterations", &WlResult::refining_iterations)
      .def_readonly("trace", &WlResult::trace)
      .def_readonly("max_value", &WlResult::max_value)
      .def_property_readonly("stop_reason", [](const WlResult& r) { return std::string(stop_reason_name(r.stop_reason)); });

  py::class_<CoherenceReport>(m, "CoherenceReport")
      .def_readonly("coherent", &CoherenceReport::coherent)
      .def_property_readonly("witness", [](const CoherenceReport& r) -> std::optional<std::string> {
        if (!r.witness) return std::nullopt;
        return r.witness->describe();
      })
      .def("__bool__", [](const CoherenceReport& r) { return r.coherent; });

  py::class_<PairedResult>(m, "PairedResult")
      .def_readonly("first", &PairedResult::first)
      .def_readonly("second", &PairedResult::second)
      .def_readonly("first_histograms", &PairedResult::first_histograms)
      .def_readonly("second_histograms", &PairedResult::second_histograms)
      .def_readonly("diverged_at", &PairedResult::diverged_at)
      .def_readonly("mapping", &PairedResult::mapping);

  // graph model
  m.def("rainbow_refine", &rainbow_refine, py::arg("x"));
  m.def("is_rainbow", &is_rainbow, py::arg("x"));
  m.def("is_refinement", &is_refinement, py::arg("fine"), py::arg("coarse"));
  m.def("is_same_partition", &is_same_partition, py::arg("x"), py::arg("y"));
  m.def("is_discrete", &is_discrete, py::arg("x"));
  m.def(
      "refine_by",
      [](const ColorMatrix& x, const Rows& values) {
        std::vector<std::int64_t> flat;
        for (const auto& row : values) flat.insert(flat.end(), row.begin(), row.end());
        return refine_by(x, flat);
      },
      py::arg("x"), py::arg("values"));
  m.def(
      "permute_vertices",
      [](const ColorMatrix& x, const std::vector<std::size_t>& perm) { return permute_vertices(x, perm); },
      py::arg("x"), py::arg("perm"));

  // exact algorithm
  m.def("classical_step", &classical_step, py::arg("x"));
  m.def("classical_closure", [](const ColorMatrix& x) { return classical_closure(x); }, py::arg("x"));
  m.def("iteration_budget", &iteration_budget, py::arg("n"), py::arg("C"));

  // Monte Carlo algorithm
  m.def(
      "draw_substitution",
      [](std::size_t r, std::int64_t bound, std::uint64_t seed) {
        RandomStream rng(seed);
        auto sub = draw_substitution(r, bound, rng);
        return std::make_pair(sub.left, sub.right);
      },
      py::arg("r"), py::arg("m"), py::arg("seed"));
  m.def(
      "numeric_product",
      [](const ColorMatrix& x, std::vector<std::int64_t> left, std::vector<std::int64_t> right, std::int64_t bound) {
        const auto values = numeric_product(x, RandomSubstitution{bound, std::move(left), std::move(right)});
        return to_rows(IntMatrix(values.n, values.n, values.cells));
      },
      py::arg("x"), py::arg("left"), py::arg("right"), py::arg("m"));
  m.def(
      "probabilistic_closure",
      [](const ColorMatrix& x, std::int64_t bound, std::size_t k, const std::string& policy, double c,
         std::uint64_t seed, const std::string& backend) {
        return probabilistic_closure(x, make_params(bound, policy, k, c, seed, backend));
      },
      py::arg("x"), py::arg("m") = 1'000'000, py::arg("k") = 3, py::arg("policy") = "practical",
      py::arg("C") = 1.0, py::arg("seed") = 0, py::arg("backend") = "blocked");
  m.def(
      "check_coherent",
      [](const ColorMatrix& x, std::int64_t bound, std::size_t trials, std::uint64_t seed) {
        RandomStream rng(seed);
        return check_coherent(x, bound, trials, rng);
      },
      py::arg("x"), py::arg("m") = 1'000'000, py::arg("trials") = 1, py::arg("seed") = 0);
  m.def("error_bound", &error_bound, py::arg("n"), py::arg("m"), py::arg("C") = 1.0);
  m.def("practical_miss_bound", &practical_miss_bound, py::arg("m"), py::arg("k"));
  m.def(
      "paired_closure",
      [](const ColorMatrix& x, const ColorMatrix& y, std::int64_t bound, std::size_t k, std::uint64_t seed) {
        return paired_closure(x, y, make_params(bound, "practical", k, 1.0, seed, "blocked"));
      },
      py::arg("x"), py::arg("y"), py::arg("m") = 1'000'000, py::arg("k") = 3, py::arg("seed") = 0);
  m.def("is_isomorphism", &is_isomorphism, py::arg("x"), py::arg("y"), py::arg("mapping"));

  // coherence axioms and fixtures
  m.def("verify_coherent", &verify_coherent, py::arg("x"));
  m.def("make_fixture", py::overload_cast<std::string_view>(&make_fixture), py::arg("name"));

  // matmul
  m.def(
      "multiply",
      [](const Rows& a, const Rows& b, const std::string& backend) {
        return to_rows(multiply(to_int_matrix(a), to_int_matrix(b), parse_backend(backend)));
      },
      py::arg("a"), py::arg("b"), py::arg("backend") = "blocked");

  // files
  m.def(
      "read_graph",
      [](const std::string& text, const std::string& renumber) {
        std::istringstream in(text);
        return read_graph(in, renumber_from(renumber));
      },
      py::arg("text"), py::arg("renumber") = "first_occurrence");
  m.def(
      "write_graph",
      [](const ColorMatrix& x) {
        std::ostringstream out;
        write_graph(out, x);
        return out.str();
      },
      py::arg("x"));
}
