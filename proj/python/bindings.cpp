#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unfold/case_studies.hpp"
#include "unfold/collections.hpp"
#include "unfold/dsl/demo.hpp"
#include "unfold/dsl/desugar.hpp"
#include "unfold/dsl/parser.hpp"
#include "unfold/dsl/render.hpp"
#include "unfold/dsl/runner.hpp"
#include "unfold/graph_ops.hpp"

namespace py = pybind11;
using namespace unfold;

namespace {

std::vector<Value> ints(const std::vector<long long>& xs) {
  std::vector<Value> out;
  out.reserve(xs.size());
  for (long long x : xs) out.push_back(Value::integer(x));
  return out;
}

std::vector<long long> lls(const std::vector<Value>& xs) {
  std::vector<long long> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.as_int().convert_to<long long>());
  return out;
}

long long ll(const Value& v) { return v.as_int().convert_to<long long>(); }

using Edges = std::vector<std::pair<long long, long long>>;

py::tuple graph_tuple(const GraphModel& g) {
  std::vector<long long> dom = lls({g.dom().items().begin(), g.dom().items().end()});
  Edges edges;
  for (long long v : dom)
    for (const auto& w : g.suc(Value::integer(v)).items()) edges.emplace_back(v, ll(w));
  return py::make_tuple(dom, edges);
}

dsl::Report check(const std::string& source, std::uint64_t seed) {
  const dsl::Scenario s = dsl::parse_scenario(source);
  dsl::desugar_scenario(s);
  dsl::RunOptions options;
  options.seed = seed;
  return dsl::run_scenario(s, options);
}

}  // namespace

PYBIND11_MODULE(_unfold, m) {
  m.doc() = "Checked higher-order iteration: scenario runner and case studies";

  auto dsl_error = py::register_exception<dsl::DslError>(m, "DslError", PyExc_ValueError);
  py::register_exception<dsl::ParseError>(m, "ParseError", dsl_error.ptr());
  py::register_exception<dsl::SemanticError>(m, "SemanticError", dsl_error.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

  m.def(
      "check_json",
      [](const std::string& source, std::uint64_t seed) {
        const dsl::Report r = check(source, seed);
        return py::make_tuple(dsl::format_json(r), r.exit_code());
      },
      py::arg("source"), py::arg("seed") = 0,
      "Run a scenario; returns (JSON report, exit code).");
  m.def(
      "demo_json",
      [] {
        const dsl::Report r = dsl::run_demo();
        return py::make_tuple(dsl::format_json(r), r.exit_code());
      },
      "Run the built-in case studies; returns (JSON report, exit code).");
  m.def(
      "desugar",
      [](const std::string& source) {
        return dsl::desugar_scenario(dsl::parse_scenario(source));
      },
      py::arg("source"));
  m.def(
      "normalize_term", [](const std::string& text) { return dsl::render_term(dsl::parse_term(text)); },
      py::arg("text"), "Parse a term and render it back in canonical form.");

  m.def("sum_seq", [](const std::vector<long long>& s) { return ll(sum_seq(ints(s))); });
  m.def("stack_of_seq",
        [](const std::vector<long long>& s) { return lls(stack_of_seq(ints(s)).sequence_view()); });
  m.def("queue_of_seq",
        [](const std::vector<long long>& s) { return lls(queue_of_seq(ints(s)).sequence_view()); });
  m.def("check_path",
        [](const std::vector<long long>& vertices, const Edges& edges,
           const std::vector<long long>& path) {
          return check_path(make_graph(vertices, edges), ints(path));
        },
        py::arg("vertices"), py::arg("edges"), py::arg("path"));
  m.def("graph_union",
        [](const std::vector<long long>& v1, const Edges& e1, const std::vector<long long>& v2,
           const Edges& e2) { return graph_tuple(graph_union(make_graph(v1, e1), make_graph(v2, e2))); });
  m.def("graph_mirror", [](const std::vector<long long>& v, const Edges& e) {
    return graph_tuple(graph_mirror(make_graph(v, e)));
  });
}
