#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "qcompose/composition.hpp"
#include "qcompose/electric.hpp"
#include "qcompose/error.hpp"
#include "qcompose/io.hpp"
#include "qcompose/promise.hpp"
#include "qcompose/walk.hpp"

namespace py = pybind11;
using namespace qcompose;

namespace {

// float, str ("1/3", "2^-20") or fractions.Fraction.
Probability to_probability(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return Probability::parse(obj.cast<std::string>());
  if (!py::isinstance<py::float_>(obj) && py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
    return Probability::ratio(obj.attr("numerator").cast<double>(), obj.attr("denominator").cast<double>());
  }
  return Probability(obj.cast<double>());
}

BitString bits(const std::string& text) { return BitString::from_string(text); }

HInput h_input(const std::string& left, const std::string& right) { return HInput{bits(left), bits(right)}; }

ComposedInstance composed(const std::vector<std::pair<std::string, std::string>>& blocks) {
  ComposedInstance inst;
  for (const auto& [l, r] : blocks) inst.blocks.push_back(h_input(l, r));
  return inst;
}

std::vector<std::pair<std::string, std::string>> block_strings(const ComposedInstance& inst) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const HInput& b : inst.blocks) out.emplace_back(b.left.to_string(), b.right.to_string());
  return out;
}

CostProfile profile(std::vector<double> times, std::vector<std::vector<double>> weights, double extra) {
  return CostProfile{std::move(times), extra, std::move(weights)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Composition of quantum subroutines: simulators and cost models";

  // Module-lifetime reference; the translator raises instances carrying `kind`.
  static PyObject* error_type = PyErr_NewException("qcompose._core.QComposeError", PyExc_ValueError, nullptr);
  m.attr("QComposeError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::handle(error_type)(py::str(e.what()));
      instance.attr("kind") = py::str(to_string(e.kind()));
      PyErr_SetObject(error_type, instance.ptr());
    }
  });

  // state-core / promise problems
  m.def("run_dj", [](const std::string& x) { return run_dj(bits(x)); }, py::arg("x"),
        "Accept probability of one-query Deutsch-Jozsa on a bit string.");
  m.def("g_eval", [](const std::string& x) { return g_eval(bits(x)); }, py::arg("x"));
  m.def("h_eval", [](const std::string& l, const std::string& r) { return h_eval(h_input(l, r)); },
        py::arg("left"), py::arg("right"));
  m.def("las_vegas_h",
        [](const std::string& l, const std::string& r, std::uint64_t seed) {
          const LasVegasTrace t = las_vegas_h(h_input(l, r), seed);
          py::dict d;
          d["answer"] = t.answer;
          d["queries"] = t.queries;
          d["steps"] = t.steps;
          return d;
        },
        py::arg("left"), py::arg("right"), py::arg("seed"));
  m.def("h_exit_within", [](const std::string& l, const std::string& r, std::size_t steps) {
    return h_exit_within(h_input(l, r), steps);
  }, py::arg("left"), py::arg("right"), py::arg("steps"));
  m.def("majority_vote_error", &majority_vote_error, py::arg("k"), py::arg("p_err"));
  m.def("structured_counterexample", [](std::size_t n) { return block_strings(structured_counterexample(n)); },
        py::arg("m"), "Blocks as (left, right) bit strings.");
  m.def("run_composed_dj_h",
        [](const std::vector<std::pair<std::string, std::string>>& blocks, std::optional<std::size_t> stop) {
          const ComposedRunResult r = run_composed_dj_h(composed(blocks), stop);
          py::dict d;
          d["stop_time"] = r.stop_time;
          d["accept_amplitude"] = r.accept_amplitude;
          d["accept_probability"] = r.accept_probability;
          d["exited_mass"] = r.exited_mass;
          return d;
        },
        py::arg("blocks"), py::arg("stop_time") = py::none(), "stop_time=None runs to completion.");

  // graph-electric
  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def(py::init([](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
                       const std::map<std::size_t, double>& boundary) {
             std::vector<Edge> list;
             for (const auto& [u, v, w] : edges) list.push_back(Edge{u, v, w});
             return WeightedGraph(n, std::move(list), boundary);
           }),
           py::arg("n"), py::arg("edges"), py::arg("boundary") = std::map<std::size_t, double>{})
      .def_static("from_json", [](const std::string& text) { return parse_graph(text); })
      .def("to_json", [](const WeightedGraph& g) { return graph_to_json(g); })
      .def_property_readonly("n", &WeightedGraph::vertex_count)
      .def_property_readonly("edges", [](const WeightedGraph& g) {
        std::vector<std::tuple<std::size_t, std::size_t, double>> out;
        for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.weight);
        return out;
      })
      .def_property_readonly("boundary", &WeightedGraph::boundary);

  m.def("total_weight", &total_weight, py::arg("graph"));
  m.def("effective_resistance", &effective_resistance, py::arg("graph"), py::arg("s"), py::arg("t"));
  m.def("hitting_time_exact", &hitting_time_exact, py::arg("graph"), py::arg("u"), py::arg("t"));
  m.def("hitting_time_mc",
        [](const WeightedGraph& g, Vertex u, Vertex t, std::uint64_t seed, std::size_t trials) {
          MonteCarloEstimate est;
          {
            py::gil_scoped_release release;
            est = hitting_time_mc(g, u, t, seed, trials);
          }
          return py::make_tuple(est.mean, est.std_error);
        },
        py::arg("graph"), py::arg("u"), py::arg("t"), py::arg("seed"), py::arg("trials"),
        "(mean, standard error) of the hitting time.");
  m.def("commute_identity_residual", &commute_identity_residual, py::arg("graph"), py::arg("s"), py::arg("t"));

  // quantum-walk
  m.def("purifier_line", [](const py::object& p0, const py::object& eps, std::size_t d) {
    return purifier_line(to_probability(p0), to_probability(eps), d).graph;
  }, py::arg("p0"), py::arg("epsilon"), py::arg("depth"));
  m.def("purifier_complexity", [](const py::object& eps, std::size_t d) {
    return purifier_complexity(to_probability(eps), d);
  }, py::arg("epsilon"), py::arg("depth"));
  m.def("perturbation_bound", [](const py::object& eps, std::size_t d) {
    return perturbation_bound(to_probability(eps), d);
  }, py::arg("epsilon"), py::arg("depth"));
  m.def("purifier_statistic", [](const py::object& p0, std::size_t d) {
    return purifier_statistic(to_probability(p0), d);
  }, py::arg("p0"), py::arg("depth"));
  m.def("walk_unitarity_defect", [](const WeightedGraph& g) {
    return unitarity_defect(build_walk_operator(EdgeSpace(g)).unitary.matrix());
  }, py::arg("graph"));
  m.def("decide_purifier",
        [](const py::object& p0, const py::object& eps, std::size_t d, std::optional<double> threshold) {
          return decide_purifier(to_probability(p0), to_probability(eps), d, threshold);
        },
        py::arg("p0"), py::arg("epsilon"), py::arg("depth"), py::arg("threshold") = py::none(),
        "True accepts (p0 <= epsilon side).");

  // composition-lab
  m.def("classical_avg_cost", [](std::vector<double> t, std::vector<std::vector<double>> w, double extra) {
    return classical_avg_cost(profile(std::move(t), std::move(w), extra));
  }, py::arg("subroutine_times"), py::arg("weights"), py::arg("extra_ops") = 0.0);
  m.def("quantum_naive_cost", [](std::vector<double> t, std::vector<std::vector<double>> w, double extra) {
    return quantum_naive_cost(profile(std::move(t), std::move(w), extra));
  }, py::arg("subroutine_times"), py::arg("weights"), py::arg("extra_ops") = 0.0);
  m.def("quantum_walk_cost", [](std::vector<double> t, std::vector<std::vector<double>> w, double extra) {
    return quantum_walk_cost(profile(std::move(t), std::move(w), extra));
  }, py::arg("subroutine_times"), py::arg("weights"), py::arg("extra_ops") = 0.0);
  m.def("majority_vs_purifier_table",
        [](const py::object& eps, const std::vector<double>& deltas) {
          py::list rows;
          for (const OverheadRow& r : majority_vs_purifier_table(to_probability(eps), deltas)) {
            py::dict d;
            d["delta"] = r.delta;
            d["majority_k"] = r.majority_k;
            d["majority_error"] = r.majority_error;
            d["purifier_depth"] = r.purifier_depth;
            d["perturbation_bound"] = r.perturbation;
            d["purifier_overhead"] = r.purifier_overhead;
            rows.append(d);
          }
          return rows;
        },
        py::arg("epsilon"), py::arg("deltas"));
}
