#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "slp/baselines.hpp"
#include "slp/bench.hpp"
#include "slp/certificates.hpp"
#include "slp/io.hpp"
#include "slp/message_passing.hpp"
#include "slp/solver.hpp"

namespace py = pybind11;
using namespace slp;

namespace {

using EdgeTuple = std::tuple<std::size_t, std::size_t, double>;

SamplingSet sampling_set(const std::vector<std::pair<std::size_t, double>>& labels) {
  std::vector<Label> out;
  out.reserve(labels.size());
  for (const auto& [node, value] : labels) out.push_back({node, value});
  return SamplingSet(std::move(out));
}

py::dict trace_dict(const TraceRecord& r) {
  py::dict d;
  d["k"] = r.k;
  d["tv_iterate"] = r.tv_iterate;
  d["tv_average"] = r.tv_average;
  d["bound"] = r.bound;
  d["gap"] = r.gap;
  d["residual"] = r.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse label propagation: total variation minimization on graphs";

  auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<GraphError>(m, "GraphError", validation.ptr());
  py::register_exception<LabelError>(m, "LabelError", validation.ptr());
  py::register_exception<NonFiniteIterate>(m, "NonFiniteIterate", PyExc_ArithmeticError);
  py::register_exception<BoundViolation>(m, "BoundViolation", PyExc_AssertionError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<EmpiricalGraph>(m, "Graph")
      .def(py::init([](const std::vector<EdgeTuple>& edges, std::optional<std::size_t> num_nodes) {
             std::vector<WeightedPair> pairs;
             pairs.reserve(edges.size());
             for (const auto& [i, j, w] : edges) pairs.push_back({i, j, w});
             return build_graph(pairs, num_nodes);
           }),
           py::arg("edges"), py::arg("num_nodes") = py::none())
      .def_property_readonly("num_nodes", &EmpiricalGraph::num_nodes)
      .def_property_readonly("num_edges", &EmpiricalGraph::num_edges)
      .def_property_readonly("edges",
                             [](const EmpiricalGraph& g) {
                               std::vector<EdgeTuple> out;
                               for (const auto& e : g.edges()) out.emplace_back(e.head, e.tail, e.weight);
                               return out;
                             })
      .def("degree", &EmpiricalGraph::degree, py::arg("node"))
      .def("max_degree", [](const EmpiricalGraph& g) { return max_degree(g); })
      .def("__repr__", [](const EmpiricalGraph& g) {
        return "<Graph nodes=" + std::to_string(g.num_nodes()) +
               " edges=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("read_graph", [](const std::string& path) {
    const auto file = read_edge_list(path);
    return build_graph(file.edges, file.num_nodes);
  }, py::arg("path"));

  m.def("tv_norm", [](const EmpiricalGraph& g, std::vector<double> x) {
    return tv_norm(g, NodeSignal(std::move(x)));
  }, py::arg("graph"), py::arg("x"));

  m.def("apply_incidence", [](const EmpiricalGraph& g, std::vector<double> x) {
    return apply_incidence(g, NodeSignal(std::move(x))).vector();
  }, py::arg("graph"), py::arg("x"));

  m.def("apply_incidence_adjoint", [](const EmpiricalGraph& g, std::vector<double> y) {
    return apply_incidence_adjoint(g, EdgeSignal(std::move(y))).vector();
  }, py::arg("graph"), py::arg("y"));

  m.def(
      "solve",
      [](const EmpiricalGraph& g, const std::vector<std::pair<std::size_t, double>>& labels,
         std::size_t max_iters, double tol, std::size_t trace_stride, bool record_trace,
         int threads) {
        SolverConfig cfg;
        cfg.max_iters = max_iters;
        cfg.tol = tol;
        cfg.trace_stride = trace_stride;
        cfg.record_trace = record_trace;
        cfg.threads = threads;
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = solve(g, sampling_set(labels), cfg);
        }
        py::dict out;
        out["average"] = r.average.vector();
        out["iterate"] = r.iterate.vector();
        out["dual"] = r.dual.vector();
        out["iterations"] = r.iterations;
        out["stopped_early"] = r.stopped_early;
        py::list trace;
        for (const auto& rec : r.trace) trace.append(trace_dict(rec));
        out["trace"] = trace;
        return out;
      },
      py::arg("graph"), py::arg("labels"), py::arg("max_iters") = 1000, py::arg("tol") = 0.0,
      py::arg("trace_stride") = 1, py::arg("record_trace") = false, py::arg("threads") = 1,
      R"doc(Run the primal-dual iteration from zero.

`labels` is a list of (node, value) pairs. Returns a dict with the running
average (the recovered signal), the last iterate, the dual iterate, the
iteration count and the optional trace.)doc");

  m.def(
      "message_passing",
      [](const EmpiricalGraph& g, const std::vector<std::pair<std::size_t, double>>& labels,
         std::size_t rounds) {
        MessagePassingNetwork net(g, sampling_set(labels));
        std::size_t messages = 0;
        for (std::size_t k = 0; k < rounds; ++k) messages += net.step().messages;
        py::dict out;
        out["average"] = net.average().vector();
        out["iterate"] = net.iterate().vector();
        out["dual"] = net.dual().vector();
        out["messages"] = messages;
        return out;
      },
      py::arg("graph"), py::arg("labels"), py::arg("rounds"));

  m.def(
      "lp_solve",
      [](const EmpiricalGraph& g, const std::vector<std::pair<std::size_t, double>>& labels,
         std::size_t max_iters, double tol) {
        LpConfig cfg;
        cfg.max_iters = max_iters;
        cfg.tol = tol;
        const auto r = lp_solve(g, sampling_set(labels), cfg);
        return py::make_tuple(r.signal.vector(), r.converged);
      },
      py::arg("graph"), py::arg("labels"), py::arg("max_iters") = 1000000,
      py::arg("tol") = 1e-13);

  m.def(
      "duality_gap",
      [](const EmpiricalGraph& g, const std::vector<std::pair<std::size_t, double>>& labels,
         std::vector<double> x, std::vector<double> y) -> std::optional<double> {
        const auto gap =
            duality_gap(g, sampling_set(labels), NodeSignal(std::move(x)), EdgeSignal(std::move(y)));
        if (!gap.feasible) return std::nullopt;
        return gap.gap;
      },
      py::arg("graph"), py::arg("labels"), py::arg("x"), py::arg("y"),
      "TV(x) minus the dual objective, or None when y is dual infeasible.");

  m.def("kappa_estimate", [](const EmpiricalGraph& g) {
    return kappa_estimate(g, make_preconditioners(g)).value;
  }, py::arg("graph"));

  m.def("make_chain", [](std::size_t n) {
    auto c = make_chain({n});
    std::vector<std::pair<std::size_t, double>> labels;
    for (const auto& l : c.samples.labels()) labels.emplace_back(l.node, l.value);
    return py::make_tuple(std::move(c.graph), labels, c.truth.vector());
  }, py::arg("num_nodes"), "Weighted chain: (graph, labels, truth).");

  m.def(
      "run_rate_experiment",
      [](std::size_t n, std::optional<std::vector<std::size_t>> grid) {
        const auto ks = grid ? *grid : default_k_grid(n);
        const auto report = run_rate_experiment({n}, ks);
        py::dict out;
        out["slope"] = report.slope;
        out["lower_bound_violations"] = report.lower_bound_violations;
        out["bound_violations"] = report.bound_violations;
        out["locality_violations"] = report.locality_violations;
        py::list points;
        for (const auto& pt : report.points) {
          py::dict d;
          d["K"] = pt.K;
          d["suboptimality"] = pt.suboptimality;
          d["lower_bound"] = pt.lower_bound;
          d["upper_bound"] = pt.upper_bound;
          points.append(d);
        }
        out["points"] = points;
        return out;
      },
      py::arg("num_nodes"), py::arg("grid") = py::none());
}
