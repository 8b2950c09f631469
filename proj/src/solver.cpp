#include "slp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slp/certificates.hpp"

namespace slp {

SamplingSet::SamplingSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw LabelError("sampling set must not be empty");
  std::stable_sort(labels_.begin(), labels_.end(),
                   [](const Label& a, const Label& b) { return a.node < b.node; });
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (!std::isfinite(labels_[k].value)) {
      throw LabelError("label for node " + std::to_string(labels_[k].node) + " is not finite");
    }
    if (k > 0 && labels_[k].node == labels_[k - 1].node) {
      throw LabelError("node " + std::to_string(labels_[k].node) + " is labeled twice");
    }
  }
}

void SamplingSet::validate_for(const EmpiricalGraph& g) const {
  for (const auto& l : labels_) {
    if (l.node >= g.num_nodes()) {
      throw LabelError("label references node " + std::to_string(l.node) +
                       " but the graph has " + std::to_string(g.num_nodes()) + " nodes");
    }
  }
}

bool SamplingSet::contains(std::size_t node) const {
  return std::binary_search(labels_.begin(), labels_.end(), Label{node, 0.0},
                            [](const Label& a, const Label& b) { return a.node < b.node; });
}

std::vector<std::size_t> SamplingSet::nodes() const {
  std::vector<std::size_t> out;
  out.reserve(labels_.size());
  for (const auto& l : labels_) out.push_back(l.node);
  return out;
}

Preconditioners make_preconditioners(const EmpiricalGraph& g) {
  Preconditioners p;
  p.gamma.reserve(g.num_nodes());
  for (double d : g.degrees()) p.gamma.push_back(1.0 / (2.0 * d));
  p.lambda.reserve(g.num_edges());
  for (const auto& e : g.edges()) p.lambda.push_back(1.0 / (2.0 * e.weight));
  return p;
}

SolverState SolverState::zeros(const EmpiricalGraph& g) {
  const std::size_t n = g.num_nodes();
  return {NodeSignal(n), NodeSignal(n), EdgeSignal(g.num_edges()), NodeSignal(n), 0};
}

SolverState SolverState::from(const EmpiricalGraph& g, NodeSignal x0, EdgeSignal y0) {
  if (x0.size() != g.num_nodes() || y0.size() != g.num_edges()) {
    throw SizeMismatch("initial point does not match the graph");
  }
  NodeSignal prev = x0;
  return {std::move(prev), std::move(x0), std::move(y0), NodeSignal(g.num_nodes()), 0};
}

void SolverConfig::validate() const {
  if (max_iters == 0) throw std::invalid_argument("max_iters must be at least 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be nonnegative");
  if (trace_stride == 0) throw std::invalid_argument("trace_stride must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

double prox_dual(double y) noexcept { return y / std::max(1.0, std::abs(y)); }

EdgeSignal prox_dual(const EdgeSignal& y) {
  EdgeSignal out(y.size());
  for (std::size_t e = 0; e < y.size(); ++e) out[e] = prox_dual(y[e]);
  return out;
}

NodeSignal project_samples(NodeSignal x, const SamplingSet& s) {
  for (const auto& l : s.labels()) {
    if (l.node >= x.size()) throw SizeMismatch("label outside the signal");
    x[l.node] = l.value;
  }
  return x;
}

void slp_iterate(SolverState& state, const EmpiricalGraph& g, const Preconditioners& p,
                 const SamplingSet& s, int threads) {
  const auto n = static_cast<std::ptrdiff_t>(g.num_nodes());
  const auto m = static_cast<std::ptrdiff_t>(g.num_edges());
  if (state.x_curr.size() != g.num_nodes() || state.x_prev.size() != g.num_nodes() ||
      state.x_avg.size() != g.num_nodes() || state.y_curr.size() != g.num_edges()) {
    throw SizeMismatch("solver state does not match the graph");
  }
  const auto edges = g.edges();
  auto xp = state.x_prev.values();
  auto xc = state.x_curr.values();
  auto xa = state.x_avg.values();
  auto y = state.y_curr.values();
  const double* gamma = p.gamma.data();
  const double* lambda = p.lambda.data();
  bool bad = false;

  // Dual half-step. The extrapolated primal value is recomputed per endpoint.
  auto dual_step = [&](std::ptrdiff_t e) {
    const auto& edge = edges[e];
    const double x_head = 2.0 * xc[edge.head] - xp[edge.head];
    const double x_tail = 2.0 * xc[edge.tail] - xp[edge.tail];
    const double v = prox_dual(y[e] + lambda[e] * (edge.weight * (x_head - x_tail)));
    y[e] = v;
    return !std::isfinite(v);
  };
  // Primal half-step; x_prev takes the old x_curr.
  auto primal_step = [&](std::ptrdiff_t i) {
    double acc = 0.0;
    for (const auto& inc : g.incidences(static_cast<std::size_t>(i))) {
      const double flow = edges[inc.edge].weight * y[inc.edge];
      acc += inc.is_head ? flow : -flow;
    }
    const double next = xc[i] - gamma[i] * acc;
    xp[i] = xc[i];
    xc[i] = next;
    return !std::isfinite(next);
  };

  if (threads > 1) {
#pragma omp parallel for schedule(static) num_threads(threads) reduction(|| : bad)
    for (std::ptrdiff_t e = 0; e < m; ++e) bad = dual_step(e) || bad;
#pragma omp parallel for schedule(static) num_threads(threads) reduction(|| : bad)
    for (std::ptrdiff_t i = 0; i < n; ++i) bad = primal_step(i) || bad;
  } else {
    for (std::ptrdiff_t e = 0; e < m; ++e) bad = dual_step(e) || bad;
    for (std::ptrdiff_t i = 0; i < n; ++i) bad = primal_step(i) || bad;
  }

  for (const auto& l : s.labels()) xc[l.node] = l.value;

  // Running mean in increment form: x_avg stays bit-exact wherever the
  // iterate is constant, as on labeled nodes.
  ++state.k;
  const double k = static_cast<double>(state.k);
  for (std::ptrdiff_t i = 0; i < n; ++i) xa[i] += (xc[i] - xa[i]) / k;

  if (bad) {
    throw NonFiniteIterate(state.k, "non-finite iterate at iteration " + std::to_string(state.k));
  }
}

TraceRecord make_trace_record(const EmpiricalGraph& g, const Preconditioners& p,
                              const SamplingSet& s, const SolverState& st, const NodeSignal& x0,
                              const EdgeSignal& y0, const std::optional<NodeSignal>& reference) {
  TraceRecord r;
  r.k = st.k;
  r.tv_iterate = tv_norm(g, st.x_curr);
  r.tv_average = tv_norm(g, st.x_avg);
  if (reference) r.bound = convergence_bound(g, p, x0, y0, *reference, st.x_avg, st.k);
  const auto gap = duality_gap(g, s, st.x_curr, st.y_curr);
  if (gap.feasible) r.gap = gap.gap;
  r.residual = fixed_point_residual(g, p, s, st.x_curr, st.y_curr);
  return r;
}

SolveResult solve(const EmpiricalGraph& g, const SamplingSet& s, const SolverConfig& cfg) {
  cfg.validate();
  s.validate_for(g);
  if (cfg.reference && cfg.reference->size() != g.num_nodes()) {
    throw SizeMismatch("reference signal does not match the graph");
  }
  const auto p = make_preconditioners(g);
  SolverState st = cfg.init ? SolverState::from(g, cfg.init->first, cfg.init->second)
                            : SolverState::zeros(g);
  const NodeSignal x0 = st.x_curr;
  const EdgeSignal y0 = st.y_curr;

  SolveResult result;
  std::optional<NodeSignal> snapshot;
  while (st.k < cfg.max_iters) {
    slp_iterate(st, g, p, s, cfg.threads);
    const bool at_stride = st.k % cfg.trace_stride == 0;
    bool stop = false;
    if (cfg.tol > 0.0 && at_stride) {
      stop = snapshot && sup_distance(st.x_avg, *snapshot) <= cfg.tol;
      snapshot = st.x_avg;
    }
    if (cfg.record_trace && (at_stride || stop || st.k == cfg.max_iters)) {
      result.trace.push_back(make_trace_record(g, p, s, st, x0, y0, cfg.reference));
    }
    if (stop) {
      result.stopped_early = true;
      break;
    }
  }

  result.iterations = st.k;
  result.average = std::move(st.x_avg);
  result.iterate = std::move(st.x_curr);
  result.dual = std::move(st.y_curr);
  return result;
}

}  // namespace slp
