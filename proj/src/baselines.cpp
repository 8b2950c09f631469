#include "slp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slp {

void LpConfig::validate() const {
  if (max_iters == 0) throw std::invalid_argument("LpConfig: max_iters must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("LpConfig: tol must be positive");
}

LpResult lp_solve(const EmpiricalGraph& g, const SamplingSet& s, const LpConfig& cfg) {
  cfg.validate();
  s.validate_for(g);
  const std::size_t n = g.num_nodes();
  const auto edges = g.edges();

  std::vector<bool> labeled(n, false);
  for (const auto& l : s.labels()) labeled[l.node] = true;

  NodeSignal x = project_samples(NodeSignal(n), s);
  NodeSignal next = x;
  LpResult out;
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (labeled[i]) continue;
      double acc = 0.0;
      for (const auto& inc : g.incidences(i)) acc += edges[inc.edge].weight * x[inc.neighbor];
      next[i] = acc / g.degree(i);
      change = std::max(change, std::abs(next[i] - x[i]));
    }
    std::swap(x, next);
    out.iterations = it;
    if (change <= cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.signal = std::move(x);
  return out;
}

namespace {

MethodErrors errors_of(const EmpiricalGraph& g, const NodeSignal& x, const NodeSignal& truth) {
  MethodErrors m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - truth[i];
    m.sup_error = std::max(m.sup_error, std::abs(d));
    m.mean_square_error += d * d;
  }
  m.mean_square_error /= static_cast<double>(x.size());
  m.tv = tv_norm(g, x);
  return m;
}

}  // namespace

Comparison compare(const EmpiricalGraph& g, const SamplingSet& s, const NodeSignal& slp_result,
                   const NodeSignal& lp_result, const NodeSignal& truth) {
  s.validate_for(g);
  if (slp_result.size() != g.num_nodes() || lp_result.size() != g.num_nodes() ||
      truth.size() != g.num_nodes()) {
    throw SizeMismatch("compare: signal length does not match the graph");
  }
  return {errors_of(g, slp_result, truth), errors_of(g, lp_result, truth)};
}

}  // namespace slp
