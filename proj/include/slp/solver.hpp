#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slp/graph.hpp"

namespace slp {

struct Label {
  std::size_t node;
  double value;
};

/// Labeled nodes M with their observed values. Entries are kept sorted by
/// node index.
class SamplingSet {
 public:
  /// Throws LabelError if empty, if a node repeats, or if a value is not
  /// finite.
  explicit SamplingSet(std::vector<Label> labels);

  /// Throws LabelError if a labeled node does not exist in `g`.
  void validate_for(const EmpiricalGraph& g) const;

  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool contains(std::size_t node) const;
  std::vector<std::size_t> nodes() const;

 private:
  std::vector<Label> labels_;
};

/// Diagonal step sizes gamma_i = 1/(2 d_i) per node and
/// lambda_e = 1/(2 W_e) per edge.
struct Preconditioners {
  std::vector<double> gamma;
  std::vector<double> lambda;
};

Preconditioners make_preconditioners(const EmpiricalGraph& g);

/// Iterates of the primal-dual recursion after `k` steps: the two most recent
/// primal iterates, the dual iterate and the running mean of x_curr.
struct SolverState {
  NodeSignal x_prev;
  NodeSignal x_curr;
  EdgeSignal y_curr;
  NodeSignal x_avg;
  std::size_t k = 0;

  static SolverState zeros(const EmpiricalGraph& g);
  /// Starts from (x0, y0) with x_prev = x_curr = x0.
  static SolverState from(const EmpiricalGraph& g, NodeSignal x0, EdgeSignal y0);
};

struct TraceRecord {
  std::size_t k = 0;
  double tv_iterate = 0.0;
  double tv_average = 0.0;
  std::optional<double> bound;  // needs a reference minimizer
  std::optional<double> gap;    // empty while the dual iterate is infeasible
  double residual = 0.0;
};

using SolverTrace = std::vector<TraceRecord>;

struct SolverConfig {
  std::size_t max_iters = 1000;
  /// Early stop when the running average moves by at most `tol` (sup norm)
  /// over `trace_stride` iterations. 0 disables the test.
  double tol = 0.0;
  std::optional<std::pair<NodeSignal, EdgeSignal>> init;
  bool record_trace = false;
  std::size_t trace_stride = 1;
  /// Minimizer used for the convergence bound in the trace.
  std::optional<NodeSignal> reference;
  int threads = 1;

  /// Throws std::invalid_argument on max_iters == 0, negative tol,
  /// zero stride or threads < 1.
  void validate() const;
};

struct SolveResult {
  NodeSignal average;  // authoritative output
  NodeSignal iterate;
  EdgeSignal dual;
  std::size_t iterations = 0;
  bool stopped_early = false;
  SolverTrace trace;
};

/// Per-entry y / max(1, |y|).
double prox_dual(double y) noexcept;
EdgeSignal prox_dual(const EdgeSignal& y);

/// Overwrites the labeled entries with their observed values.
NodeSignal project_samples(NodeSignal x, const SamplingSet& s);

/// One step of the preconditioned primal-dual recursion, in place:
///   x  = 2 x_curr - x_prev
///   y  = prox_dual(y + Lambda D x)
///   x' = project_samples(x_curr - Gamma D^T y)
///   k += 1, x_avg = (1 - 1/k) x_avg + (1/k) x'  (as x_avg += (x' - x_avg) / k)
///
/// Each half-step writes one slot per edge (resp. node) and reduces over
/// incidences in edge order, so the result does not depend on `threads`.
/// Throws NonFiniteIterate.
void slp_iterate(SolverState& state, const EmpiricalGraph& g, const Preconditioners& p,
                 const SamplingSet& s, int threads = 1);

/// Trace entry for `st`, a run started at (x0, y0). The bound is filled in only
/// when a reference minimizer is given.
TraceRecord make_trace_record(const EmpiricalGraph& g, const Preconditioners& p,
                              const SamplingSet& s, const SolverState& st, const NodeSignal& x0,
                              const EdgeSignal& y0, const std::optional<NodeSignal>& reference);

SolveResult solve(const EmpiricalGraph& g, const SamplingSet& s, const SolverConfig& cfg);

}  // namespace slp
