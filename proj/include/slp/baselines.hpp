#pragma once

#include <cstddef>

#include "slp/graph.hpp"
#include "slp/solver.hpp"

namespace slp {

struct LpConfig {
  std::size_t max_iters = 1000000;
  double tol = 1e-13;  // sup-norm change between sweeps

  void validate() const;
};

struct LpResult {
  NodeSignal signal;
  std::size_t iterations = 0;
  bool converged = false;  // false: max_iters hit, `signal` is the last sweep
};

/// Label propagation: minimizes sum_e W_e (x_i - x_j)^2 with the labels held
/// fixed, by Jacobi sweeps x_i <- (1/d_i) sum_j W_ij x_j on unlabeled nodes.
LpResult lp_solve(const EmpiricalGraph& g, const SamplingSet& s, const LpConfig& cfg = {});

struct MethodErrors {
  double sup_error = 0.0;
  double mean_square_error = 0.0;
  double tv = 0.0;
};

struct Comparison {
  MethodErrors slp;
  MethodErrors lp;
};

Comparison compare(const EmpiricalGraph& g, const SamplingSet& s, const NodeSignal& slp_result,
                   const NodeSignal& lp_result, const NodeSignal& truth);

}  // namespace slp
