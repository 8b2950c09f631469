#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "slp/graph.hpp"
#include "slp/solver.hpp"

namespace slp {

/// Balance tolerance for (D^T y)[i] = 0 on unlabeled nodes.
inline constexpr double kDualBalanceTol = 1e-8;

/// Threshold stated for the preconditioned operator norm.
inline constexpr double kKappaStatedLimit = 0.5;

/// Norm bound the diagonal preconditioners actually guarantee: kappa^2 <= 1/2.
inline constexpr double kKappaGuaranteedLimit = 0.70710678118654752440;

/// Dual objective sum_{i in M} (D^T y)[i] x~_i, defined when ||y||_inf <= 1 and
/// D^T y vanishes on every unlabeled node.
struct DualEvaluation {
  bool feasible = false;
  double value = 0.0;      // meaningful only when feasible
  double violation = 0.0;  // max of (||y||_inf - 1)_+ and unlabeled imbalance
};

struct GapEvaluation {
  bool feasible = false;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double violation = 0.0;
};

struct KappaEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

enum class ReferenceKind {
  None,
  Analytic,
  LinearProgram,
  LongRun,
};

std::string_view to_string(ReferenceKind kind) noexcept;

struct Certificate {
  std::size_t K = 0;
  std::optional<double> convergence_bound;
  ReferenceKind reference = ReferenceKind::None;
  double primal_value = 0.0;  // TV of the running average
  DualEvaluation dual;
  std::optional<double> gap;  // of the (iterate, dual iterate) pair
  double kappa_estimate = 0.0;
};

/// Entry-wise signum with sign(0) = 0.
double signum(double v) noexcept;

/// sign(D x), the dual point the convergence bound is evaluated at.
EdgeSignal incidence_sign(const EmpiricalGraph& g, const NodeSignal& x);

/// ||x||^2 weighted by Gamma^{-1} = diag(2 d_i).
double gamma_inverse_norm_sq(const Preconditioners& p, const NodeSignal& x);
/// ||y||^2 weighted by Lambda^{-1} = diag(2 W_e).
double lambda_inverse_norm_sq(const Preconditioners& p, const EdgeSignal& y);

/// Upper bound on TV(x_avg_K) - TV(x_ref) after K iterations started at
/// (x0, y0):
///   (1 / 2K) (||x0 - x_ref||^2_{Gamma^-1} + ||y0 - sign(D x_avg_K)||^2_{Lambda^-1})
double convergence_bound(const EmpiricalGraph& g, const Preconditioners& p, const NodeSignal& x0,
                      const EdgeSignal& y0, const NodeSignal& x_ref,
                      const NodeSignal& x_avg_K, std::size_t K);

DualEvaluation dual_value(const EmpiricalGraph& g, const SamplingSet& s, const EdgeSignal& y,
                          double balance_tol = kDualBalanceTol);

/// TV(x) - dual_value(y). `x` must agree with the labels.
GapEvaluation duality_gap(const EmpiricalGraph& g, const SamplingSet& s, const NodeSignal& x,
                          const EdgeSignal& y, double balance_tol = kDualBalanceTol);

/// Power iteration for ||Gamma^{1/2} D^T Lambda^{1/2}||_2, matrix free. Runs
/// on Gamma^{1/2} D^T Lambda D Gamma^{1/2} from a fixed pseudo-random start and
/// stops when the relative change drops to `rel_tol` or after `max_iters`.
KappaEstimate kappa_estimate(const EmpiricalGraph& g, const Preconditioners& p,
                             double rel_tol = 1e-10, std::size_t max_iters = 10000);

/// Sup-norm distance between (x, y) and one iteration started from
/// (x_prev = x, x_curr = x, y). Zero exactly at primal-dual optimal pairs.
double fixed_point_residual(const EmpiricalGraph& g, const Preconditioners& p,
                            const SamplingSet& s, const NodeSignal& x, const EdgeSignal& y);

}  // namespace slp
