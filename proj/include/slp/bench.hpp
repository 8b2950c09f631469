#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "slp/graph.hpp"
#include "slp/solver.hpp"

namespace slp {

/// Weighted chain 0 - 1 - ... - (N-1) with W_{i,i+1} = 1/(i+1), labels
/// x~_0 = 1 and x~_{N-1} = 0. Its unique minimizer is the step signal
/// (1, ..., 1, 0) with TV 1/(N-1).
struct ChainSpec {
  std::size_t num_nodes = 0;
};

struct ChainProblem {
  EmpiricalGraph graph;
  SamplingSet samples;
  NodeSignal truth;
  double optimal_tv;
};

/// Throws std::invalid_argument for N < 3.
ChainProblem make_chain(ChainSpec spec);

/// Tolerances used when checking the two bounds.
inline constexpr double kLowerBoundSlack = 1e-12;
inline constexpr double kUpperBoundSlack = 1e-9;

struct RatePoint {
  std::size_t K = 0;
  double tv_average = 0.0;
  double suboptimality = 0.0;
  double lower_bound = 0.0;  // 1/K - 1/N
  double upper_bound = 0.0;  // convergence bound from zero init
  bool lower_ok = true;
  bool upper_ok = true;
  bool locality_ok = true;  // average vanishes beyond hop K from node 0
};

struct RateReport {
  std::size_t num_nodes = 0;
  std::vector<RatePoint> points;
  double slope = 0.0;  // least squares slope of log s(K) against log K
  std::size_t lower_bound_violations = 0;
  std::size_t bound_violations = 0;
  std::size_t locality_violations = 0;

  bool ok() const noexcept {
    return lower_bound_violations == 0 && bound_violations == 0 && locality_violations == 0;
  }
};

/// 1-2-5 sequence capped at N/2; starts at 10 when that leaves at least three
/// points, else at 1.
std::vector<std::size_t> default_k_grid(std::size_t num_nodes);

/// Runs the solver from zero on the chain and evaluates every K of the grid
/// along the way (one run reaching K equals a fresh run of exactly K
/// iterations). Throws std::invalid_argument unless 1 <= K < N for all K.
RateReport run_rate_experiment(ChainSpec spec, std::span<const std::size_t> k_grid,
                               int threads = 1);

/// Throws BoundViolation if the report has any violation.
void require_no_violations(const RateReport& report);

/// Least squares slope of log(y) on log(x). Needs at least two points with
/// positive coordinates.
double loglog_slope(std::span<const double> x, std::span<const double> y);

nlohmann::json to_json(const RateReport& report);
std::string to_table(const RateReport& report);

}  // namespace slp
