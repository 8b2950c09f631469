#include "slp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slp/certificates.hpp"
#include "slp/io.hpp"

namespace slp {

ChainProblem make_chain(ChainSpec spec) {
  const std::size_t n = spec.num_nodes;
  if (n < 3) throw std::invalid_argument("chain needs at least 3 nodes");
  std::vector<WeightedPair> edges;
  edges.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1, 1.0 / static_cast<double>(i + 1)});
  }
  NodeSignal truth(n, 1.0);
  truth[n - 1] = 0.0;
  return {EmpiricalGraph::build(edges, n), SamplingSet({{0, 1.0}, {n - 1, 0.0}}),
          std::move(truth), 1.0 / static_cast<double>(n - 1)};
}

std::vector<std::size_t> default_k_grid(std::size_t num_nodes) {
  const std::size_t cap = num_nodes / 2;
  auto sequence = [cap](std::size_t start) {
    std::vector<std::size_t> out;
    for (std::size_t decade = 1; decade <= cap; decade *= 10) {
      for (std::size_t m : {1, 2, 5}) {
        const std::size_t k = m * decade;
        if (k >= start && k <= cap) out.push_back(k);
      }
    }
    return out;
  };
  auto grid = sequence(10);
  if (grid.size() < 3) grid = sequence(1);
  return grid;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw SizeMismatch("loglog_slope: length mismatch");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("loglog_slope: need two positive points");
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: x values are all equal");
  return (dn * sxy - sx * sy) / denom;
}

RateReport run_rate_experiment(ChainSpec spec, std::span<const std::size_t> k_grid,
                               int threads) {
  const auto chain = make_chain(spec);
  const std::size_t n = spec.num_nodes;
  if (k_grid.empty()) throw std::invalid_argument("K grid is empty");
  std::vector<std::size_t> grid(k_grid.begin(), k_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < 1 || grid.back() >= n) {
    throw std::invalid_argument("every K must satisfy 1 <= K < N");
  }

  const auto& g = chain.graph;
  const auto p = make_preconditioners(g);
  SolverState st = SolverState::zeros(g);
  const NodeSignal x0 = st.x_curr;
  const EdgeSignal y0 = st.y_curr;

  RateReport report;
  report.num_nodes = n;
  std::vector<double> ks, subopt;
  for (std::size_t K : grid) {
    while (st.k < K) slp_iterate(st, g, p, chain.samples, threads);

    RatePoint pt;
    pt.K = K;
    pt.tv_average = tv_norm(g, st.x_avg);
    pt.suboptimality = pt.tv_average - chain.optimal_tv;
    pt.lower_bound = 1.0 / static_cast<double>(K) - 1.0 / static_cast<double>(n);
    pt.upper_bound = convergence_bound(g, p, x0, y0, chain.truth, st.x_avg, K);
    pt.lower_ok = pt.suboptimality >= pt.lower_bound - kLowerBoundSlack;
    pt.upper_ok = pt.suboptimality <= pt.upper_bound + kUpperBoundSlack;
    for (std::size_t i = K + 1; i < n; ++i) {
      if (st.x_avg[i] != 0.0) pt.locality_ok = false;
    }
    report.lower_bound_violations += pt.lower_ok ? 0 : 1;
    report.bound_violations += pt.upper_ok ? 0 : 1;
    report.locality_violations += pt.locality_ok ? 0 : 1;
    report.points.push_back(pt);
    ks.push_back(static_cast<double>(K));
    subopt.push_back(pt.suboptimality);
  }
  report.slope = ks.size() >= 2 ? loglog_slope(ks, subopt) : 0.0;
  return report;
}

void require_no_violations(const RateReport& report) {
  if (report.ok()) return;
  throw BoundViolation("chain experiment: " + std::to_string(report.lower_bound_violations) +
                       " lower-bound, " + std::to_string(report.bound_violations) +
                       " upper-bound, " + std::to_string(report.locality_violations) +
                       " locality violations");
}

nlohmann::json to_json(const RateReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : report.points) {
    points.push_back({{"K", pt.K},
                      {"tv_average", pt.tv_average},
                      {"suboptimality", pt.suboptimality},
                      {"lower_bound", pt.lower_bound},
                      {"upper_bound", pt.upper_bound},
                      {"lower_ok", pt.lower_ok},
                      {"upper_ok", pt.upper_ok},
                      {"locality_ok", pt.locality_ok}});
  }
  return {{"num_nodes", report.num_nodes},
          {"points", points},
          {"slope", report.slope},
          {"lower_bound_violations", report.lower_bound_violations},
          {"bound_violations", report.bound_violations},
          {"locality_violations", report.locality_violations}};
}

std::string to_table(const RateReport& report) {
  std::string out = "K\ts(K)\tlower\tupper\n";
  for (const auto& pt : report.points) {
    out += std::to_string(pt.K) + '\t' + format_real(pt.suboptimality) + '\t' +
           format_real(pt.lower_bound) + '\t' + format_real(pt.upper_bound) + '\n';
  }
  return out;
}

}  // namespace slp
