#pragma once

// Independent reference solutions for min TV(x) s.t. x = x~ on M. Works on
// plain edge lists; none of the library operators are used.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "simplex.hpp"
#include "slp/graph.hpp"
#include "slp/solver.hpp"

namespace slp::oracle {

struct TvProblem {
  std::size_t num_nodes = 0;
  std::vector<WeightedPair> edges;  // i = head, j = tail
  std::vector<Label> labels;
};

inline TvProblem problem_of(const EmpiricalGraph& g, const SamplingSet& s) {
  return {g.num_nodes(), g.edge_list(), {s.labels().begin(), s.labels().end()}};
}

inline double tv_of(const TvProblem& p, const std::vector<double>& x) {
  double tv = 0.0;
  for (const auto& e : p.edges) tv += e.weight * std::abs(x[e.i] - x[e.j]);
  return tv;
}

struct PrimalSolution {
  double value = 0.0;
  std::vector<double> x;
};

struct DualSolution {
  double value = 0.0;
  std::vector<double> y;
};

/// min sum t_e  s.t.  -t_e <= W_e (x_i - x_j) <= t_e, x fixed on M.
/// Free unlabeled values are split as x = p - q.
inline PrimalSolution tv_primal_lp(const TvProblem& prob) {
  const std::size_t n = prob.num_nodes;
  const std::size_t m = prob.edges.size();
  std::vector<int> free_index(n, -1);
  std::vector<double> fixed(n, 0.0);
  std::vector<bool> labeled(n, false);
  for (const auto& l : prob.labels) {
    labeled[l.node] = true;
    fixed[l.node] = l.value;
  }
  std::size_t nf = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!labeled[v]) free_index[v] = static_cast<int>(nf++);
  }
  // Columns: p (nf), q (nf), t (m), slack (2m).
  const std::size_t cols = 2 * nf + 3 * m;
  LinearProgram lp;
  lp.c.assign(cols, 0.0);
  for (std::size_t e = 0; e < m; ++e) lp.c[2 * nf + e] = 1.0;
  for (std::size_t e = 0; e < m; ++e) {
    const auto& edge = prob.edges[e];
    for (int sign : {1, -1}) {
      std::vector<double> row(cols, 0.0);
      double constant = 0.0;
      auto add = [&](std::size_t v, double coef) {
        if (labeled[v]) {
          constant += coef * fixed[v];
        } else {
          row[free_index[v]] += coef;
          row[nf + free_index[v]] -= coef;
        }
      };
      add(edge.i, sign * edge.weight);
      add(edge.j, -sign * edge.weight);
      row[2 * nf + e] = -1.0;
      row[2 * nf + m + 2 * e + (sign == 1 ? 0 : 1)] = 1.0;
      lp.A.push_back(std::move(row));
      lp.b.push_back(-constant);
    }
  }
  const auto sol = solve_lp(lp);
  PrimalSolution out;
  out.value = sol.optimal ? sol.value : std::numeric_limits<double>::quiet_NaN();
  out.x = fixed;
  if (sol.optimal) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!labeled[v]) out.x[v] = sol.z[free_index[v]] - sol.z[nf + free_index[v]];
    }
  }
  return out;
}

/// max sum_e y_e W_e (x~_i [i in M] - x~_j [j in M])
/// s.t. |y_e| <= 1 and (D^T y)_v = 0 for unlabeled v. Substitutes y = u - 1
/// with u + s = 2.
inline DualSolution tv_dual_lp(const TvProblem& prob) {
  const std::size_t n = prob.num_nodes;
  const std::size_t m = prob.edges.size();
  std::vector<bool> labeled(n, false);
  std::vector<double> fixed(n, 0.0);
  for (const auto& l : prob.labels) {
    labeled[l.node] = true;
    fixed[l.node] = l.value;
  }
  std::vector<double> gain(m, 0.0);
  for (std::size_t e = 0; e < m; ++e) {
    const auto& edge = prob.edges[e];
    gain[e] = edge.weight * (fixed[edge.i] - fixed[edge.j]);
  }
  LinearProgram lp;
  lp.c.assign(2 * m, 0.0);
  for (std::size_t e = 0; e < m; ++e) lp.c[e] = -gain[e];
  for (std::size_t v = 0; v < n; ++v) {
    if (labeled[v]) continue;
    std::vector<double> row(2 * m, 0.0);
    double rhs = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      const auto& edge = prob.edges[e];
      double d = 0.0;
      if (edge.i == v) d = edge.weight;
      if (edge.j == v) d = -edge.weight;
      row[e] = d;
      rhs += d;
    }
    lp.A.push_back(std::move(row));
    lp.b.push_back(rhs);
  }
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<double> row(2 * m, 0.0);
    row[e] = 1.0;
    row[m + e] = 1.0;
    lp.A.push_back(std::move(row));
    lp.b.push_back(2.0);
  }
  const auto sol = solve_lp(lp);
  DualSolution out;
  if (!sol.optimal) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.y.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    out.y[e] = sol.z[e] - 1.0;
    out.value += gain[e] * out.y[e];
  }
  return out;
}

/// Exhaustive search over assignments of unlabeled nodes to label values.
/// Some minimizer takes only label values (level-set argument for TV).
inline double tv_brute_force(const TvProblem& prob) {
  std::vector<double> values;
  for (const auto& l : prob.labels) values.push_back(l.value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<double> x(prob.num_nodes, 0.0);
  std::vector<bool> labeled(prob.num_nodes, false);
  for (const auto& l : prob.labels) {
    labeled[l.node] = true;
    x[l.node] = l.value;
  }
  std::vector<std::size_t> free_nodes;
  for (std::size_t v = 0; v < prob.num_nodes; ++v) {
    if (!labeled[v]) free_nodes.push_back(v);
  }
  std::vector<std::size_t> digit(free_nodes.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t k = 0; k < free_nodes.size(); ++k) x[free_nodes[k]] = values[digit[k]];
    best = std::min(best, tv_of(prob, x));
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == values.size()) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return best;
}

}  // namespace slp::oracle
