#pragma once

// Dense two-phase simplex with Bland's rule. Test-only oracle; small
// problems, no attention paid to speed.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace slp::oracle {

struct LinearProgram {
  // minimize c^T z  subject to  A z = b, z >= 0
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  std::vector<double> c;
};

struct LpOutcome {
  bool optimal = false;
  double value = 0.0;
  std::vector<double> z;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double& objective() { return at(rows_, cols_); }
  std::size_t& basis(std::size_t r) { return basis_[r]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double piv = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= piv;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  /// Runs Bland's rule over columns [0, allowed). Returns false if unbounded.
  bool run(std::size_t allowed, double eps) {
    for (std::size_t guard = 0; guard < 100000; ++guard) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (cost(c) < -eps) {
          enter = c;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a > eps) {
          const double ratio = rhs(r) / a;
          if (ratio < best - 1e-15 ||
              (std::abs(ratio - best) <= 1e-15 && leave < rows_ && basis_[r] < basis_[leave])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration guard hit");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpOutcome solve_lp(LinearProgram lp, double eps = 1e-11) {
  const std::size_t m = lp.A.size();
  const std::size_t n = lp.c.size();
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.b[r] < 0.0) {
      for (double& a : lp.A[r]) a = -a;
      lp.b[r] = -lp.b[r];
    }
  }
  // Columns: n structural, then m artificials.
  detail::Tableau t(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = lp.A[r][c];
    t.at(r, n + r) = 1.0;
    t.rhs(r) = lp.b[r];
    t.basis(r) = n + r;
  }
  // Phase 1: minimize the sum of artificials.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) t.cost(c) -= t.at(r, c);
    t.objective() -= t.rhs(r);
  }
  t.run(n + m, eps);
  if (-t.objective() > 1e-9) return {};

  // Drive remaining artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis(r) < n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (std::abs(t.at(r, c)) > 1e-9) {
        t.pivot(r, c);
        break;
      }
    }
  }

  // Phase 2 cost row in terms of the current basis.
  for (std::size_t c = 0; c <= n + m; ++c) t.cost(c) = 0.0;
  for (std::size_t c = 0; c < n; ++c) t.cost(c) = lp.c[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = t.basis(r);
    if (bc >= n) continue;
    const double f = t.cost(bc);
    if (f == 0.0) continue;
    for (std::size_t c = 0; c <= n + m; ++c) t.cost(c) -= f * t.at(r, c);
  }
  if (!t.run(n, eps)) return {};

  LpOutcome out;
  out.optimal = true;
  out.z.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis(r) < n) out.z[t.basis(r)] = t.rhs(r);
  }
  for (std::size_t c = 0; c < n; ++c) out.value += lp.c[c] * out.z[c];
  return out;
}

}  // namespace slp::oracle
