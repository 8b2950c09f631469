#include "slp/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace slp {

std::string_view to_string(ReferenceKind kind) noexcept {
  switch (kind) {
    case ReferenceKind::None: return "none";
    case ReferenceKind::Analytic: return "analytic";
    case ReferenceKind::LinearProgram: return "linear_program";
    case ReferenceKind::LongRun: return "long_run";
  }
  return "none";
}

double signum(double v) noexcept {
  if (v > 0.0) return 1.0;
  if (v < 0.0) return -1.0;
  return 0.0;
}

EdgeSignal incidence_sign(const EmpiricalGraph& g, const NodeSignal& x) {
  EdgeSignal s = apply_incidence(g, x);
  for (double& v : s) v = signum(v);
  return s;
}

double gamma_inverse_norm_sq(const Preconditioners& p, const NodeSignal& x) {
  if (x.size() != p.gamma.size()) throw SizeMismatch("gamma_inverse_norm_sq: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] / p.gamma[i];
  return s;
}

double lambda_inverse_norm_sq(const Preconditioners& p, const EdgeSignal& y) {
  if (y.size() != p.lambda.size()) throw SizeMismatch("lambda_inverse_norm_sq: length mismatch");
  double s = 0.0;
  for (std::size_t e = 0; e < y.size(); ++e) s += y[e] * y[e] / p.lambda[e];
  return s;
}

double convergence_bound(const EmpiricalGraph& g, const Preconditioners& p, const NodeSignal& x0,
                      const EdgeSignal& y0, const NodeSignal& x_ref,
                      const NodeSignal& x_avg_K, std::size_t K) {
  if (K == 0) throw std::invalid_argument("convergence_bound: K must be at least 1");
  if (x0.size() != x_ref.size()) throw SizeMismatch("convergence_bound: length mismatch");
  NodeSignal dx(x0.size());
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = x0[i] - x_ref[i];
  const EdgeSignal y_tilde = incidence_sign(g, x_avg_K);
  if (y0.size() != y_tilde.size()) throw SizeMismatch("convergence_bound: length mismatch");
  EdgeSignal dy(y0.size());
  for (std::size_t e = 0; e < dy.size(); ++e) dy[e] = y0[e] - y_tilde[e];
  return (gamma_inverse_norm_sq(p, dx) + lambda_inverse_norm_sq(p, dy)) /
         (2.0 * static_cast<double>(K));
}

DualEvaluation dual_value(const EmpiricalGraph& g, const SamplingSet& s, const EdgeSignal& y,
                          double balance_tol) {
  const NodeSignal divergence = apply_incidence_adjoint(g, y);
  double box = 0.0;
  for (double v : y) box = std::max(box, std::abs(v));
  double imbalance = 0.0;
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    if (!s.contains(i)) imbalance = std::max(imbalance, std::abs(divergence[i]));
  }
  DualEvaluation out;
  out.violation = std::max(std::max(box - 1.0, 0.0), imbalance);
  out.feasible = box <= 1.0 && imbalance <= balance_tol;
  if (out.feasible) {
    for (const auto& l : s.labels()) out.value += divergence[l.node] * l.value;
  }
  return out;
}

GapEvaluation duality_gap(const EmpiricalGraph& g, const SamplingSet& s, const NodeSignal& x,
                          const EdgeSignal& y, double balance_tol) {
  const auto d = dual_value(g, s, y, balance_tol);
  GapEvaluation out;
  out.feasible = d.feasible;
  out.violation = d.violation;
  out.primal = tv_norm(g, x);
  if (d.feasible) {
    out.dual = d.value;
    out.gap = out.primal - d.value;
  }
  return out;
}

KappaEstimate kappa_estimate(const EmpiricalGraph& g, const Preconditioners& p, double rel_tol,
                             std::size_t max_iters) {
  const std::size_t n = g.num_nodes();
  std::vector<double> sqrt_gamma(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_gamma[i] = std::sqrt(p.gamma[i]);

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  NodeSignal v(n);
  for (auto& a : v) a = unif(rng);

  auto normalize = [](NodeSignal& u) {
    const double norm = std::sqrt(dot(u, u));
    for (auto& a : u) a /= norm;
  };
  normalize(v);

  KappaEstimate out;
  double prev = 0.0;
  NodeSignal scaled(n);
  for (std::size_t it = 1; it <= max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) scaled[i] = sqrt_gamma[i] * v[i];
    EdgeSignal flow = apply_incidence(g, scaled);
    for (std::size_t e = 0; e < flow.size(); ++e) flow[e] *= p.lambda[e];
    NodeSignal w = apply_incidence_adjoint(g, flow);
    for (std::size_t i = 0; i < n; ++i) w[i] *= sqrt_gamma[i];

    // Rayleigh quotient of a PSD operator never exceeds its top eigenvalue.
    const double rayleigh = dot(v, w);
    out.value = std::sqrt(std::max(rayleigh, 0.0));
    out.iterations = it;
    if (it > 1 && std::abs(rayleigh - prev) <= rel_tol * std::abs(rayleigh)) {
      out.converged = true;
      break;
    }
    prev = rayleigh;
    if (dot(w, w) == 0.0) break;
    v = std::move(w);
    normalize(v);
  }
  return out;
}

double fixed_point_residual(const EmpiricalGraph& g, const Preconditioners& p,
                            const SamplingSet& s, const NodeSignal& x, const EdgeSignal& y) {
  SolverState st = SolverState::from(g, x, y);
  slp_iterate(st, g, p, s);
  return std::max(sup_distance(st.x_curr, x), sup_distance(st.y_curr, y));
}

}  // namespace slp
